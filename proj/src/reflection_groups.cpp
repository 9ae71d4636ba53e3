#include "fkn/reflection_groups.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <set>
#include <stdexcept>

namespace fkn {

namespace {

std::uint32_t mod(std::int64_t x, std::uint32_t n) {
  std::int64_t r = x % static_cast<std::int64_t>(n);
  return static_cast<std::uint32_t>(r < 0 ? r + n : r);
}

} // namespace

void GroupParams::validate() const {
  if (m == 0 || p == 0 || n == 0)
    throw DomainError("G(m,p,n) needs positive parameters");
  if (m % p != 0)
    throw DomainError("G(m,p,n) needs p | m, got " + to_string());
}

Integer GroupParams::order() const {
  Integer r = 1;
  for (std::uint32_t i = 0; i < n; ++i)
    r *= m;
  for (std::uint32_t i = 2; i <= n; ++i)
    r *= i;
  return r / p;
}

std::string GroupParams::to_string() const {
  return "G(" + std::to_string(m) + "," + std::to_string(p) + "," + std::to_string(n) + ")";
}

// ---------------------------------------------------------------------------
// GroupElement

GroupElement GroupElement::identity(std::uint32_t m, std::uint32_t n) {
  GroupElement g;
  g.m = m;
  g.nu.assign(n, 0);
  g.sigma.resize(n);
  std::iota(g.sigma.begin(), g.sigma.end(), 0u);
  return g;
}

GroupElement operator*(const GroupElement &g, const GroupElement &h) {
  // (gh) x_i = theta^{mu_i + nu_{tau(i)}} x_{sigma(tau(i))}
  GroupElement r;
  r.m = g.m;
  const auto n = g.rank();
  r.nu.resize(n);
  r.sigma.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    r.nu[i] = (h.nu[i] + g.nu[h.sigma[i]]) % g.m;
    r.sigma[i] = g.sigma[h.sigma[i]];
  }
  return r;
}

GroupElement GroupElement::inverse() const {
  GroupElement r;
  r.m = m;
  const auto n = rank();
  r.nu.resize(n);
  r.sigma.resize(n);
  for (std::uint32_t i = 0; i < n; ++i) {
    r.sigma[sigma[i]] = i;
    r.nu[sigma[i]] = mod(-static_cast<std::int64_t>(nu[i]), m);
  }
  return r;
}

bool GroupElement::is_identity() const { return *this == identity(m, rank()); }

bool GroupElement::belongs_to(const GroupParams &params) const {
  if (m != params.m || rank() != params.n)
    return false;
  std::vector<bool> hit(rank(), false);
  for (auto s : sigma) {
    if (s >= rank() || hit[s])
      return false;
    hit[s] = true;
  }
  std::uint64_t total = std::accumulate(nu.begin(), nu.end(), std::uint64_t{0});
  return total % params.p == 0;
}

std::vector<GroupElement> group_generators(const GroupParams &params) {
  params.validate();
  const auto m = params.m, n = params.n;
  std::vector<GroupElement> gens;
  for (std::uint32_t i = 0; i + 1 < n; ++i) {
    auto g = GroupElement::identity(m, n);
    std::swap(g.sigma[i], g.sigma[i + 1]);
    gens.push_back(g);
  }
  for (std::uint32_t i = 1; i < n; ++i) {
    auto g = GroupElement::identity(m, n);
    g.nu[0] = 1 % m;
    g.nu[i] = mod(-1, m);
    gens.push_back(g);
  }
  auto g = GroupElement::identity(m, n);
  g.nu[0] = params.p % m;
  gens.push_back(g);
  return gens;
}

// ---------------------------------------------------------------------------
// Reflection

Reflection Reflection::diagonal(std::uint32_t i, std::int64_t k, std::uint32_t m) {
  Reflection r;
  r.kind = Kind::Diagonal;
  r.i = i;
  r.k = mod(k, m);
  return r;
}

Reflection Reflection::transposition(std::uint32_t a, std::uint32_t b, std::int64_t k, std::uint32_t m) {
  if (a == b)
    throw DomainError("transposition reflection needs distinct indices");
  Reflection r;
  r.kind = Kind::Transposition;
  // theta^k(ba) = theta^{-k}(ab)
  if (a > b) {
    std::swap(a, b);
    k = -k;
  }
  r.i = a;
  r.j = b;
  r.k = mod(k, m);
  return r;
}

GroupElement Reflection::element(std::uint32_t m, std::uint32_t n) const {
  auto g = GroupElement::identity(m, n);
  if (is_diagonal()) {
    g.nu[i] = k;
  } else {
    std::swap(g.sigma[i], g.sigma[j]);
    g.nu[i] = k;
    g.nu[j] = mod(-static_cast<std::int64_t>(k), m);
  }
  return g;
}

std::uint32_t Reflection::order(std::uint32_t m) const {
  if (!is_diagonal())
    return 2;
  return m / std::gcd(m, k);
}

std::string Reflection::to_string() const {
  if (is_diagonal())
    return "s_" + std::to_string(i + 1) + "^" + std::to_string(k);
  std::string idx = "(" + std::to_string(i + 1) + std::to_string(j + 1) + ")";
  if (j + 1 >= 10)
    idx = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
  return k == 0 ? idx : "t^" + std::to_string(k) + idx;
}

std::vector<Reflection> enumerate_reflections(const GroupParams &params) {
  params.validate();
  std::vector<Reflection> out;
  for (std::uint32_t i = 0; i < params.n; ++i)
    for (std::uint32_t j = i + 1; j < params.n; ++j)
      for (std::uint32_t k = 0; k < params.m; ++k)
        out.push_back(Reflection::transposition(i, j, k, params.m));
  for (std::uint32_t i = 0; i < params.n; ++i)
    for (std::uint32_t k = params.p; k < params.m; k += params.p)
      out.push_back(Reflection::diagonal(i, k, params.m));
  return out;
}

std::uint64_t reflection_count_formula(const GroupParams &params) {
  params.validate();
  const std::uint64_t m = params.m, p = params.p, n = params.n;
  return m * n * (n - 1) / 2 + n * (m / p - 1);
}

std::optional<Reflection> recognize_reflection(const GroupElement &g) {
  std::vector<std::uint32_t> moved;
  for (std::uint32_t i = 0; i < g.rank(); ++i)
    if (g.sigma[i] != i)
      moved.push_back(i);
  if (moved.empty()) {
    std::optional<Reflection> r;
    for (std::uint32_t i = 0; i < g.rank(); ++i) {
      if (g.nu[i] == 0)
        continue;
      if (r)
        return std::nullopt;
      r = Reflection::diagonal(i, g.nu[i], g.m);
    }
    return r;
  }
  if (moved.size() != 2)
    return std::nullopt;
  const auto a = moved[0], b = moved[1];
  for (std::uint32_t i = 0; i < g.rank(); ++i)
    if (i != a && i != b && g.nu[i] != 0)
      return std::nullopt;
  if ((g.nu[a] + g.nu[b]) % g.m != 0)
    return std::nullopt;
  return Reflection::transposition(a, b, g.nu[a], g.m);
}

Reflection conjugate_reflection(const GroupElement &g, const Reflection &s) {
  auto h = g * s.element(g.m, g.rank()) * g.inverse();
  auto r = recognize_reflection(h);
  if (!r)
    throw std::logic_error("conjugate of a reflection is not a reflection");
  return *r;
}

// ---------------------------------------------------------------------------
// Roots, coroots and lambda

MonomialVector coroot(const GroupParams &params, const Reflection &s) {
  const std::uint32_t L = params.scalar_order(), step = L / params.m;
  MonomialVector f(params.n);
  f[s.i] = 0;
  if (!s.is_diagonal()) // y_i - theta^{-k} y_j
    f[s.j] = mod(static_cast<std::int64_t>(L / 2) - static_cast<std::int64_t>(s.k) * step, L);
  return f;
}

RootCorootPair root_coroot(const GroupParams &params, const Reflection &s) {
  const std::uint32_t L = params.scalar_order(), step = L / params.m;
  RootCorootPair rc;
  rc.coroot = coroot(params, s);
  rc.root.assign(params.n, CyclotomicNumber(L));
  const auto theta_k = CyclotomicNumber::root(L, static_cast<std::int64_t>(s.k) * step);
  if (s.is_diagonal()) { // (1 - theta^k) x_i
    rc.root[s.i] = CyclotomicNumber(L, Rational(1)) - theta_k;
  } else { // x_i - theta^k x_j
    rc.root[s.i] = CyclotomicNumber(L, Rational(1));
    rc.root[s.j] = -theta_k;
  }
  return rc;
}

RootOfUnity lambda(const GroupParams &params, const GroupElement &g, const Reflection &s,
                   DualActionConvention convention) {
  const std::uint32_t L = params.scalar_order(), step = L / params.m;
  const auto f = coroot(params, s);
  // (g.f)_b = theta^mu f_c where h x_b = theta^mu x_c, h = g^{-1} or g
  const GroupElement h = convention == DualActionConvention::Inverse ? g.inverse() : g;
  MonomialVector gf(params.n);
  for (std::uint32_t b = 0; b < params.n; ++b) {
    const auto &c = f[h.sigma[b]];
    if (c)
      gf[b] = (*c + h.nu[b] * step) % L;
  }
  const auto target = coroot(params, conjugate_reflection(g, s));
  std::optional<std::uint32_t> ratio;
  for (std::uint32_t b = 0; b < params.n; ++b) {
    if (gf[b].has_value() != target[b].has_value())
      throw std::logic_error("lambda: image of the coroot is not proportional to the target coroot");
    if (!gf[b])
      continue;
    const std::uint32_t r = mod(static_cast<std::int64_t>(*gf[b]) - *target[b], L);
    if (ratio && *ratio != r)
      throw std::logic_error("lambda: image of the coroot is not proportional to the target coroot");
    ratio = r;
  }
  return {L, ratio.value_or(0)};
}

// ---------------------------------------------------------------------------
// Yetter-Drinfeld module

YDModule yd_module(const GroupParams &params, DualActionConvention convention) {
  params.validate();
  YDModule mod;
  mod.params = params;
  mod.scalar_order = params.scalar_order();
  mod.basis = enumerate_reflections(params);
  for (std::uint32_t a = 0; a < mod.dim(); ++a)
    mod.index.emplace(mod.basis[a], a);
  const std::uint32_t d = mod.dim();
  mod.conj_target.resize(static_cast<std::size_t>(d) * d);
  mod.scalar.resize(mod.conj_target.size());
  for (std::uint32_t s = 0; s < d; ++s) {
    const auto g = mod.basis[s].element(params.m, params.n);
    for (std::uint32_t t = 0; t < d; ++t) {
      mod.conj_target[s * d + t] = mod.index.at(conjugate_reflection(g, mod.basis[t]));
      mod.scalar[s * d + t] = lambda(params, g, mod.basis[t], convention).exponent();
    }
  }
  return mod;
}

std::uint32_t summand_count_formula(const GroupParams &params) {
  params.validate();
  const std::uint32_t base = params.m / params.p;
  if (params.n == 1)
    return base - 1;
  if (params.n >= 3 || params.p % 2 == 1)
    return base;
  return base + 1;
}

std::vector<YDSummand> decompose_yd(const YDModule &module) {
  const std::uint32_t d = module.dim();
  std::vector<std::uint32_t> parent(d);
  std::iota(parent.begin(), parent.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto &g : group_generators(module.params))
    for (std::uint32_t t = 0; t < d; ++t) {
      auto a = find(t), b = find(module.index.at(conjugate_reflection(g, module.basis[t])));
      if (a != b)
        parent[std::max(a, b)] = std::min(a, b);
    }
  std::map<std::uint32_t, std::vector<std::uint32_t>> orbits;
  for (std::uint32_t t = 0; t < d; ++t)
    orbits[find(t)].push_back(t);

  std::size_t transposition_orbits = 0;
  for (auto &[root, members] : orbits)
    if (!module.basis[members.front()].is_diagonal())
      ++transposition_orbits;

  std::vector<YDSummand> out;
  for (auto &[root, members] : orbits) {
    YDSummand s;
    s.members = members;
    const auto &first = module.basis[members.front()];
    if (first.is_diagonal()) {
      s.label = "V" + std::to_string(first.k);
    } else if (transposition_orbits > 1) {
      bool has_even_twist = std::any_of(members.begin(), members.end(),
                                            [&](std::uint32_t x) { return module.basis[x].k % 2 == 0; });
      s.label = has_even_twist ? "VEven" : "VOdd";
    } else {
      s.label = "V0";
    }
    out.push_back(std::move(s));
  }
  return out;
}

bool adjoint_link(const YDModule &module, const YDSummand &a, const YDSummand &b) {
  const std::uint32_t L = module.scalar_order;
  for (auto s : a.members)
    for (auto t : b.members) {
      // Psi^2 (r_s (x) r_t) = lambda(s,t) lambda(u,s) r_{u s u^-1} (x) r_u with u = s t s^-1
      const auto u = module.target(s, t);
      const auto v = module.target(u, s);
      const auto e = (module.scalar_exp(s, t) + module.scalar_exp(u, s)) % L;
      if (v != s || u != t || e != 0)
        return true;
    }
  return false;
}

bool is_braid_indecomposable(const YDModule &module) {
  const auto summands = decompose_yd(module);
  if (summands.size() <= 1)
    return true;
  const std::size_t k = summands.size();
  std::vector<bool> reached(k, false);
  std::deque<std::size_t> queue{0};
  reached[0] = true;
  while (!queue.empty()) {
    auto x = queue.front();
    queue.pop_front();
    for (std::size_t y = 0; y < k; ++y) {
      if (reached[y])
        continue;
      if (adjoint_link(module, summands[x], summands[y]) || adjoint_link(module, summands[y], summands[x])) {
        reached[y] = true;
        queue.push_back(y);
      }
    }
  }
  return std::all_of(reached.begin(), reached.end(), [](bool r) { return r; });
}

// ---------------------------------------------------------------------------
// Bijection transport

BijectionCheck check_bijection(const YDModule &a, const YDModule &b,
                               const std::vector<std::pair<Reflection, Reflection>> &seeds) {
  BijectionCheck res;
  const std::uint32_t d = a.dim();
  if (d != b.dim())
    return res;
  constexpr std::uint32_t none = UINT32_MAX;
  std::vector<std::uint32_t> f(d, none);
  for (const auto &[x, y] : seeds) {
    auto ix = a.index.find(x);
    auto iy = b.index.find(y);
    if (ix == a.index.end() || iy == b.index.end())
      return res;
    if (f[ix->second] != none && f[ix->second] != iy->second)
      return res;
    f[ix->second] = iy->second;
  }
  // closure under s t s^-1 -> f(s) f(t) f(s)^-1
  for (bool grew = true; grew;) {
    grew = false;
    for (std::uint32_t s = 0; s < d; ++s) {
      if (f[s] == none)
        continue;
      for (std::uint32_t t = 0; t < d; ++t) {
        if (f[t] == none)
          continue;
        const auto u = a.target(s, t);
        const auto fu = b.target(f[s], f[t]);
        if (f[u] == none) {
          f[u] = fu;
          grew = true;
        } else if (f[u] != fu) {
          res.map = f;
          return res;
        }
      }
    }
  }
  res.map = f;
  if (std::count(f.begin(), f.end(), none) != 0)
    return res;
  if (std::set<std::uint32_t>(f.begin(), f.end()).size() != d)
    return res;
  res.complete = true;

  res.targets_match = true;
  for (std::uint32_t s = 0; s < d; ++s)
    for (std::uint32_t t = 0; t < d; ++t)
      res.targets_match = res.targets_match && f[a.target(s, t)] == b.target(f[s], f[t]);
  if (!res.targets_match)
    return res;

  const std::uint32_t L = std::lcm(a.scalar_order, b.scalar_order);
  const std::uint32_t sa = L / a.scalar_order, sb = L / b.scalar_order;
  res.scalars_match = true;
  for (std::uint32_t s = 0; s < d; ++s)
    for (std::uint32_t t = 0; t < d; ++t)
      res.scalars_match = res.scalars_match && a.scalar_exp(s, t) * sa % L == b.scalar_exp(f[s], f[t]) * sb % L;

  // r_s -> zeta_L^{c_s} r'_{f(s)} is braided iff
  // lambda_b(fs, ft) - lambda_a(s, t) = c_{sts^-1} - c_t for all s, t.
  std::vector<std::optional<std::uint32_t>> c(d);
  bool ok = true;
  for (std::uint32_t start = 0; start < d && ok; ++start) {
    if (c[start])
      continue;
    c[start] = 0;
    std::deque<std::uint32_t> queue{start};
    while (!queue.empty() && ok) {
      const auto t = queue.front();
      queue.pop_front();
      for (std::uint32_t s = 0; s < d && ok; ++s) {
        const auto u = a.target(s, t);
        const std::uint32_t diff =
            mod(static_cast<std::int64_t>(b.scalar_exp(f[s], f[t]) * sb) - a.scalar_exp(s, t) * sa, L);
        const std::uint32_t want = (*c[t] + diff) % L;
        if (!c[u]) {
          c[u] = want;
          queue.push_back(u);
        } else if (*c[u] != want) {
          ok = false;
        }
      }
    }
  }
  res.rescaled_match = ok;
  if (ok) {
    res.rescaling_order = L;
    for (auto &x : c)
      res.rescaling.push_back(*x);
  }
  return res;
}

} // namespace fkn
