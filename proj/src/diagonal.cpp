#include "fkn/diagonal.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <set>
#include <string>

namespace fkn {

namespace {

std::uint32_t mod(std::int64_t x, std::uint32_t n) {
  std::int64_t r = x % static_cast<std::int64_t>(n);
  return static_cast<std::uint32_t>(r < 0 ? r + n : r);
}

std::uint32_t label_order(std::uint32_t e, std::uint32_t n) { return e == 0 ? 1 : n / std::gcd(n, e); }

} // namespace

DiagonalBraiding::DiagonalBraiding(std::uint32_t order, std::uint32_t rank, const std::vector<std::int64_t> &exps)
    : order_(order), rank_(rank) {
  if (order == 0)
    throw DomainError("DiagonalBraiding: order must be positive");
  if (exps.size() != static_cast<std::size_t>(rank) * rank)
    throw DomainError("DiagonalBraiding: exponent matrix has wrong size");
  exps_.reserve(exps.size());
  for (auto e : exps)
    exps_.push_back(mod(e, order));
}

std::uint32_t DiagonalBraiding::bilinear(const std::vector<std::int64_t> &x, const std::vector<std::int64_t> &y) const {
  std::int64_t acc = 0;
  for (std::uint32_t j = 0; j < rank_; ++j) {
    if (x[j] == 0)
      continue;
    for (std::uint32_t k = 0; k < rank_; ++k)
      acc = (acc + mod(x[j] * y[k], order_) * static_cast<std::int64_t>(b(j, k))) % order_;
  }
  return mod(acc, order_);
}

DiagonalBraiding DiagonalBraiding::restrict_to(const std::vector<std::uint32_t> &vertices) const {
  std::vector<std::int64_t> e;
  e.reserve(vertices.size() * vertices.size());
  for (auto i : vertices)
    for (auto j : vertices)
      e.push_back(b(i, j));
  return {order_, static_cast<std::uint32_t>(vertices.size()), e};
}

DiagonalBraiding cyclic_braiding(std::uint32_t n, const std::vector<std::uint32_t> &subset) {
  if (n < 2)
    throw DomainError("cyclic_braiding: n must be at least 2");
  if (subset.empty())
    throw DomainError("cyclic_braiding: subset must be nonempty");
  const auto r = static_cast<std::uint32_t>(subset.size());
  std::vector<std::int64_t> e;
  e.reserve(static_cast<std::size_t>(r) * r);
  for (auto s : subset) {
    if (s < 1 || s >= n)
      throw DomainError("cyclic_braiding: element " + std::to_string(s) + " outside 1.." + std::to_string(n - 1));
    if (std::count(subset.begin(), subset.end(), s) > 1)
      throw DomainError("cyclic_braiding: element " + std::to_string(s) + " repeated");
    for (std::uint32_t k = 0; k < r; ++k)
      e.push_back(s);
  }
  return {n, r, e};
}

DiagonalBraiding cyclic_braiding(std::uint32_t n) {
  std::vector<std::uint32_t> all(n > 1 ? n - 1 : 0);
  std::iota(all.begin(), all.end(), 1u);
  return cyclic_braiding(n, all);
}

bool GeneralizedDynkinDiagram::has_edge(std::uint32_t i, std::uint32_t j) const {
  if (i > j)
    std::swap(i, j);
  return std::any_of(edges.begin(), edges.end(), [&](const DynkinEdge &e) { return e.i == i && e.j == j; });
}

std::vector<std::vector<std::uint32_t>> GeneralizedDynkinDiagram::components() const {
  const auto r = static_cast<std::uint32_t>(vertices.size());
  std::vector<std::uint32_t> comp(r);
  std::iota(comp.begin(), comp.end(), 0u);
  auto find = [&](std::uint32_t x) {
    while (comp[x] != x)
      x = comp[x] = comp[comp[x]];
    return x;
  };
  for (const auto &e : edges) {
    auto a = find(e.i), b = find(e.j);
    if (a != b)
      comp[std::max(a, b)] = std::min(a, b);
  }
  std::map<std::uint32_t, std::vector<std::uint32_t>> groups;
  for (std::uint32_t v = 0; v < r; ++v)
    groups[find(v)].push_back(v);
  std::vector<std::vector<std::uint32_t>> out;
  for (auto &[root, members] : groups)
    out.push_back(std::move(members));
  return out;
}

GeneralizedDynkinDiagram dynkin_diagram(const DiagonalBraiding &braiding) {
  GeneralizedDynkinDiagram d;
  d.order = braiding.order();
  for (std::uint32_t i = 0; i < braiding.rank(); ++i)
    d.vertices.push_back(braiding.q(i, i));
  for (std::uint32_t i = 0; i < braiding.rank(); ++i)
    for (std::uint32_t j = i + 1; j < braiding.rank(); ++j)
      if (auto e = braiding.edge_exponent(i, j); e != 0)
        d.edges.push_back({i, j, RootOfUnity(braiding.order(), e)});
  return d;
}

std::optional<int> cartan_entry(const DiagonalBraiding &braiding, std::uint32_t i, std::uint32_t j) {
  if (i == j)
    return 2;
  const std::uint32_t n = braiding.order();
  const std::uint32_t e = braiding.b(i, i);
  const std::uint32_t f = braiding.edge_exponent(i, j);
  if (e == 0)
    return f == 0 ? std::optional<int>(0) : std::nullopt;
  const std::uint32_t ord = label_order(e, n);
  // least m with (m+1)_{q_ii} (q_ii^m q_ij q_ji - 1) = 0
  for (std::uint32_t m = 0; m < ord; ++m) {
    if ((static_cast<std::uint64_t>(e) * m + f) % n == 0 || (m + 1) % ord == 0)
      return -static_cast<int>(m);
  }
  return std::nullopt; // unreachable: m = ord - 1 always qualifies
}

bool CartanData::all_defined() const {
  return std::all_of(defined.begin(), defined.end(), [](bool b) { return b; });
}

CartanData cartan_matrix(const DiagonalBraiding &braiding) {
  CartanData c;
  c.rank = braiding.rank();
  c.entries.assign(static_cast<std::size_t>(c.rank) * c.rank, 0);
  c.defined.assign(c.entries.size(), true);
  for (std::uint32_t i = 0; i < c.rank; ++i)
    for (std::uint32_t j = 0; j < c.rank; ++j) {
      auto a = cartan_entry(braiding, i, j);
      c.entries[i * c.rank + j] = a.value_or(0);
      c.defined[i * c.rank + j] = a.has_value();
    }
  return c;
}

bool is_cartan_type(const DiagonalBraiding &braiding) {
  const std::uint32_t n = braiding.order();
  for (std::uint32_t i = 0; i < braiding.rank(); ++i) {
    const std::uint32_t e = braiding.b(i, i);
    if (e == 0)
      return false;
    for (std::uint32_t j = 0; j < braiding.rank(); ++j) {
      if (i == j)
        continue;
      auto a = cartan_entry(braiding, i, j);
      if (!a)
        return false;
      if ((static_cast<std::uint64_t>(e) * static_cast<std::uint64_t>(-*a) + braiding.edge_exponent(i, j)) % n != 0)
        return false;
    }
  }
  return true;
}

std::optional<std::uint32_t> bad_vertex(const DiagonalBraiding &braiding) {
  for (std::uint32_t i = 0; i < braiding.rank(); ++i) {
    if (braiding.b(i, i) != 0)
      continue;
    for (std::uint32_t j = 0; j < braiding.rank(); ++j)
      if (j != i && braiding.edge_exponent(i, j) != 0)
        return i;
  }
  return std::nullopt;
}

ReflectResult reflect(const DiagonalBraiding &braiding, std::uint32_t i) {
  const std::uint32_t r = braiding.rank(), n = braiding.order();
  if (i >= r)
    throw DomainError("reflect: vertex out of range");
  std::vector<std::int64_t> a(r);
  for (std::uint32_t j = 0; j < r; ++j) {
    auto e = cartan_entry(braiding, i, j);
    if (!e)
      return ReflectFailure{i};
    a[j] = *e;
  }
  std::vector<std::int64_t> out(static_cast<std::size_t>(r) * r);
  const std::int64_t bii = braiding.b(i, i);
  for (std::uint32_t j = 0; j < r; ++j)
    for (std::uint32_t k = 0; k < r; ++k) {
      std::int64_t v = braiding.b(j, k) - a[j] * braiding.b(i, k) - a[k] * braiding.b(j, i) + a[j] * a[k] * bii;
      out[j * r + k] = mod(v, n);
    }
  return DiagonalBraiding(n, r, out);
}

ReflectResult apply_word(const DiagonalBraiding &braiding, const std::vector<std::uint32_t> &word) {
  DiagonalBraiding cur = braiding;
  for (auto i : word) {
    auto next = reflect(cur, i);
    if (std::holds_alternative<ReflectFailure>(next))
      return next;
    cur = std::get<DiagonalBraiding>(std::move(next));
  }
  return cur;
}

bool replays_to_failure(const DiagonalBraiding &braiding, const std::vector<std::uint32_t> &word,
                        std::uint32_t vertex) {
  auto end = apply_word(braiding, word);
  if (std::holds_alternative<ReflectFailure>(end) || vertex >= braiding.rank())
    return false;
  return std::holds_alternative<ReflectFailure>(reflect(std::get<DiagonalBraiding>(end), vertex));
}

GroupoidObject groupoid_object(const DiagonalBraiding &braiding) {
  GroupoidObject o;
  const std::uint32_t r = braiding.rank();
  o.key.reserve(r + r * (r - 1) / 2);
  for (std::uint32_t i = 0; i < r; ++i)
    o.key.push_back(braiding.b(i, i));
  for (std::uint32_t i = 0; i < r; ++i)
    for (std::uint32_t j = i + 1; j < r; ++j)
      o.key.push_back(braiding.edge_exponent(i, j));
  return o;
}

ExplorationResult explore_groupoid(const DiagonalBraiding &braiding, std::size_t max_objects) {
  if (max_objects == 0)
    throw DomainError("explore_groupoid: maxObjects must be positive");
  ExplorationResult res;
  std::map<GroupoidObject, std::size_t> index;
  std::vector<std::vector<std::uint32_t>> paths;

  auto discover = [&](const DiagonalBraiding &b, std::vector<std::uint32_t> path) -> bool {
    index.emplace(groupoid_object(b), res.objects.size());
    res.objects.push_back(groupoid_object(b));
    res.representatives.push_back(b);
    if (auto v = bad_vertex(b)) {
      res.status = ExplorationStatus::FailsAt;
      res.witness = path;
      res.failing_vertex = *v;
      return false;
    }
    paths.push_back(std::move(path));
    return true;
  };

  if (!discover(braiding, {}))
    return res;
  for (std::size_t head = 0; head < res.objects.size(); ++head) {
    const DiagonalBraiding cur = res.representatives[head];
    for (std::uint32_t i = 0; i < cur.rank(); ++i) {
      auto next = reflect(cur, i);
      // bad vertices are caught on discovery, so every reflection here is defined
      const auto &nb = std::get<DiagonalBraiding>(next);
      auto key = groupoid_object(nb);
      if (key == res.objects[head])
        continue;
      ++res.morphism_count;
      if (index.count(key))
        continue;
      if (res.objects.size() >= max_objects) {
        res.status = ExplorationStatus::BoundExceeded;
        return res;
      }
      auto path = paths[head];
      path.push_back(i);
      if (!discover(nb, std::move(path)))
        return res;
    }
  }
  res.status = ExplorationStatus::Exists;
  return res;
}

namespace {

bool is_positive(const RootVector &v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t c) { return c >= 0; }) &&
         std::any_of(v.begin(), v.end(), [](std::int64_t c) { return c > 0; });
}

bool is_negative(const RootVector &v) {
  return std::all_of(v.begin(), v.end(), [](std::int64_t c) { return c <= 0; }) &&
         std::any_of(v.begin(), v.end(), [](std::int64_t c) { return c < 0; });
}

std::int64_t height(const RootVector &v) { return std::accumulate(v.begin(), v.end(), std::int64_t{0}); }

} // namespace

RootEnumeration enumerate_positive_roots(const DiagonalBraiding &braiding, std::size_t max_roots,
                                         std::size_t max_objects) {
  auto groupoid = explore_groupoid(braiding, max_objects);
  if (groupoid.status == ExplorationStatus::FailsAt)
    throw RootSystemUndefined("root system undefined: reflection fails at vertex " +
                              std::to_string(groupoid.failing_vertex + 1));
  if (groupoid.status == ExplorationStatus::BoundExceeded)
    return RootsInfinite{};

  const std::uint32_t r = braiding.rank();
  const std::size_t nobj = groupoid.objects.size();
  std::map<GroupoidObject, std::size_t> index;
  for (std::size_t k = 0; k < nobj; ++k)
    index.emplace(groupoid.objects[k], k);
  std::vector<CartanData> cartan;
  std::vector<std::vector<std::size_t>> neighbour(nobj, std::vector<std::size_t>(r));
  for (std::size_t k = 0; k < nobj; ++k) {
    const auto &rep = groupoid.representatives[k];
    cartan.push_back(cartan_matrix(rep));
    for (std::uint32_t i = 0; i < r; ++i)
      neighbour[k][i] = index.at(groupoid_object(std::get<DiagonalBraiding>(reflect(rep, i))));
  }

  // Closure of (object, root) pairs under the reflection maps; the linear map
  // attached to s_i at object y uses row i of that object's Cartan matrix.
  std::set<std::pair<std::size_t, RootVector>> seen;
  std::deque<std::pair<std::size_t, RootVector>> queue;
  std::vector<std::size_t> per_object(nobj, 0);
  for (std::size_t k = 0; k < nobj; ++k)
    for (std::uint32_t j = 0; j < r; ++j) {
      RootVector e(r, 0);
      e[j] = 1;
      if (seen.insert({k, e}).second) {
        queue.emplace_back(k, e);
        ++per_object[k];
      }
    }
  while (!queue.empty()) {
    auto [k, alpha] = std::move(queue.front());
    queue.pop_front();
    for (std::uint32_t i = 0; i < r; ++i) {
      std::int64_t s = 0;
      for (std::uint32_t j = 0; j < r; ++j)
        s += alpha[j] * cartan[k].at(i, j);
      RootVector beta = alpha;
      beta[i] -= s;
      // a finite set of real roots is a root system, so a mixed-sign vector
      // means the real roots are infinite
      if (!is_positive(beta) && !is_negative(beta))
        return RootsInfinite{};
      const std::size_t target = neighbour[k][i];
      if (seen.insert({target, beta}).second) {
        if (++per_object[target] > 2 * max_roots)
          return RootsInfinite{};
        queue.emplace_back(target, std::move(beta));
      }
    }
  }

  std::vector<RootVector> out;
  for (const auto &[k, alpha] : seen)
    if (k == 0 && is_positive(alpha))
      out.push_back(alpha);
  if (out.size() > max_roots)
    return RootsInfinite{};
  std::sort(out.begin(), out.end(), [](const RootVector &a, const RootVector &b) {
    auto ha = height(a), hb = height(b);
    return ha != hb ? ha < hb : a > b;
  });
  return out;
}

RootOfUnity root_label(const DiagonalBraiding &braiding, const RootVector &alpha) {
  if (alpha.size() != braiding.rank())
    throw DomainError("root_label: root has wrong length");
  return {braiding.order(), braiding.bilinear(alpha, alpha)};
}

std::uint64_t pbw_dimension_from_roots(const DiagonalBraiding &braiding, const std::vector<RootVector> &roots) {
  std::uint64_t dim = 1;
  for (const auto &alpha : roots) {
    auto label = root_label(braiding, alpha);
    if (label.is_one())
      throw DomainError("pbw_dimension: root label is 1, dimension undefined");
    std::uint64_t ord = label.multiplicative_order();
    if (dim > UINT64_MAX / ord)
      throw ResourceError("pbw_dimension: dimension overflows 64 bits", 0, UINT64_MAX);
    dim *= ord;
  }
  return dim;
}

std::optional<std::uint64_t> pbw_dimension(const DiagonalBraiding &braiding, std::size_t max_roots,
                                           std::size_t max_objects) {
  auto roots = enumerate_positive_roots(braiding, max_roots, max_objects);
  if (std::holds_alternative<RootsInfinite>(roots))
    return std::nullopt;
  return pbw_dimension_from_roots(braiding, std::get<std::vector<RootVector>>(roots));
}

std::vector<Integer> pbw_hilbert_series_from_roots(const DiagonalBraiding &braiding,
                                                   const std::vector<RootVector> &roots, std::uint32_t max_degree) {
  std::vector<Integer> series(max_degree + 1, Integer(0));
  series[0] = 1;
  for (const auto &alpha : roots) {
    auto label = root_label(braiding, alpha);
    if (label.is_one())
      throw DomainError("pbw_hilbert_series: root label is 1, series undefined");
    const std::uint32_t ord = label.multiplicative_order();
    const auto h = static_cast<std::uint32_t>(height(alpha));
    std::vector<Integer> next(max_degree + 1, Integer(0));
    for (std::uint32_t d = 0; d <= max_degree; ++d) {
      if (series[d] == 0)
        continue;
      for (std::uint32_t k = 0; k < ord && d + static_cast<std::uint64_t>(k) * h <= max_degree; ++k)
        next[d + k * h] += series[d];
    }
    series = std::move(next);
  }
  return series;
}

namespace {

std::vector<RootVector> finite_roots(const DiagonalBraiding &braiding) {
  auto roots = enumerate_positive_roots(braiding);
  if (std::holds_alternative<RootsInfinite>(roots))
    throw DomainError("PBW series requires a finite root system");
  return std::get<std::vector<RootVector>>(std::move(roots));
}

} // namespace

std::vector<Integer> pbw_hilbert_series(const DiagonalBraiding &braiding, std::uint32_t max_degree) {
  return pbw_hilbert_series_from_roots(braiding, finite_roots(braiding), max_degree);
}

std::uint32_t pbw_top_degree(const DiagonalBraiding &braiding) {
  std::uint64_t top = 0;
  for (const auto &alpha : finite_roots(braiding))
    top += static_cast<std::uint64_t>(root_label(braiding, alpha).multiplicative_order() - 1) * height(alpha);
  return static_cast<std::uint32_t>(top);
}

} // namespace fkn
