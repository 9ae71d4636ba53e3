#include "fkn/cyclic_fk.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <functional>
#include <memory>
#include <map>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>

#include "fkn/json_io.hpp"
#include "fkn/parallel.hpp"

namespace fkn {

const char *to_string(SweepMethod m) {
  switch (m) {
  case SweepMethod::Cartan:
    return "cartan";
  case SweepMethod::Inherited:
    return "inherited";
  case SweepMethod::Heuristic:
    return "heuristic";
  case SweepMethod::Bfs:
    return "bfs";
  }
  return "?";
}

const char *to_string(ExplorationStatus s) {
  switch (s) {
  case ExplorationStatus::Exists:
    return "exists";
  case ExplorationStatus::FailsAt:
    return "failsAt";
  case ExplorationStatus::BoundExceeded:
    return "boundExceeded";
  }
  return "?";
}

namespace {

using Clock = std::chrono::steady_clock;

std::uint32_t big_omega(std::uint32_t n) {
  std::uint32_t k = 0;
  for (std::uint32_t p = 2; p * p <= n; ++p)
    while (n % p == 0) {
      n /= p;
      ++k;
    }
  return k + (n > 1 ? 1 : 0);
}

/// Applies word step by step and stops at the first object with a bad vertex.
/// Returns the prefix applied and the bad vertex.
std::optional<std::pair<std::vector<std::uint32_t>, std::uint32_t>>
first_failure(const DiagonalBraiding &start, const std::vector<std::uint32_t> &word) {
  DiagonalBraiding cur = start;
  std::vector<std::uint32_t> prefix;
  if (auto v = bad_vertex(cur))
    return std::pair{prefix, *v};
  for (auto i : word) {
    cur = std::get<DiagonalBraiding>(reflect(cur, i));
    prefix.push_back(i);
    if (auto v = bad_vertex(cur))
      return std::pair{prefix, *v};
  }
  return std::nullopt;
}

SweepEntry bfs_entry(std::uint32_t n, std::size_t max_objects) {
  auto res = explore_groupoid(cyclic_braiding(n), max_objects);
  SweepEntry e;
  e.n = n;
  e.method = SweepMethod::Bfs;
  e.status = res.status;
  e.witness = res.witness;
  e.failing_vertex = res.failing_vertex;
  e.objects = res.objects.size();
  return e;
}

SweepEntry direct_entry(std::uint32_t n, const SweepOptions &opts) {
  if (is_prime(n) && is_cartan_type(cyclic_braiding(n))) {
    SweepEntry e;
    e.n = n;
    e.method = SweepMethod::Cartan;
    return e;
  }
  if (opts.heuristic_first) {
    if (auto e = heuristic_failure(n, opts.heuristic_cap))
      return *e;
  }
  return bfs_entry(n, opts.max_objects);
}

std::optional<SweepEntry> inherit(std::uint32_t n, const std::vector<SweepEntry> &entries) {
  for (auto r : divisors(n)) {
    if (r < 2 || r == n)
      continue;
    const auto &sub = entries[r - 2];
    if (sub.status != ExplorationStatus::FailsAt)
      continue;
    // vertex with label k in order r carries label k * n/r in order n
    const std::uint32_t scale = n / r;
    std::vector<std::uint32_t> word;
    for (auto v : sub.witness)
      word.push_back((v + 1) * scale - 1);
    word.push_back((sub.failing_vertex + 1) * scale - 1);
    auto hit = first_failure(cyclic_braiding(n), word);
    if (!hit)
      continue; // cannot happen: the restricted word ends at a bad vertex
    SweepEntry e;
    e.n = n;
    e.status = ExplorationStatus::FailsAt;
    e.method = SweepMethod::Inherited;
    e.inherited_from = r;
    e.witness = hit->first;
    e.failing_vertex = hit->second;
    return e;
  }
  return std::nullopt;
}

std::vector<SweepEntry> read_checkpoint(const std::string &path, std::uint32_t max_n) {
  std::vector<SweepEntry> out;
  std::ifstream in(path);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty())
      continue;
    try {
      auto e = sweep_entry_from_json(Json::parse(line));
      if (e.n >= 2 && e.n <= max_n)
        out.push_back(std::move(e));
    } catch (const std::exception &) {
      // a torn trailing line from an interrupted run
    }
  }
  return out;
}

} // namespace

std::optional<SweepEntry> heuristic_failure(std::uint32_t n, std::uint32_t cap) {
  if (n < 4 || is_prime(n))
    return std::nullopt;
  const auto full = cyclic_braiding(n);
  const std::uint32_t p = static_cast<std::uint32_t>(smallest_prime_factor(n));
  const std::uint32_t vp = p - 1;
  auto failure = [&](std::vector<std::uint32_t> witness, std::uint32_t v) {
    SweepEntry e;
    e.n = n;
    e.status = ExplorationStatus::FailsAt;
    e.method = SweepMethod::Heuristic;
    e.witness = std::move(witness);
    e.failing_vertex = v;
    return e;
  };
  if (auto v = bad_vertex(full))
    return failure({}, *v);
  const auto after_p = std::get<DiagonalBraiding>(reflect(full, vp));
  if (auto v = bad_vertex(after_p))
    return failure({vp}, *v);
  std::uint32_t tried = 0;
  // label pairs with t = max(i, j) increasing: (1,2), (2,1), (1,3), (3,1), (2,3), (3,2), ...
  for (std::uint32_t t = 2; t < n; ++t) {
    for (std::uint32_t s = 1; s < t; ++s) {
      for (auto [i, j] : {std::pair{s, t}, std::pair{t, s}}) {
        if (tried++ >= cap)
          return std::nullopt;
        if (auto hit = first_failure(after_p, {i - 1, j - 1})) {
          hit->first.insert(hit->first.begin(), vp);
          return failure(std::move(hit->first), hit->second);
        }
      }
    }
  }
  return std::nullopt;
}

SweepEntry check_cyclic(std::uint32_t n, const SweepOptions &opts) {
  if (n < 2)
    throw DomainError("groupoid check: n must be at least 2");
  auto t0 = Clock::now();
  auto e = direct_entry(n, opts);
  e.elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
  return e;
}

SweepReport sweep_groupoid_existence(std::uint32_t max_n, const SweepOptions &opts) {
  if (max_n < 2)
    throw DomainError("sweep: maxN must be at least 2");
  SweepReport report;
  report.max_n = max_n;
  report.entries.resize(max_n - 1);
  std::vector<bool> done(max_n - 1, false);

  std::unique_ptr<std::ofstream> checkpoint;
  std::mutex checkpoint_mutex;
  if (!opts.checkpoint.empty()) {
    for (auto &e : read_checkpoint(opts.checkpoint, max_n)) {
      done[e.n - 2] = true;
      report.entries[e.n - 2] = std::move(e);
    }
    checkpoint = std::make_unique<std::ofstream>(opts.checkpoint, std::ios::app);
    if (!*checkpoint)
      throw DomainError("cannot open checkpoint file " + opts.checkpoint);
  }

  // Waves by number of prime factors: every proper divisor of n is settled
  // before n, which keeps inheritance independent of scheduling.
  std::map<std::uint32_t, std::vector<std::uint32_t>> waves;
  for (std::uint32_t n = 2; n <= max_n; ++n)
    if (!done[n - 2])
      waves[big_omega(n)].push_back(n);

  for (auto &[omega, ns] : waves) {
    parallel_for(ns.size(), opts.jobs, [&](std::size_t k) {
      const std::uint32_t n = ns[k];
      auto t0 = Clock::now();
      std::optional<SweepEntry> e;
      if (!opts.verify && !is_prime(n))
        e = inherit(n, report.entries);
      if (!e)
        e = direct_entry(n, opts);
      e->elapsed = std::chrono::duration<double>(Clock::now() - t0).count();
      if (checkpoint) {
        std::lock_guard lock(checkpoint_mutex);
        *checkpoint << sweep_entry_json(*e, true).dump() << '\n';
        checkpoint->flush();
      }
      report.entries[n - 2] = std::move(*e);
    });
  }
  return report;
}

std::vector<std::pair<std::uint32_t, std::uint32_t>> counterexample_family(std::uint32_t n) {
  if (n < 2)
    throw DomainError("counterexample_family: n must be at least 2");
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (auto p : prime_factors(n)) {
    for (std::uint32_t r = 2; static_cast<std::uint64_t>(p) * r <= n; ++r) {
      if (n % (p * r) == 0 && (2 * r - 1) % p == 0)
        out.emplace_back(static_cast<std::uint32_t>(p), r);
    }
  }
  if (n % 6 == 0)
    out.emplace_back(2, 3);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::string factorization_string(std::vector<std::uint32_t> orders) {
  std::sort(orders.begin(), orders.end());
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < orders.size();) {
    std::size_t j = i;
    while (j < orders.size() && orders[j] == orders[i])
      ++j;
    if (!first)
      os << "·";
    first = false;
    os << orders[i];
    if (j - i > 1)
      os << '^' << (j - i);
    i = j;
  }
  return first ? "1" : os.str();
}

namespace {

struct SubsetEval {
  std::vector<std::uint32_t> subset;
  bool finite = false;
  std::vector<RootVector> roots;
  std::vector<std::uint32_t> class_key;
};

/// Smallest relabelled key over the given diagrams, Galois units and vertex orders.
std::vector<std::uint32_t> class_key(const std::vector<DiagonalBraiding> &objects, std::uint32_t n) {
  std::vector<std::uint32_t> best;
  if (objects.empty())
    return best;
  const std::uint32_t r = objects.front().rank();
  std::vector<std::uint32_t> perm(r);
  std::vector<std::uint32_t> key;
  for (const auto &b : objects) {
    for (std::uint32_t u = 1; u < n; ++u) {
      if (std::gcd(u, n) != 1)
        continue;
      std::iota(perm.begin(), perm.end(), 0u);
      do {
        key.clear();
        for (std::uint32_t a = 0; a < r; ++a)
          key.push_back(static_cast<std::uint32_t>(static_cast<std::uint64_t>(u) * b.b(perm[a], perm[a]) % n));
        for (std::uint32_t a = 0; a < r; ++a)
          for (std::uint32_t c = a + 1; c < r; ++c)
            key.push_back(
                static_cast<std::uint32_t>(static_cast<std::uint64_t>(u) * b.edge_exponent(perm[a], perm[c]) % n));
        if (best.empty() || key < best)
          best = key;
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
  return best;
}

SubsetEval evaluate_subset(std::uint32_t n, const std::vector<std::uint32_t> &subset, const SubsystemOptions &opts) {
  SubsetEval ev;
  ev.subset = subset;
  const auto b = cyclic_braiding(n, subset);
  auto groupoid = explore_groupoid(b, opts.max_objects);
  if (groupoid.status == ExplorationStatus::Exists) {
    auto roots = enumerate_positive_roots(b, opts.max_roots, opts.max_objects);
    if (auto *list = std::get_if<std::vector<RootVector>>(&roots)) {
      ev.finite = true;
      ev.roots = std::move(*list);
    }
    ev.class_key = class_key(groupoid.representatives, n);
  } else {
    ev.class_key = class_key({b}, n);
  }
  return ev;
}

bool connected_subset(std::uint32_t n, const std::vector<std::uint32_t> &s) {
  return dynkin_diagram(cyclic_braiding(n, s)).connected();
}

/// Every (k-1)-subset is finite: its components are singletons or finite connected sets.
bool faces_finite(std::uint32_t n, const std::vector<std::uint32_t> &s,
                  const std::set<std::vector<std::uint32_t>> &finite_connected) {
  for (std::size_t drop = 0; drop < s.size(); ++drop) {
    std::vector<std::uint32_t> face;
    for (std::size_t k = 0; k < s.size(); ++k)
      if (k != drop)
        face.push_back(s[k]);
    for (const auto &comp : dynkin_diagram(cyclic_braiding(n, face)).components()) {
      if (comp.size() < 2)
        continue;
      std::vector<std::uint32_t> part;
      for (auto v : comp)
        part.push_back(face[v]);
      if (!finite_connected.count(part))
        return false;
    }
  }
  return true;
}

void for_each_subset(std::uint32_t n, std::uint32_t k, const std::function<void(const std::vector<std::uint32_t> &)> &fn) {
  std::vector<std::uint32_t> s(k);
  std::iota(s.begin(), s.end(), 1u);
  if (k == 0 || k > n - 1)
    return;
  for (;;) {
    fn(s);
    std::int64_t i = static_cast<std::int64_t>(k) - 1;
    while (i >= 0 && s[i] == n - k + i)
      --i;
    if (i < 0)
      return;
    ++s[i];
    for (std::uint32_t j = static_cast<std::uint32_t>(i) + 1; j < k; ++j)
      s[j] = s[j - 1] + 1;
  }
}

std::string annotation_for(std::uint32_t n, const std::optional<std::uint64_t> &dim) {
  if (n == 6 && dim && *dim == 36)
    return "reference factorization 2^2·3^3 evaluates to 108; the computed root orders give 36";
  return {};
}

} // namespace

std::vector<SubsystemRecord> enumerate_finite_subsystems(std::uint32_t n, std::uint32_t max_rank,
                                                         const SubsystemOptions &opts) {
  if (n < 2)
    throw DomainError("enumerate_finite_subsystems: n must be at least 2");
  if (max_rank < 1)
    throw DomainError("enumerate_finite_subsystems: maxRank must be positive");

  std::vector<SubsetEval> evaluated;
  std::set<std::vector<std::uint32_t>> finite_connected;
  for (std::uint32_t k = 2; k <= std::min(max_rank, n - 1); ++k) {
    std::vector<std::vector<std::uint32_t>> candidates;
    for_each_subset(n, k, [&](const std::vector<std::uint32_t> &s) {
      if (!connected_subset(n, s))
        return;
      if (!opts.include_infinite && k > 2 && !faces_finite(n, s, finite_connected))
        return;
      candidates.push_back(s);
    });
    if (candidates.empty() && !opts.include_infinite)
      break;
    std::vector<SubsetEval> evals(candidates.size());
    parallel_for(candidates.size(), opts.jobs,
                 [&](std::size_t i) { evals[i] = evaluate_subset(n, candidates[i], opts); });
    for (auto &ev : evals) {
      if (ev.finite)
        finite_connected.insert(ev.subset);
      evaluated.push_back(std::move(ev));
    }
  }

  std::map<std::vector<std::uint32_t>, std::vector<const SubsetEval *>> classes;
  for (const auto &ev : evaluated) {
    if (!ev.finite && !opts.include_infinite)
      continue;
    auto key = ev.class_key;
    key.insert(key.begin(), static_cast<std::uint32_t>(ev.subset.size()));
    classes[key].push_back(&ev);
  }

  std::vector<SubsystemRecord> out;
  for (auto &[key, group] : classes) {
    std::sort(group.begin(), group.end(), [](auto *a, auto *b) { return a->subset < b->subset; });
    const SubsetEval &rep = *group.front();
    SubsystemRecord rec;
    rec.n = n;
    rec.representative = rep.subset;
    for (auto *g : group)
      rec.members.push_back(g->subset);
    rec.braiding = cyclic_braiding(n, rep.subset);
    rec.diagram = dynkin_diagram(rec.braiding);
    rec.cartan = cartan_matrix(rec.braiding);
    rec.cartan_type = is_cartan_type(rec.braiding);
    rec.finite = rep.finite;
    std::uint32_t g = n;
    for (auto v : rep.subset)
      g = std::gcd(g, v);
    rec.minimal_n = n / g;
    rec.primitive = rec.minimal_n == n;
    if (rep.finite) {
      rec.positive_root_count = rep.roots.size();
      rec.dimension = pbw_dimension_from_roots(rec.braiding, rep.roots);
      for (const auto &alpha : rep.roots)
        rec.root_orders.push_back(root_label(rec.braiding, alpha).multiplicative_order());
      rec.factorization = factorization_string(rec.root_orders);
    }
    rec.annotation = annotation_for(n, rec.dimension);
    if (opts.primitive_only && !rec.primitive)
      continue;
    out.push_back(std::move(rec));
  }
  std::sort(out.begin(), out.end(), [](const SubsystemRecord &a, const SubsystemRecord &b) {
    if (a.representative.size() != b.representative.size())
      return a.representative.size() < b.representative.size();
    return a.representative < b.representative;
  });
  return out;
}

} // namespace fkn
