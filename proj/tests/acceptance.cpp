// Acceptance gate: one PASS/FAIL line per criterion. All checks are exact.

#include <chrono>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "fkn/cyclic_fk.hpp"
#include "fkn/diagonal.hpp"
#include "fkn/reflection_groups.hpp"
#include "fkn/symmetrizer.hpp"
#include "oracles.hpp"

using namespace fkn;

namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string &what) {
    if (!ok) {
      pass = false;
      detail << " [" << what << "]";
    }
  }
};

template <class T> std::string show(const std::vector<T> &v) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i)
    os << (i ? "," : "") << v[i];
  os << ']';
  return os.str();
}

Verdict ac1() {
  Verdict v;
  SweepOptions opts;
  opts.jobs = 4;
  const auto report = sweep_groupoid_existence(200, opts);
  std::vector<std::uint32_t> wrong;
  for (const auto &e : report.entries)
    if ((e.status == ExplorationStatus::Exists) != (e.n == 4 || is_prime(e.n)))
      wrong.push_back(e.n);
  v.require(report.entries.size() == 199, "entry count");
  v.require(wrong.empty(), "mismatched n " + show(wrong));
  return v;
}

Verdict ac2() {
  Verdict v;
  const auto report = sweep_groupoid_existence(91, {});
  for (std::uint32_t n : {6u, 15u, 28u, 33u, 40u, 51u, 65u, 77u, 91u}) {
    v.require(!counterexample_family(n).empty(), "empty family at " + std::to_string(n));
    const auto &e = report.at(n);
    v.require(e.status == ExplorationStatus::FailsAt &&
                  replays_to_failure(cyclic_braiding(n), e.witness, e.failing_vertex),
              "witness does not replay at " + std::to_string(n));
  }
  return v;
}

Verdict ac3() {
  Verdict v;
  using Labels = std::vector<std::uint32_t>; // q11, q22, q33, e12, e13, e23 exponents mod 4
  auto labels = [](const DiagonalBraiding &b) {
    return Labels{b.b(0, 0), b.b(1, 1), b.b(2, 2), b.edge_exponent(0, 1), b.edge_exponent(0, 2), b.edge_exponent(1, 2)};
  };
  auto invert = [](Labels l) {
    for (auto &x : l)
      x = (4 - x) % 4;
    return l;
  };
  const Labels a1{1, 2, 3, 3, 0, 1}, a2{2, 2, 2, 1, 0, 3}, a3{2, 1, 2, 3, 0, 3};
  const std::set<Labels> expected{a1, a2, a3, invert(a1), invert(a2), invert(a3)};
  const auto g = explore_groupoid(cyclic_braiding(4));
  v.require(g.status == ExplorationStatus::Exists, "groupoid missing");
  v.require(g.objects.size() == 6, "objects = " + std::to_string(g.objects.size()));
  const std::vector<int> a3_type{2, -1, 0, -1, 2, -1, 0, -1, 2};
  std::set<Labels> seen;
  for (const auto &rep : g.representatives) {
    v.require(cartan_matrix(rep).entries == a3_type, "Cartan matrix not A3");
    seen.insert(labels(rep));
  }
  v.require(seen == expected, "diagrams differ from a1..a3 and their inverses");
  return v;
}

Verdict ac4() {
  Verdict v;
  v.require(pbw_dimension(cyclic_braiding(2)) == 2, "n=2");
  v.require(pbw_dimension(cyclic_braiding(3)) == 9, "n=3");
  v.require(pbw_dimension(cyclic_braiding(4)) == 256, "n=4");
  const auto five = enumerate_positive_roots(cyclic_braiding(5));
  v.require(std::holds_alternative<RootsInfinite>(five), "n=5 not reported infinite");
  v.require(!pbw_dimension(cyclic_braiding(5)).has_value(), "n=5 has a dimension");
  return v;
}

Verdict ac5() {
  Verdict v;
  // rank-2 classes that first appear at n
  auto new_dims = [](std::uint32_t n) {
    std::vector<std::uint64_t> out;
    for (const auto &r : enumerate_finite_subsystems(n, 2))
      if (r.primitive && r.dimension)
        out.push_back(*r.dimension);
    return out;
  };
  auto has = [](const std::vector<std::uint64_t> &v, std::uint64_t x) {
    return std::find(v.begin(), v.end(), x) != v.end();
  };
  const std::vector<std::pair<std::uint32_t, std::uint64_t>> rows{
      {4, 16}, {5, 625}, {6, 72}, {6, 108}, {7, 117649}, {8, 256}, {10, 40000}};
  for (const auto &[n, dim] : rows) {
    const auto dims = new_dims(n);
    v.require(has(dims, dim), "n=" + std::to_string(n) + " expected " + std::to_string(dim) + ", computed " + show(dims));
  }
  const auto six = enumerate_finite_subsystems(6, 2);
  bool annotated = false;
  for (const auto &r : six)
    if (r.representative == std::vector<std::uint32_t>{2, 3})
      annotated = r.dimension == 36u && !r.annotation.empty();
  v.require(annotated, "n=6 class {2,3} not 36 with annotation");
  return v;
}

Verdict ac6() {
  Verdict v;
  for (std::uint32_t n = 2; n <= 50; ++n)
    v.require(is_cartan_type(cyclic_braiding(n)) == is_prime(n), "n=" + std::to_string(n));
  return v;
}

Verdict ac7() {
  Verdict v;
  std::vector<std::uint32_t> wrong;
  for (std::uint32_t n = 2; n <= 30; ++n) {
    const auto records = enumerate_finite_subsystems(n, 4);
    const bool expected = n % 3 == 0 || n % 4 == 0 || n % 5 == 0 || n % 7 == 0;
    if (records.empty() == expected)
      wrong.push_back(n);
    for (const auto &r : records) {
      const auto rank = r.representative.size();
      v.require(rank <= 3, "rank " + std::to_string(rank) + " at n=" + std::to_string(n));
      if (rank == 3)
        v.require(r.minimal_n == 4 && r.dimension == 256u, "rank-3 system other than the order-4 one at n=" +
                                                               std::to_string(n));
    }
  }
  v.require(wrong.empty(), "existence differs at n " + show(wrong));
  return v;
}

Verdict ac8() {
  Verdict v;
  for (const auto &params : test::small_params(8, 1, 4)) {
    v.require(enumerate_reflections(params).size() == reflection_count_formula(params), "count " + params.to_string());
    v.require(params.n * (params.m * (params.n - 1) / 2.0 + double(params.m) / params.p - 1) ==
                  double(enumerate_reflections(params).size()),
              "closed form " + params.to_string());
    if (params.n >= 2)
      v.require(decompose_yd(yd_module(params)).size() == summand_count_formula(params), "summands " + params.to_string());
  }
  return v;
}

Verdict ac9() {
  Verdict v;
  for (const auto &[name, failures] : test::conjugation_failures(200))
    v.require(failures == 0, name);
  const auto rows = test::lambda_table_failures(200);
  for (const auto &[name, failures] : rows)
    v.require(failures == 0, name);
  v.require(test::cocycle_failures(200) == 0, "cocycle");
  for (const GroupParams params : {GroupParams{2, 1, 2}, GroupParams{3, 3, 2}, GroupParams{4, 2, 2}, GroupParams{2, 2, 3}})
    v.require(satisfies_yang_baxter(BraidedSpace::from_yd(yd_module(params))), "Yang-Baxter " + params.to_string());
  return v;
}

Verdict ac10() {
  Verdict v;
  for (const auto &params : test::small_params(6, 2, 3)) {
    const auto module = yd_module(params);
    if (decompose_yd(module).size() < 2)
      continue;
    const bool expected = !(params.m == 2 && params.p == 2 && params.n == 2);
    v.require(is_braid_indecomposable(module) == expected, params.to_string());
  }
  return v;
}

Verdict ac11() {
  Verdict v;
  SymmetrizerOptions exact;
  const auto b2 = BraidedSpace::from_yd(yd_module({2, 1, 2}));
  std::vector<std::uint64_t> nichols;
  for (std::uint32_t d = 0; d <= 4; ++d)
    nichols.push_back(nichols_graded_dim(b2, d, exact));
  v.require(nichols == std::vector<std::uint64_t>{1, 4, 8, 12, 14}, "Nichols " + show(nichols));
  v.require(nichols_hilbert(b2, 8, exact).total() == 64, "total");
  std::vector<std::uint64_t> quad;
  for (std::uint32_t d = 0; d <= 4; ++d)
    quad.push_back(quadratic_graded_dim(b2, d, exact));
  v.require(quad == std::vector<std::uint64_t>{1, 4, 8, 12, 16}, "quadratic " + show(quad));
  v.require(hilbert_compare(b2, 4, exact).divergence == 4u, "divergence");
  const auto dih5 = quadratic_hilbert(BraidedSpace::from_yd(yd_module({5, 5, 2})), 4, exact).per_degree;
  v.require(dih5 == std::vector<std::uint64_t>{1, 5, 16, 45, 121}, "Dih5 " + show(dih5));
  const auto dih7 = quadratic_hilbert(BraidedSpace::from_yd(yd_module({7, 7, 2})), 3, exact).per_degree;
  v.require(dih7 == std::vector<std::uint64_t>{1, 7, 36, 175}, "Dih7 " + show(dih7));

  using R = Reflection;
  const auto mb = yd_module({2, 1, 2}), mi = yd_module({4, 4, 2});
  const auto bij = check_bijection(
      mb, mi, {{R::transposition(0, 1, 0, 2), R::transposition(0, 1, 0, 4)}, {R::diagonal(0, 1, 2), R::transposition(0, 1, 1, 4)}});
  v.require(bij.complete && bij.targets_match, "bijection");
  const auto i4 = BraidedSpace::from_yd(mi);
  std::vector<std::uint32_t> label_map(b2.label_names.size(), 0);
  for (std::uint32_t x = 0; x < b2.dim; ++x)
    label_map[b2.grading[x]] = i4.grading[bij.map[x]];
  std::map<std::vector<std::uint32_t>, std::uint64_t> moved;
  for (const auto &[key, dim] : nichols_hilbert(b2, 8, exact).per_multidegree) {
    std::vector<std::uint32_t> k(key.size());
    for (std::size_t l = 0; l < key.size(); ++l)
      k[label_map[l]] = key[l];
    moved[k] = dim;
  }
  v.require(moved == nichols_hilbert(i4, 8, exact).per_multidegree, "multigraded data differ");
  return v;
}

Verdict ac12() {
  Verdict v;
  for (std::uint32_t n : {2u, 3u, 4u}) {
    const auto c = cyclic_braiding(n);
    const std::uint32_t top = n == 4 ? 6 : pbw_top_degree(c) + 1; // one past the top: all degrees
    const auto pbw = pbw_hilbert_series(c, top);
    const auto sym = nichols_hilbert(BraidedSpace::from_diagonal(c), top).per_degree;
    for (std::uint32_t d = 0; d <= top; ++d)
      v.require(Integer(static_cast<unsigned long>(sym[d])) == pbw[d], "C" + std::to_string(n) + " degree " + std::to_string(d));
  }
  return v;
}

} // namespace

int main() {
  const std::vector<std::pair<const char *, std::function<Verdict()>>> criteria{
      {"AC1 sweep to 200: exists exactly for primes and 4", ac1},
      {"AC2 counterexample family and replayable witnesses", ac2},
      {"AC3 order-4 groupoid: 6 objects, type A3, diagrams a1..a3 up to inversion", ac3},
      {"AC4 PBW dimensions 2, 9, 256 and n=5 infinite", ac4},
      {"AC5 rank-2 subsystem dimensions", ac5},
      {"AC6 Cartan type iff prime, n <= 50", ac6},
      {"AC7 finite subsystems of rank >= 2 for n <= 30", ac7},
      {"AC8 reflection and summand counts", ac8},
      {"AC9 conjugation, lambda, cocycle and Yang-Baxter oracles", ac9},
      {"AC10 braid-indecomposability", ac10},
      {"AC11 Hilbert series of B2, Dih5, Dih7 and the I2(4) bijection", ac11},
      {"AC12 symmetrizer ranks equal PBW series for orders 2, 3, 4", ac12},
  };
  int failed = 0;
  for (const auto &[name, check] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = check();
    } catch (const std::exception &e) {
      v.require(false, std::string("threw: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    failed += !v.pass;
    std::cout << (v.pass ? "PASS " : "FAIL ") << name << " (" << secs << " s)" << v.detail.str() << '\n';
  }
  std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria pass\n";
  return failed == 0 ? 0 : 1;
}
