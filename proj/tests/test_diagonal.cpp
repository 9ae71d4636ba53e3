#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "fkn/diagonal.hpp"
#include "fkn/errors.hpp"
#include "support.hpp"

using namespace fkn;

namespace {

DiagonalBraiding random_braiding(std::uint32_t order, std::uint32_t rank) {
  std::vector<std::int64_t> exps(rank * rank);
  for (auto &e : exps)
    e = test::uniform(0, order - 1);
  return DiagonalBraiding(order, rank, exps);
}

// Least m >= 0 with (m+1)_q (q^m q_ij q_ji - 1) = 0, evaluated in Q(zeta_N).
std::optional<int> cartan_oracle(const DiagonalBraiding &b, std::uint32_t i, std::uint32_t j) {
  if (i == j)
    return 2;
  const std::uint32_t n = b.order();
  const auto q = CyclotomicNumber::root(n, b.b(i, i));
  const auto edge = CyclotomicNumber::root(n, b.edge_exponent(i, j));
  const CyclotomicNumber one(n, 1);
  CyclotomicNumber qm = one, qnum = one; // q^m and (m+1)_q
  for (std::uint32_t m = 0; m <= 2 * n; ++m) {
    if (qnum.is_zero() || (qm * edge - one).is_zero())
      return -static_cast<int>(m);
    qm = qm * q;
    qnum = qnum + qm;
  }
  return std::nullopt;
}

// chi(s_i alpha_j, s_i alpha_k) expanded through the bicharacter.
DiagonalBraiding reflect_oracle(const DiagonalBraiding &b, std::uint32_t i, const std::vector<int> &a) {
  const std::uint32_t r = b.rank(), n = b.order();
  std::vector<std::int64_t> out(r * r);
  for (std::uint32_t j = 0; j < r; ++j)
    for (std::uint32_t k = 0; k < r; ++k) {
      RootOfUnity z = b.q(j, k) * b.q(j, i).pow(-a[k]) * b.q(i, k).pow(-a[j]) * b.q(i, i).pow(a[j] * a[k]);
      out[j * r + k] = z.at_order(n).exponent();
    }
  return DiagonalBraiding(n, r, out);
}

struct Labelled {
  std::vector<std::uint32_t> vertices;
  std::vector<std::uint32_t> edges; // e12, e13, e23
  auto operator<=>(const Labelled &) const = default;
};

Labelled labelled(const DiagonalBraiding &b) {
  return {{b.b(0, 0), b.b(1, 1), b.b(2, 2)}, {b.edge_exponent(0, 1), b.edge_exponent(0, 2), b.edge_exponent(1, 2)}};
}

Labelled inverted(Labelled l) {
  for (auto *v : {&l.vertices, &l.edges})
    for (auto &x : *v)
      x = (4 - x) % 4;
  return l;
}

} // namespace

TEST_CASE("cyclic braiding diagrams") {
  const auto c4 = dynkin_diagram(cyclic_braiding(4));
  REQUIRE(c4.vertices.size() == 3);
  CHECK(c4.vertices[0] == RootOfUnity(4, 1));
  CHECK(c4.vertices[1] == RootOfUnity::minus_one());
  CHECK(c4.vertices[2] == RootOfUnity(4, 3));
  CHECK(c4.has_edge(0, 1));
  CHECK(c4.has_edge(1, 2));
  CHECK_FALSE(c4.has_edge(0, 2));
  CHECK(c4.connected());

  const auto c3 = dynkin_diagram(cyclic_braiding(3));
  CHECK(c3.edges.empty());
  CHECK(c3.components().size() == 2);

  CHECK_THROWS_AS(cyclic_braiding(5, {0, 2}), DomainError);
  CHECK_THROWS_AS(cyclic_braiding(5, {1, 1}), DomainError);
}

TEST_CASE("cartan entries agree with the exact-arithmetic oracle") {
  for (int trial = 0; trial < 300; ++trial) {
    const auto b = random_braiding(test::uniform(2, 12), test::uniform(2, 4));
    for (std::uint32_t i = 0; i < b.rank(); ++i)
      for (std::uint32_t j = 0; j < b.rank(); ++j)
        CHECK(cartan_entry(b, i, j) == cartan_oracle(b, i, j));
  }
}

TEST_CASE("cartan type holds for prime orders only") {
  for (std::uint32_t n = 2; n <= 30; ++n)
    CHECK(is_cartan_type(cyclic_braiding(n)) == is_prime(n));
  const auto c = cartan_matrix(cyclic_braiding(5, {1, 2}));
  CHECK(c.at(0, 1) == -2);
  CHECK(c.at(1, 0) == -1);
}

TEST_CASE("reflections agree with the bicharacter oracle and are involutive") {
  int checked = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const auto b = random_braiding(test::uniform(2, 12), test::uniform(2, 4));
    const std::uint32_t i = test::uniform(0, b.rank() - 1);
    std::vector<int> a;
    bool defined = true;
    for (std::uint32_t j = 0; j < b.rank(); ++j) {
      auto e = cartan_entry(b, i, j);
      defined = defined && e.has_value();
      a.push_back(e.value_or(0));
    }
    const auto r = reflect(b, i);
    if (!defined) {
      CHECK(std::holds_alternative<ReflectFailure>(r));
      continue;
    }
    const auto &rb = std::get<DiagonalBraiding>(r);
    CHECK(rb == reflect_oracle(b, i, a));
    // twist-invariant data come back after reflecting twice
    auto back = reflect(rb, i);
    REQUIRE(std::holds_alternative<DiagonalBraiding>(back));
    CHECK(groupoid_object(std::get<DiagonalBraiding>(back)) == groupoid_object(b));
    ++checked;
  }
  CHECK(checked > 50);
}

TEST_CASE("groupoid of the order-4 braiding") {
  const auto c4 = cyclic_braiding(4);
  const auto g = explore_groupoid(c4);
  REQUIRE(g.status == ExplorationStatus::Exists);
  CHECK(g.objects.size() == 6);
  CHECK(g.morphism_count == 12);

  const Labelled a1{{1, 2, 3}, {3, 0, 1}}, a2{{2, 2, 2}, {1, 0, 3}}, a3{{2, 1, 2}, {3, 0, 3}};
  std::set<Labelled> expected{a1, a2, a3, inverted(a1), inverted(a2), inverted(a3)};
  std::set<Labelled> seen;
  const std::vector<int> a3_cartan{2, -1, 0, -1, 2, -1, 0, -1, 2};
  for (const auto &rep : g.representatives) {
    seen.insert(labelled(rep));
    CHECK(cartan_matrix(rep).entries == a3_cartan);
  }
  CHECK(seen == expected);

  // a2 --s2--> a1, a2 --s1--> a3, a3 --s3--> b2
  auto find = [&](const Labelled &l) {
    for (const auto &rep : g.representatives)
      if (labelled(rep) == l)
        return rep;
    FAIL("object missing");
    return c4;
  };
  auto image = [](const DiagonalBraiding &b, std::uint32_t v) { return labelled(std::get<DiagonalBraiding>(reflect(b, v))); };
  CHECK(image(find(a2), 1) == a1);
  CHECK(image(find(a2), 0) == a3);
  CHECK(image(find(a3), 2) == inverted(a2));
  CHECK(image(find(a1), 0) == a1); // s1 is an endomorphism at a1
}

TEST_CASE("groupoid failure for order 6 replays") {
  const auto c6 = cyclic_braiding(6);
  const auto g = explore_groupoid(c6);
  REQUIRE(g.status == ExplorationStatus::FailsAt);
  CHECK(replays_to_failure(c6, g.witness, g.failing_vertex));
  // two-vertex subdiagram -xi, xi^{-1}: fails after reflecting at both vertices
  const auto sub = cyclic_braiding(6, {4, 5});
  const auto gs = explore_groupoid(sub);
  CHECK(gs.status == ExplorationStatus::FailsAt);
  CHECK(replays_to_failure(sub, gs.witness, gs.failing_vertex));
}

TEST_CASE("explore bound") {
  const auto g = explore_groupoid(cyclic_braiding(9), 3);
  CHECK(g.status != ExplorationStatus::Exists);
}

TEST_CASE("positive roots and PBW dimensions of small cyclic braidings") {
  CHECK(pbw_dimension(cyclic_braiding(2)) == 2);
  CHECK(pbw_dimension(cyclic_braiding(3)) == 9);
  CHECK(pbw_dimension(cyclic_braiding(4)) == 256);
  CHECK_FALSE(pbw_dimension(cyclic_braiding(5)).has_value());

  const auto roots = std::get<std::vector<RootVector>>(enumerate_positive_roots(cyclic_braiding(4)));
  REQUIRE(roots.size() == 6);
  std::set<RootVector> got(roots.begin(), roots.end());
  std::set<RootVector> expected{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {0, 1, 1}, {1, 1, 1}};
  CHECK(got == expected);
  // PBW exponents: 4 for alpha_1 and alpha_3, 2 for the rest
  for (const auto &alpha : roots) {
    const bool outer = alpha == RootVector{1, 0, 0} || alpha == RootVector{0, 0, 1};
    CHECK(root_label(cyclic_braiding(4), alpha).multiplicative_order() == (outer ? 4u : 2u));
  }

  CHECK(pbw_dimension(cyclic_braiding(5, {1, 2})) == 625);
  CHECK(pbw_dimension(cyclic_braiding(7, {1, 3})) == 117649);
}

TEST_CASE("PBW series equals the product of geometric factors") {
  const auto c4 = cyclic_braiding(4);
  const auto series = pbw_hilbert_series(c4, pbw_top_degree(c4));
  // (1+t+t^2+t^3)^2 (1+t^2)^2 (1+t^3) (1+t)
  test::Poly p{1};
  for (auto f : {test::geometric(4, 1), test::geometric(4, 1), test::geometric(2, 1), test::geometric(2, 2),
                 test::geometric(2, 2), test::geometric(2, 3)})
    p = test::poly_mul(p, f);
  REQUIRE(series.size() == p.size());
  Integer total = 0;
  for (std::size_t d = 0; d < p.size(); ++d) {
    CHECK(series[d] == p[d]);
    total += series[d];
    CHECK(series[d] == series[p.size() - 1 - d]);
  }
  CHECK(total == 256);
}

TEST_CASE("undefined root systems are rejected") {
  CHECK_THROWS_AS(enumerate_positive_roots(cyclic_braiding(6)), RootSystemUndefined);
}
