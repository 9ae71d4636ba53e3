#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <numeric>

#include "fkn/cyclotomic.hpp"
#include "fkn/errors.hpp"
#include "fkn/linalg.hpp"
#include "support.hpp"

using namespace fkn;

namespace {

// Coefficients of prod_{gcd(k,n)=1} (x - e^{2 pi i k / n}), rounded.
std::vector<long> numeric_cyclotomic(std::uint32_t n) {
  std::vector<std::complex<double>> c{1.0};
  for (std::uint32_t k = 1; k <= n; ++k) {
    if (std::gcd(k, n) != 1)
      continue;
    const auto z = std::polar(1.0, 2.0 * M_PI * k / n);
    std::vector<std::complex<double>> next(c.size() + 1, 0.0);
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= z * c[i];
    }
    c = next;
  }
  std::vector<long> out;
  for (auto x : c)
    out.push_back(std::lround(x.real()));
  return out;
}

int mobius(std::uint32_t n) {
  int mu = 1;
  for (std::uint32_t p = 2; p * p <= n; ++p)
    if (n % p == 0) {
      n /= p;
      if (n % p == 0)
        return 0;
      mu = -mu;
    }
  return n > 1 ? -mu : mu;
}

CyclotomicNumber random_element(std::uint32_t conductor) {
  std::vector<Rational> coeffs;
  for (std::uint32_t i = 0; i < conductor; ++i)
    coeffs.emplace_back(static_cast<long>(test::uniform(0, 10)) - 5, static_cast<long>(test::uniform(1, 4)));
  return CyclotomicNumber::from_coefficients(conductor, coeffs);
}

} // namespace

TEST_CASE("integer helpers agree with trial division") {
  for (std::uint32_t n = 1; n <= 300; ++n) {
    std::uint32_t phi = 0;
    for (std::uint32_t k = 1; k <= n; ++k)
      phi += std::gcd(k, n) == 1;
    CHECK(euler_phi(n) == phi);
    bool prime = n >= 2;
    for (std::uint32_t d = 2; d * d <= n; ++d)
      prime = prime && n % d != 0;
    CHECK(is_prime(n) == prime);
    std::vector<std::uint32_t> divs;
    for (std::uint32_t d = 1; d <= n; ++d)
      if (n % d == 0)
        divs.push_back(d);
    CHECK(divisors(n) == divs);
  }
  CHECK(prime_factors(360) == std::vector<std::uint64_t>{2, 3, 5});
  CHECK(smallest_prime_factor(91) == 7);
}

TEST_CASE("cyclotomic polynomials match the numeric product over primitive roots") {
  for (std::uint32_t n = 1; n <= 40; ++n) {
    const auto phi = cyclotomic_polynomial(n);
    const auto expected = numeric_cyclotomic(n);
    REQUIRE(phi.size() == expected.size());
    for (std::size_t i = 0; i < phi.size(); ++i)
      CHECK(phi[i] == expected[i]);
  }
}

TEST_CASE("roots of unity") {
  const RootOfUnity z(12, 5);
  CHECK(z.multiplicative_order() == 12);
  CHECK(z.pow(12).is_one());
  CHECK((z * z.inverse()).is_one());
  CHECK(RootOfUnity(12, 6) == RootOfUnity::minus_one());
  CHECK(RootOfUnity(6, 2) == RootOfUnity(3, 1));
  CHECK(RootOfUnity(4, 1).at_order(12).exponent() == 3);
  CHECK_THROWS_AS(RootOfUnity(4, 1).at_order(6), ConductorMismatch);
  CHECK((RootOfUnity(4, 1) * RootOfUnity(6, 1)) == RootOfUnity(12, 5));
}

TEST_CASE("cyclotomic field identities") {
  for (std::uint32_t n = 1; n <= 30; ++n) {
    CyclotomicNumber all(n), primitive(n);
    for (std::uint32_t k = 0; k < n; ++k) {
      all += CyclotomicNumber::root(n, k);
      if (std::gcd(k, n) == 1)
        primitive += CyclotomicNumber::root(n, k);
    }
    CHECK(all == CyclotomicNumber(n, n == 1 ? 1 : 0));
    CHECK(primitive == CyclotomicNumber(n, mobius(n)));
    CHECK(CyclotomicNumber::root(n, n) == CyclotomicNumber(n, 1));
  }
}

TEST_CASE("field inverse on random elements") {
  for (std::uint32_t n : {3u, 4u, 5u, 8u, 12u, 15u}) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto x = random_element(n);
      if (x.is_zero())
        continue;
      CHECK(x * x.inverse() == CyclotomicNumber(n, 1));
    }
  }
  CHECK_THROWS_AS(CyclotomicNumber(5).inverse(), DomainError);
}

TEST_CASE("modular reduction is a ring homomorphism") {
  for (std::uint32_t n : {2u, 6u, 7u, 12u}) {
    const auto spec = ModularSpec::find(n, test::seed());
    CHECK_NOTHROW(spec.validate());
    CHECK(spec.prime % n == 1);
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = random_element(n), b = random_element(n);
      const auto q = spec.prime;
      CHECK(reduce_mod(a + b, spec) == (reduce_mod(a, spec) + reduce_mod(b, spec)) % q);
      CHECK(reduce_mod(a * b, spec) == reduce_mod(a, spec) * reduce_mod(b, spec) % q);
    }
  }
  CHECK(ModularSpec::find(8, 7).prime == ModularSpec::find(8, 7).prime);
}

TEST_CASE("exact and modular rank agree on random cyclotomic matrices") {
  const std::uint32_t n = 6;
  const auto spec = ModularSpec::find(n, test::seed());
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t rows = test::uniform(1, 5), cols = test::uniform(1, 5);
    Matrix<CyclotomicNumber> m(rows, cols, CyclotomicNumber(n));
    // rank at most r by construction: product of rows x r and r x cols
    const std::size_t r = test::uniform(0, 3);
    std::vector<std::vector<CyclotomicNumber>> a(rows), b(r);
    for (auto &row : a)
      for (std::size_t k = 0; k < r; ++k)
        row.push_back(random_element(n));
    for (auto &row : b)
      for (std::size_t c = 0; c < cols; ++c)
        row.push_back(random_element(n));
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t c = 0; c < cols; ++c)
        for (std::size_t k = 0; k < r; ++k)
          m(i, c) += a[i][k] * b[k][c];
    const auto exact = rank(m);
    CHECK(exact <= std::min({rows, cols, r}));
    CHECK(rank(m, spec) == exact);
  }
}

TEST_CASE("echelon basis and nullspace") {
  const ExactOps ops(4);
  const auto i = ops.root(1);
  // rows: (1, i, 0), (i, -1, 0), (0, 0, 1)
  std::vector<std::vector<CyclotomicNumber>> a{
      {ops.one(), i, ops.zero()}, {i, ops.neg(ops.one()), ops.zero()}, {ops.zero(), ops.zero(), ops.one()}};
  EchelonBasis<ExactOps> basis(ops, 3);
  for (const auto &row : a) {
    SparseRow<CyclotomicNumber> s;
    for (std::uint32_t c = 0; c < 3; ++c)
      s.emplace_back(c, row[c]);
    basis.insert(s);
  }
  CHECK(basis.rank() == 2);
  const auto kernel = nullspace(ops, a, 3);
  REQUIRE(kernel.size() == 1);
  for (const auto &row : a) {
    CyclotomicNumber dot(4);
    for (std::size_t c = 0; c < 3; ++c)
      dot += row[c] * kernel[0][c];
    CHECK(dot.is_zero());
  }
}
