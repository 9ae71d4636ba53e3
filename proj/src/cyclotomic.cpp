#include "fkn/cyclotomic.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <sstream>

namespace fkn {

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) { return std::lcm(a, b); }

bool is_prime(std::uint64_t n) {
  if (n < 2)
    return false;
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) {
    if (n % p == 0)
      return n == p;
  }
  for (std::uint64_t d = 17; d * d <= n; d += 2) {
    if (n % d == 0)
      return false;
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      out.push_back(p);
      while (n % p == 0)
        n /= p;
    }
  }
  if (n > 1)
    out.push_back(n);
  return out;
}

std::uint64_t smallest_prime_factor(std::uint64_t n) {
  auto f = prime_factors(n);
  return f.empty() ? n : f.front();
}

std::uint32_t euler_phi(std::uint32_t n) {
  std::uint64_t r = n;
  for (auto p : prime_factors(n))
    r = r / p * (p - 1);
  return static_cast<std::uint32_t>(r);
}

std::vector<std::uint32_t> divisors(std::uint32_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t d = 1; d <= n; ++d) {
    if (n % d == 0)
      out.push_back(d);
  }
  return out;
}

namespace {

// Exact quotient of num by the monic polynomial den; both constant term first.
std::vector<Integer> divide_monic(std::vector<Integer> num, const std::vector<Integer> &den) {
  const std::size_t dn = den.size() - 1;
  if (num.size() <= dn)
    return {Integer(0)};
  std::vector<Integer> q(num.size() - dn);
  for (std::size_t k = num.size(); k-- > dn;) {
    Integer c = num[k];
    q[k - dn] = c;
    if (c == 0)
      continue;
    for (std::size_t i = 0; i <= dn; ++i)
      num[k - dn + i] -= c * den[i];
  }
  return q;
}

std::mutex g_cyclo_mutex;
std::map<std::uint32_t, std::vector<Integer>> g_cyclo_cache;

} // namespace

std::vector<Integer> cyclotomic_polynomial(std::uint32_t n) {
  if (n == 0)
    throw DomainError("cyclotomic_polynomial: n must be positive");
  {
    std::lock_guard lock(g_cyclo_mutex);
    auto it = g_cyclo_cache.find(n);
    if (it != g_cyclo_cache.end())
      return it->second;
  }
  std::vector<Integer> poly(n + 1, Integer(0));
  poly[0] = -1;
  poly[n] = 1;
  for (auto d : divisors(n)) {
    if (d != n)
      poly = divide_monic(poly, cyclotomic_polynomial(d));
  }
  std::lock_guard lock(g_cyclo_mutex);
  g_cyclo_cache.emplace(n, poly);
  return poly;
}

// ---------------------------------------------------------------------------
// RootOfUnity

RootOfUnity::RootOfUnity(std::uint32_t order, std::int64_t exponent) : order_(order) {
  if (order == 0)
    throw DomainError("RootOfUnity: order must be positive");
  std::int64_t r = exponent % static_cast<std::int64_t>(order);
  if (r < 0)
    r += order;
  exponent_ = static_cast<std::uint32_t>(r);
}

std::uint32_t RootOfUnity::multiplicative_order() const {
  return order_ / std::gcd(order_, exponent_ == 0 ? order_ : exponent_);
}

RootOfUnity RootOfUnity::pow(std::int64_t k) const {
  std::int64_t e = (static_cast<std::int64_t>(exponent_) * (k % static_cast<std::int64_t>(order_)));
  return {order_, e};
}

RootOfUnity RootOfUnity::at_order(std::uint32_t order) const {
  if (order % order_ != 0)
    throw ConductorMismatch("RootOfUnity::at_order: " + std::to_string(order_) + " does not divide " +
                            std::to_string(order));
  return {order, static_cast<std::int64_t>(exponent_) * (order / order_)};
}

std::string RootOfUnity::to_string() const {
  return "z" + std::to_string(order_) + "^" + std::to_string(exponent_);
}

bool operator==(const RootOfUnity &a, const RootOfUnity &b) {
  return static_cast<std::uint64_t>(a.exponent_) * b.order_ == static_cast<std::uint64_t>(b.exponent_) * a.order_;
}

RootOfUnity root_mul(RootOfUnity a, RootOfUnity b) {
  auto l = static_cast<std::uint32_t>(std::lcm(a.order(), b.order()));
  auto x = a.at_order(l), y = b.at_order(l);
  return {l, static_cast<std::int64_t>(x.exponent()) + y.exponent()};
}

// ---------------------------------------------------------------------------
// CyclotomicField

std::shared_ptr<const CyclotomicField> CyclotomicField::get(std::uint32_t conductor) {
  static std::mutex mutex;
  static std::map<std::uint32_t, std::shared_ptr<const CyclotomicField>> cache;
  std::lock_guard lock(mutex);
  auto &slot = cache[conductor];
  if (!slot)
    slot = std::make_shared<const CyclotomicField>(conductor);
  return slot;
}

CyclotomicField::CyclotomicField(std::uint32_t conductor)
    : conductor_(conductor), degree_(euler_phi(conductor)), modulus_(cyclotomic_polynomial(conductor)) {
  powers_.reserve(conductor_);
  std::vector<Rational> cur(degree_, Rational(0));
  cur[0] = 1;
  for (std::uint32_t e = 0; e < conductor_; ++e) {
    powers_.push_back(cur);
    // multiply by x and reduce
    std::vector<Rational> next(degree_ + 1, Rational(0));
    for (std::size_t i = 0; i < degree_; ++i)
      next[i + 1] = cur[i];
    cur = reduce(std::move(next));
  }
}

std::vector<Rational> CyclotomicField::reduce(std::vector<Rational> poly) const {
  for (std::size_t k = poly.size(); k-- > degree_;) {
    if (poly[k] == 0)
      continue;
    Rational c = poly[k];
    for (std::size_t i = 0; i <= degree_; ++i) {
      if (modulus_[i] != 0)
        poly[k - degree_ + i] -= c * modulus_[i];
    }
  }
  poly.resize(degree_, Rational(0));
  return poly;
}

// ---------------------------------------------------------------------------
// CyclotomicNumber

CyclotomicNumber::CyclotomicNumber(std::uint32_t conductor)
    : field_(CyclotomicField::get(conductor)), coeffs_(field_->degree(), Rational(0)) {}

CyclotomicNumber::CyclotomicNumber(std::uint32_t conductor, const Rational &value) : CyclotomicNumber(conductor) {
  coeffs_[0] = value;
}

CyclotomicNumber CyclotomicNumber::from_coefficients(std::uint32_t conductor, std::vector<Rational> poly) {
  CyclotomicNumber r(conductor);
  for (auto &c : poly)
    c.canonicalize();
  r.coeffs_ = r.field_->reduce(std::move(poly));
  return r;
}

CyclotomicNumber CyclotomicNumber::root(std::uint32_t conductor, std::int64_t e) {
  CyclotomicNumber r(conductor);
  RootOfUnity z(conductor, e);
  r.coeffs_ = r.field_->power(z.exponent());
  return r;
}

CyclotomicNumber CyclotomicNumber::from_root_counts(std::uint32_t conductor, std::span<const std::int64_t> counts) {
  CyclotomicNumber r(conductor);
  for (std::size_t e = 0; e < counts.size(); ++e) {
    if (counts[e] == 0)
      continue;
    const auto &p = r.field_->power(static_cast<std::uint32_t>(e % conductor));
    for (std::size_t i = 0; i < p.size(); ++i) {
      if (p[i] != 0)
        r.coeffs_[i] += p[i] * static_cast<long>(counts[e]);
    }
  }
  return r;
}

bool CyclotomicNumber::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational &c) { return c == 0; });
}

void CyclotomicNumber::check_same_field(const CyclotomicNumber &o) const {
  if (conductor() != o.conductor())
    throw ConductorMismatch("cyclotomic arithmetic across conductors " + std::to_string(conductor()) + " and " +
                            std::to_string(o.conductor()));
}

CyclotomicNumber &CyclotomicNumber::operator+=(const CyclotomicNumber &o) {
  check_same_field(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    coeffs_[i] += o.coeffs_[i];
  return *this;
}

CyclotomicNumber &CyclotomicNumber::operator-=(const CyclotomicNumber &o) {
  check_same_field(o);
  for (std::size_t i = 0; i < coeffs_.size(); ++i)
    coeffs_[i] -= o.coeffs_[i];
  return *this;
}

CyclotomicNumber operator*(const CyclotomicNumber &a, const CyclotomicNumber &b) {
  a.check_same_field(b);
  const std::size_t n = a.coeffs_.size();
  if (n == 1) {
    CyclotomicNumber r(a.conductor());
    r.coeffs_[0] = a.coeffs_[0] * b.coeffs_[0];
    return r;
  }
  std::vector<Rational> prod(2 * n - 1, Rational(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a.coeffs_[i] == 0)
      continue;
    for (std::size_t j = 0; j < n; ++j) {
      if (b.coeffs_[j] != 0)
        prod[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
  }
  CyclotomicNumber r(a.conductor());
  r.coeffs_ = a.field_->reduce(std::move(prod));
  return r;
}

CyclotomicNumber &CyclotomicNumber::operator*=(const CyclotomicNumber &o) { return *this = *this * o; }

CyclotomicNumber CyclotomicNumber::operator-() const {
  CyclotomicNumber r(*this);
  for (auto &c : r.coeffs_)
    c = -c;
  return r;
}

bool operator==(const CyclotomicNumber &a, const CyclotomicNumber &b) {
  return a.conductor() == b.conductor() && a.coeffs_ == b.coeffs_;
}

namespace {

using Poly = std::vector<Rational>;

void trim(Poly &p) {
  while (!p.empty() && p.back() == 0)
    p.pop_back();
}

Poly poly_sub(const Poly &a, const Poly &b) {
  Poly r(std::max(a.size(), b.size()), Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i)
    r[i] -= b[i];
  trim(r);
  return r;
}

Poly poly_mul(const Poly &a, const Poly &b) {
  if (a.empty() || b.empty())
    return {};
  Poly r(a.size() + b.size() - 1, Rational(0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      r[i + j] += a[i] * b[j];
  trim(r);
  return r;
}

// a = q*b + r
void poly_divmod(Poly a, const Poly &b, Poly &q, Poly &r) {
  trim(a);
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, Rational(0));
  const Rational &lead = b.back();
  while (a.size() >= b.size()) {
    Rational c = a.back() / lead;
    std::size_t shift = a.size() - b.size();
    q[shift] = c;
    for (std::size_t i = 0; i < b.size(); ++i)
      a[shift + i] -= c * b[i];
    trim(a);
  }
  r = std::move(a);
}

} // namespace

CyclotomicNumber CyclotomicNumber::inverse() const {
  if (is_zero())
    throw DomainError("CyclotomicNumber::inverse: division by zero");
  // Extended Euclid: track s with s*a = r (mod Phi).
  Poly r0(field_->modulus().begin(), field_->modulus().end());
  Poly r1 = coeffs_;
  trim(r1);
  Poly s0, s1{Rational(1)};
  while (r1.size() > 1) {
    Poly q, rem;
    poly_divmod(r0, r1, q, rem);
    Poly s2 = poly_sub(s0, poly_mul(q, s1));
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r1 is a nonzero constant since Phi is irreducible.
  Rational c = r1[0];
  for (auto &x : s1)
    x /= c;
  return from_coefficients(conductor(), std::move(s1));
}

std::string CyclotomicNumber::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] == 0)
      continue;
    if (!first)
      os << " + ";
    first = false;
    os << coeffs_[i].get_str();
    if (i == 1)
      os << "*z";
    else if (i > 1)
      os << "*z^" << i;
  }
  return first ? "0" : os.str();
}

CyclotomicNumber embed(const RootOfUnity &a, std::uint32_t conductor) {
  if (conductor == 0 || conductor % a.order() != 0)
    throw ConductorMismatch("embed: order " + std::to_string(a.order()) + " does not divide conductor " +
                            std::to_string(conductor));
  return CyclotomicNumber::root(conductor, static_cast<std::int64_t>(a.exponent()) * (conductor / a.order()));
}

// ---------------------------------------------------------------------------
// Modular specialization

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod) {
  std::uint64_t r = 1 % mod;
  base %= mod;
  while (exp) {
    if (exp & 1)
      r = r * base % mod;
    base = base * base % mod;
    exp >>= 1;
  }
  return r;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t mod) {
  if (a % mod == 0)
    throw DomainError("inv_mod: zero has no inverse");
  return pow_mod(a, mod - 2, mod);
}

void ModularSpec::validate() const {
  if (conductor == 0)
    throw DomainError("ModularSpec: conductor must be positive");
  if (prime >= (1ULL << 31) || !is_prime(prime))
    throw DomainError("ModularSpec: " + std::to_string(prime) + " is not a prime below 2^31");
  if ((prime - 1) % conductor != 0)
    throw DomainError("ModularSpec: prime is not 1 mod the conductor");
  if (zeta == 0 || zeta >= prime || pow_mod(zeta, conductor, prime) != 1)
    throw DomainError("ModularSpec: zeta image is not an N-th root of unity");
  for (auto p : prime_factors(conductor)) {
    if (pow_mod(zeta, conductor / p, prime) == 1)
      throw DomainError("ModularSpec: zeta image does not have exact order N");
  }
}

ModularSpec ModularSpec::find(std::uint32_t conductor, std::uint64_t seed) {
  if (conductor == 0)
    throw DomainError("ModularSpec::find: conductor must be positive");
  std::mt19937_64 rng(seed);
  const std::uint64_t lo = (1ULL << 29) / conductor + 1, hi = ((1ULL << 31) - 2) / conductor;
  std::uniform_int_distribution<std::uint64_t> pick_k(lo, hi);
  for (;;) {
    std::uint64_t q = pick_k(rng) * conductor + 1;
    if (!is_prime(q))
      continue;
    std::uniform_int_distribution<std::uint64_t> pick_a(2, q - 1);
    for (int attempt = 0; attempt < 64; ++attempt) {
      ModularSpec spec{conductor, q, pow_mod(pick_a(rng), (q - 1) / conductor, q)};
      bool ok = spec.zeta != 0;
      for (auto p : prime_factors(conductor))
        ok = ok && pow_mod(spec.zeta, conductor / p, q) != 1;
      if (ok)
        return spec;
    }
  }
}

std::uint64_t reduce_mod(const CyclotomicNumber &x, const ModularSpec &spec) {
  if (x.conductor() != spec.conductor)
    throw ConductorMismatch("reduce_mod: conductor mismatch");
  const std::uint64_t q = spec.prime;
  std::uint64_t acc = 0, zpow = 1;
  for (const auto &c : x.coefficients()) {
    if (c != 0) {
      Integer num = c.get_num() % Integer(static_cast<unsigned long>(q));
      Integer den = c.get_den() % Integer(static_cast<unsigned long>(q));
      if (den == 0)
        throw DomainError("reduce_mod: prime " + std::to_string(q) + " divides a denominator");
      if (num < 0)
        num += static_cast<unsigned long>(q);
      std::uint64_t v = num.get_ui() * inv_mod(den.get_ui(), q) % q;
      acc = (acc + v * zpow) % q;
    }
    zpow = zpow * spec.zeta % q;
  }
  return acc;
}

// ---------------------------------------------------------------------------
// rank

namespace {

std::size_t rank_exact(Matrix<CyclotomicNumber> a) {
  const std::size_t rows = a.rows(), cols = a.cols();
  if (rows == 0 || cols == 0)
    return 0;
  const std::uint32_t n = a(0, 0).conductor();
  CyclotomicNumber prev(n, Rational(1));
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a(piv, c).is_zero())
      ++piv;
    if (piv == rows)
      continue;
    if (piv != r) {
      for (std::size_t j = 0; j < cols; ++j)
        std::swap(a(piv, j), a(r, j));
    }
    // Bareiss step: entries stay in the ring generated by the input, divisions are exact.
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j)
        a(i, j) = (a(r, c) * a(i, j) - a(i, c) * a(r, j)) / prev;
      a(i, c) = CyclotomicNumber(n);
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

std::size_t rank_modular(const Matrix<CyclotomicNumber> &m, const ModularSpec &spec) {
  spec.validate();
  const std::uint64_t q = spec.prime;
  const std::size_t rows = m.rows(), cols = m.cols();
  std::vector<std::uint64_t> a(rows * cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      a[i * cols + j] = reduce_mod(m(i, j), spec);
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && a[piv * cols + c] == 0)
      ++piv;
    if (piv == rows)
      continue;
    if (piv != r)
      std::swap_ranges(a.begin() + piv * cols, a.begin() + (piv + 1) * cols, a.begin() + r * cols);
    std::uint64_t inv = inv_mod(a[r * cols + c], q);
    for (std::size_t i = r + 1; i < rows; ++i) {
      std::uint64_t f = a[i * cols + c] * inv % q;
      if (f == 0)
        continue;
      for (std::size_t j = c; j < cols; ++j)
        a[i * cols + j] = (a[i * cols + j] + (q - f) * a[r * cols + j]) % q;
    }
    ++r;
  }
  return r;
}

} // namespace

std::size_t rank(const Matrix<CyclotomicNumber> &m, const RankMode &mode) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (m(i, j).conductor() != m(0, 0).conductor())
        throw ConductorMismatch("rank: matrix entries have different conductors");
  if (std::holds_alternative<ModularSpec>(mode))
    return rank_modular(m, std::get<ModularSpec>(mode));
  return rank_exact(m);
}

} // namespace fkn
