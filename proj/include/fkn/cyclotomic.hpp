#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fkn/errors.hpp"

namespace fkn {

using Integer = mpz_class;
using Rational = mpq_class;

std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b);
bool is_prime(std::uint64_t n);
/// Distinct prime divisors in increasing order.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);
std::uint64_t smallest_prime_factor(std::uint64_t n);
std::uint32_t euler_phi(std::uint32_t n);
std::vector<std::uint32_t> divisors(std::uint32_t n);

/// Coefficients of the n-th cyclotomic polynomial, constant term first.
std::vector<Integer> cyclotomic_polynomial(std::uint32_t n);

/// zeta_N^k stored as the pair (N, k mod N).
class RootOfUnity {
public:
  RootOfUnity() = default;
  RootOfUnity(std::uint32_t order, std::int64_t exponent);

  static RootOfUnity one(std::uint32_t order = 1) { return {order, 0}; }
  static RootOfUnity minus_one() { return {2, 1}; }

  std::uint32_t order() const { return order_; }
  std::uint32_t exponent() const { return exponent_; }
  bool is_one() const { return exponent_ == 0; }

  /// Exact multiplicative order of the value (divides order()).
  std::uint32_t multiplicative_order() const;

  RootOfUnity inverse() const { return {order_, -static_cast<std::int64_t>(exponent_)}; }
  RootOfUnity pow(std::int64_t k) const;

  /// Same value written at a multiple of the current order.
  RootOfUnity at_order(std::uint32_t order) const;

  std::string to_string() const;

  /// Equality of values: (2,1) == (4,2).
  friend bool operator==(const RootOfUnity &a, const RootOfUnity &b);

private:
  std::uint32_t order_ = 1;
  std::uint32_t exponent_ = 0;
};

RootOfUnity root_mul(RootOfUnity a, RootOfUnity b);
inline RootOfUnity operator*(RootOfUnity a, RootOfUnity b) { return root_mul(a, b); }

/// Q(zeta_N) presented as Q[x]/(Phi_N). Instances are shared and immutable.
class CyclotomicField {
public:
  static std::shared_ptr<const CyclotomicField> get(std::uint32_t conductor);

  explicit CyclotomicField(std::uint32_t conductor);

  std::uint32_t conductor() const { return conductor_; }
  std::size_t degree() const { return degree_; }
  const std::vector<Integer> &modulus() const { return modulus_; }

  /// Reduces a polynomial of any length modulo Phi_N.
  std::vector<Rational> reduce(std::vector<Rational> poly) const;
  /// Coefficient vector of zeta^e.
  const std::vector<Rational> &power(std::uint32_t e) const { return powers_[e % conductor_]; }

private:
  std::uint32_t conductor_;
  std::size_t degree_;
  std::vector<Integer> modulus_;
  std::vector<std::vector<Rational>> powers_;
};

class CyclotomicNumber {
public:
  CyclotomicNumber() : CyclotomicNumber(1) {}
  explicit CyclotomicNumber(std::uint32_t conductor);
  CyclotomicNumber(std::uint32_t conductor, const Rational &value);

  static CyclotomicNumber from_coefficients(std::uint32_t conductor, std::vector<Rational> poly);
  /// zeta_N^e.
  static CyclotomicNumber root(std::uint32_t conductor, std::int64_t e);
  /// sum_e counts[e] * zeta_N^e, with counts.size() == N.
  static CyclotomicNumber from_root_counts(std::uint32_t conductor, std::span<const std::int64_t> counts);

  std::uint32_t conductor() const { return field_->conductor(); }
  const std::vector<Rational> &coefficients() const { return coeffs_; }
  const CyclotomicField &field() const { return *field_; }

  bool is_zero() const;
  CyclotomicNumber inverse() const;

  CyclotomicNumber &operator+=(const CyclotomicNumber &o);
  CyclotomicNumber &operator-=(const CyclotomicNumber &o);
  CyclotomicNumber &operator*=(const CyclotomicNumber &o);
  CyclotomicNumber &operator/=(const CyclotomicNumber &o) { return *this *= o.inverse(); }

  friend CyclotomicNumber operator+(CyclotomicNumber a, const CyclotomicNumber &b) { return a += b; }
  friend CyclotomicNumber operator-(CyclotomicNumber a, const CyclotomicNumber &b) { return a -= b; }
  friend CyclotomicNumber operator*(const CyclotomicNumber &a, const CyclotomicNumber &b);
  friend CyclotomicNumber operator/(CyclotomicNumber a, const CyclotomicNumber &b) { return a /= b; }
  CyclotomicNumber operator-() const;

  friend bool operator==(const CyclotomicNumber &a, const CyclotomicNumber &b);

  std::string to_string() const;

private:
  void check_same_field(const CyclotomicNumber &o) const;

  std::shared_ptr<const CyclotomicField> field_;
  std::vector<Rational> coeffs_;
};

/// The field element zeta_N^{(N/order) * exponent}. Throws ConductorMismatch
/// unless a.order() divides N.
CyclotomicNumber embed(const RootOfUnity &a, std::uint32_t conductor);

/// Reduction Z[zeta_N] -> F_q sending zeta_N to an element of exact order N.
struct ModularSpec {
  std::uint32_t conductor = 1;
  std::uint64_t prime = 2;
  std::uint64_t zeta = 1;

  /// Throws DomainError unless prime is a prime = 1 mod N below 2^31 and zeta
  /// has exact multiplicative order N.
  void validate() const;

  /// A random valid spec; deterministic in the seed.
  static ModularSpec find(std::uint32_t conductor, std::uint64_t seed);
};

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t mod);
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t mod);

/// Image of x under the specialization. Throws DomainError when the prime
/// divides a denominator.
std::uint64_t reduce_mod(const CyclotomicNumber &x, const ModularSpec &spec);

template <class T> class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T &fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  T &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

struct ExactMode {};
using RankMode = std::variant<ExactMode, ModularSpec>;

/// Rank of a matrix over Q(zeta_N). Exact mode uses fraction-free (Bareiss)
/// elimination; modular mode eliminates over F_q and can only undercount.
std::size_t rank(const Matrix<CyclotomicNumber> &m, const RankMode &mode = ExactMode{});

} // namespace fkn
