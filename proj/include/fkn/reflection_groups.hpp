#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fkn/cyclotomic.hpp"

namespace fkn {

/// G(m, p, n): monomial n x n matrices with entries in mu_m whose entry
/// product lies in mu_{m/p}. Indices are 0-based.
struct GroupParams {
  std::uint32_t m = 1;
  std::uint32_t p = 1;
  std::uint32_t n = 1;

  /// Throws DomainError unless m, n >= 1 and p | m.
  void validate() const;
  /// m^n n! / p.
  Integer order() const;
  /// lcm(2, m): every braiding scalar is a power of zeta_L.
  std::uint32_t scalar_order() const { return m % 2 == 0 ? m : 2 * m; }
  std::string to_string() const;
};

/// g x_i = theta^{nu_i} x_{sigma(i)}.
struct GroupElement {
  std::vector<std::uint32_t> nu;    // mod m
  std::vector<std::uint32_t> sigma; // sigma[i] = image of i
  std::uint32_t m = 1;

  static GroupElement identity(std::uint32_t m, std::uint32_t n);
  std::uint32_t rank() const { return static_cast<std::uint32_t>(nu.size()); }
  GroupElement inverse() const;
  bool is_identity() const;
  bool belongs_to(const GroupParams &params) const;

  friend GroupElement operator*(const GroupElement &g, const GroupElement &h);
  friend bool operator==(const GroupElement &, const GroupElement &) = default;
  auto operator<=>(const GroupElement &) const = default;
};

/// Generators: adjacent transpositions, theta^{e_1 - e_i}, theta^{p e_1}.
std::vector<GroupElement> group_generators(const GroupParams &params);

struct Reflection {
  enum class Kind : std::uint8_t { Transposition, Diagonal };
  Kind kind = Kind::Transposition;
  std::uint32_t i = 0; // Transposition: i < j. Diagonal: the moved coordinate
  std::uint32_t j = 0; // unused for Diagonal
  std::uint32_t k = 0; // exponent mod m

  /// s_i^k.
  static Reflection diagonal(std::uint32_t i, std::int64_t k, std::uint32_t m);
  /// theta^k(ab), i.e. x_a -> theta^k x_b, for any a != b; normalized so that i < j.
  static Reflection transposition(std::uint32_t a, std::uint32_t b, std::int64_t k, std::uint32_t m);

  bool is_diagonal() const { return kind == Kind::Diagonal; }
  GroupElement element(std::uint32_t m, std::uint32_t n) const;
  /// Multiplicative order as a group element.
  std::uint32_t order(std::uint32_t m) const;
  std::string to_string() const; // 1-based, e.g. "t^3(12)", "s_2^2"

  friend bool operator==(const Reflection &, const Reflection &) = default;
  auto operator<=>(const Reflection &) const = default;
};

/// Transpositions first (i < j, then k), then diagonals (i, then k).
std::vector<Reflection> enumerate_reflections(const GroupParams &params);
/// n (m (n-1)/2 + m/p - 1).
std::uint64_t reflection_count_formula(const GroupParams &params);

/// Reads a group element back as a reflection; nullopt if it is not one.
std::optional<Reflection> recognize_reflection(const GroupElement &g);
/// g s g^{-1}.
Reflection conjugate_reflection(const GroupElement &g, const Reflection &s);

/// Linear form or vector with coefficients in {0} u mu_L, stored as optional
/// exponents of zeta_L.
using MonomialVector = std::vector<std::optional<std::uint32_t>>;

struct RootCorootPair {
  std::vector<CyclotomicNumber> root; // coordinates in x_1..x_n, conductor L
  MonomialVector coroot;              // coordinates in y_1..y_n
};

RootCorootPair root_coroot(const GroupParams &params, const Reflection &s);
MonomialVector coroot(const GroupParams &params, const Reflection &s);

enum class DualActionConvention {
  Inverse, // (g.f)(x) = f(g^{-1} x)
  Direct,  // (g.f)(x) = f(g x)
};

/// Scalar with g . coroot(s) = lambda * coroot(g s g^{-1}), as a power of zeta_L.
RootOfUnity lambda(const GroupParams &params, const GroupElement &g, const Reflection &s,
                   DualActionConvention convention = DualActionConvention::Inverse);

/// Basis r_s indexed by reflections with Psi(r_s (x) r_t) = lambda(s,t) r_{sts^-1} (x) r_s.
struct YDModule {
  GroupParams params;
  std::vector<Reflection> basis;
  std::map<Reflection, std::uint32_t> index;
  std::uint32_t scalar_order = 2;
  /// Row-major over (s, t): basis index of s t s^{-1} and exponent of lambda(s, t) mod L.
  std::vector<std::uint32_t> conj_target;
  std::vector<std::uint32_t> scalar;

  std::uint32_t dim() const { return static_cast<std::uint32_t>(basis.size()); }
  bool empty() const { return basis.empty(); }
  std::uint32_t target(std::uint32_t s, std::uint32_t t) const { return conj_target[s * dim() + t]; }
  std::uint32_t scalar_exp(std::uint32_t s, std::uint32_t t) const { return scalar[s * dim() + t]; }
};

YDModule yd_module(const GroupParams &params, DualActionConvention convention = DualActionConvention::Inverse);

struct YDSummand {
  std::string label; // "V0", "VEven", "VOdd", "V<k>"
  std::vector<std::uint32_t> members; // basis indices, increasing
};

std::vector<YDSummand> decompose_yd(const YDModule &module);
/// m/p when n >= 3 or p is odd, m/p + 1 otherwise (n >= 2).
std::uint32_t summand_count_formula(const GroupParams &params);

/// (Id - Psi^2) is nonzero on span{r_s (x) r_t : s in a, t in b}.
bool adjoint_link(const YDModule &module, const YDSummand &a, const YDSummand &b);
bool is_braid_indecomposable(const YDModule &module);

/// Result of transporting one braiding onto another along a basis bijection.
struct BijectionCheck {
  bool complete = false;       // the seeds extend to a bijection of bases
  bool targets_match = false;  // f(s t s^-1) = f(s) f(t) f(s)^-1 for all s, t
  bool scalars_match = false;  // lambda values agree literally
  bool rescaled_match = false; // agree after rescaling basis vectors by roots of unity
  std::vector<std::uint32_t> map; // basis index in a -> basis index in b
  std::vector<std::uint32_t> rescaling; // exponents mod lcm of scalar orders, when rescaled_match
  std::uint32_t rescaling_order = 1;
};

/// Extends the seed assignment through s t s^-1 -> f(s) f(t) f(s)^-1 and compares braidings.
BijectionCheck check_bijection(const YDModule &a, const YDModule &b,
                               const std::vector<std::pair<Reflection, Reflection>> &seeds);

} // namespace fkn
