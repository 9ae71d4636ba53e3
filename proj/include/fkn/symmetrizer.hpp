#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "fkn/diagonal.hpp"
#include "fkn/reflection_groups.hpp"

namespace fkn {

/// One nonzero entry per column: e_j -> zeta_L^{scalar[j]} e_{target[j]}.
struct MonomialMatrix {
  std::uint32_t scalar_order = 1;
  std::vector<std::uint64_t> target;
  std::vector<std::uint32_t> scalar;

  static MonomialMatrix identity(std::uint64_t dim, std::uint32_t scalar_order);
  std::uint64_t dim() const { return target.size(); }
  /// (a * b) e_j = a(b e_j).
  friend MonomialMatrix operator*(const MonomialMatrix &a, const MonomialMatrix &b);
  friend bool operator==(const MonomialMatrix &, const MonomialMatrix &) = default;
};

/// A vector space with a monomial braiding on V (x) V and a grading of the
/// basis by summand labels. Pair (a, b) has index a * dim + b.
struct BraidedSpace {
  std::uint32_t dim = 0;
  std::uint32_t scalar_order = 1;
  std::vector<std::uint32_t> grading;   // basis index -> label index
  std::vector<std::string> label_names; // per label index
  MonomialMatrix braiding;

  /// Psi(e_i (x) e_j) = q_ij e_j (x) e_i; one label per vertex.
  static BraidedSpace from_diagonal(const DiagonalBraiding &braiding);
  /// Psi(r_s (x) r_t) = lambda(s,t) r_{sts^-1} (x) r_s; one label per YD summand.
  static BraidedSpace from_yd(const YDModule &module);
};

/// (Psi (x) Id)(Id (x) Psi)(Psi (x) Id) = (Id (x) Psi)(Psi (x) Id)(Id (x) Psi) on every basis triple.
bool satisfies_yang_baxter(const BraidedSpace &space);

/// Psi acting at tensor positions (pos, pos + 1) of V^{(x) d}; position 0 is the most significant digit.
MonomialMatrix braid_generator(const BraidedSpace &space, std::uint32_t degree, std::uint32_t pos);
/// Psi_{w_1} o Psi_{w_2} o ... for the word (w_1, w_2, ...); the last letter acts first.
MonomialMatrix braid_word_lift(const BraidedSpace &space, std::uint32_t degree, const std::vector<std::uint32_t> &word);
/// Bubble-sort reduced word of the permutation (perm[i] = image of i).
std::vector<std::uint32_t> reduced_word(const std::vector<std::uint32_t> &perm);
MonomialMatrix braid_lift(const BraidedSpace &space, std::uint32_t degree, const std::vector<std::uint32_t> &perm);

enum class Arithmetic { Exact, Modular };
enum class SymmetrizerMethod {
  Recursive, // S_d = (S_{d-1} (x) id) T_d, carrying a row basis from degree to degree
  Direct,    // S_d = sum over all permutations of their braid lifts
};

struct SymmetrizerOptions {
  Arithmetic arithmetic = Arithmetic::Exact;
  std::uint64_t seed = 1; // picks the prime in modular mode
  SymmetrizerMethod method = SymmetrizerMethod::Recursive;
  std::uint64_t block_limit = 20000; // per orbit block, exact mode; doubled in modular mode
  std::uint64_t space_limit = 1ULL << 22; // dim^d
  unsigned jobs = 1;

  std::uint64_t effective_block_limit() const {
    return arithmetic == Arithmetic::Modular ? 2 * block_limit : block_limit;
  }
};

struct HilbertData {
  std::uint32_t max_degree = 0;
  std::vector<std::uint64_t> per_degree;
  /// label multiplicities -> dimension; the degree is the sum of the key.
  std::map<std::vector<std::uint32_t>, std::uint64_t> per_multidegree;

  std::uint64_t total() const;
  friend bool operator==(const HilbertData &, const HilbertData &) = default;
};

/// Graded dimensions of the Nichols algebra through max_degree.
HilbertData nichols_hilbert(const BraidedSpace &space, std::uint32_t max_degree, const SymmetrizerOptions &opts = {});
std::uint64_t nichols_graded_dim(const BraidedSpace &space, std::uint32_t degree, const SymmetrizerOptions &opts = {});

/// Kernel of Psi + Id on V (x) V; each vector as (pair index, value) with the value in Q(zeta_L).
std::vector<std::vector<std::pair<std::uint64_t, CyclotomicNumber>>> quadratic_relations(const BraidedSpace &space);

/// Graded dimensions of T(V) / <ker(Psi + Id)> through max_degree.
HilbertData quadratic_hilbert(const BraidedSpace &space, std::uint32_t max_degree, const SymmetrizerOptions &opts = {});
std::uint64_t quadratic_graded_dim(const BraidedSpace &space, std::uint32_t degree, const SymmetrizerOptions &opts = {});

struct HilbertComparison {
  HilbertData nichols;
  HilbertData quadratic;
  std::optional<std::uint32_t> divergence; // first degree with different totals
};

HilbertComparison hilbert_compare(const BraidedSpace &space, std::uint32_t max_degree,
                                  const SymmetrizerOptions &opts = {});

} // namespace fkn
