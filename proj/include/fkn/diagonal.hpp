#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <variant>
#include <vector>

#include "fkn/cyclotomic.hpp"

namespace fkn {

/// Rank-r braiding q_ij = xi^{b_ij} for a fixed primitive N-th root xi.
/// Vertices are 0-based here; serialized forms are 1-based.
class DiagonalBraiding {
public:
  DiagonalBraiding() = default;
  /// exps is row-major r x r; entries are reduced mod order.
  DiagonalBraiding(std::uint32_t order, std::uint32_t rank, const std::vector<std::int64_t> &exps);

  std::uint32_t order() const { return order_; }
  std::uint32_t rank() const { return rank_; }
  std::uint32_t b(std::uint32_t i, std::uint32_t j) const { return exps_[i * rank_ + j]; }
  RootOfUnity q(std::uint32_t i, std::uint32_t j) const { return {order_, b(i, j)}; }
  /// Exponent of q_ij q_ji.
  std::uint32_t edge_exponent(std::uint32_t i, std::uint32_t j) const { return (b(i, j) + b(j, i)) % order_; }
  const std::vector<std::uint32_t> &exponents() const { return exps_; }

  /// Exponent of B(x, y) = sum x_j y_k b_jk.
  std::uint32_t bilinear(const std::vector<std::int64_t> &x, const std::vector<std::int64_t> &y) const;

  /// Restriction to the given vertices, in the given order.
  DiagonalBraiding restrict_to(const std::vector<std::uint32_t> &vertices) const;

  friend bool operator==(const DiagonalBraiding &, const DiagonalBraiding &) = default;

private:
  std::uint32_t order_ = 1;
  std::uint32_t rank_ = 0;
  std::vector<std::uint32_t> exps_;
};

/// b_jk = subset[j] for all k. Subset entries are 1..n-1.
DiagonalBraiding cyclic_braiding(std::uint32_t n, const std::vector<std::uint32_t> &subset);
/// cyclic_braiding(n, {1, ..., n-1}).
DiagonalBraiding cyclic_braiding(std::uint32_t n);

struct DynkinEdge {
  std::uint32_t i;
  std::uint32_t j;
  RootOfUnity label;
};

struct GeneralizedDynkinDiagram {
  std::uint32_t order = 1;
  std::vector<RootOfUnity> vertices;
  std::vector<DynkinEdge> edges; // i < j, lexicographic

  bool has_edge(std::uint32_t i, std::uint32_t j) const;
  /// Vertex sets of connected components, each sorted, ordered by smallest vertex.
  std::vector<std::vector<std::uint32_t>> components() const;
  bool connected() const { return components().size() <= 1; }
};

GeneralizedDynkinDiagram dynkin_diagram(const DiagonalBraiding &braiding);

/// a_ij for i != j, or nullopt when undefined (q_ii = 1 with an incident edge).
std::optional<int> cartan_entry(const DiagonalBraiding &braiding, std::uint32_t i, std::uint32_t j);

struct CartanData {
  std::uint32_t rank = 0;
  std::vector<int> entries;  // row-major; 0 where undefined
  std::vector<bool> defined; // row-major

  int at(std::uint32_t i, std::uint32_t j) const { return entries[i * rank + j]; }
  bool is_defined(std::uint32_t i, std::uint32_t j) const { return defined[i * rank + j]; }
  bool all_defined() const;
  friend bool operator==(const CartanData &, const CartanData &) = default;
};

CartanData cartan_matrix(const DiagonalBraiding &braiding);

/// q_ii != 1 and q_ij q_ji = q_ii^{a_ij} for all i != j.
bool is_cartan_type(const DiagonalBraiding &braiding);

/// First vertex with label 1 and an incident edge.
std::optional<std::uint32_t> bad_vertex(const DiagonalBraiding &braiding);

struct ReflectFailure {
  std::uint32_t vertex;
};
using ReflectResult = std::variant<DiagonalBraiding, ReflectFailure>;

ReflectResult reflect(const DiagonalBraiding &braiding, std::uint32_t i);
/// Applies reflections in word order (word[0] first).
ReflectResult apply_word(const DiagonalBraiding &braiding, const std::vector<std::uint32_t> &word);
/// True when the word applies cleanly and reflecting at vertex afterwards fails.
bool replays_to_failure(const DiagonalBraiding &braiding, const std::vector<std::uint32_t> &word,
                        std::uint32_t vertex);

/// Diagram-level canonical form: vertex label exponents followed by the
/// upper-triangle edge exponents (0 meaning no edge).
struct GroupoidObject {
  std::vector<std::uint32_t> key;
  auto operator<=>(const GroupoidObject &) const = default;
};

GroupoidObject groupoid_object(const DiagonalBraiding &braiding);

enum class ExplorationStatus { Exists, FailsAt, BoundExceeded };

struct ExplorationResult {
  ExplorationStatus status = ExplorationStatus::Exists;
  std::vector<std::uint32_t> witness; // application order
  std::uint32_t failing_vertex = 0;
  std::vector<GroupoidObject> objects;         // BFS discovery order
  std::vector<DiagonalBraiding> representatives; // parallel to objects
  std::uint64_t morphism_count = 0;            // object-changing arrows
};

inline constexpr std::size_t kDefaultMaxObjects = 100000;
inline constexpr std::size_t kDefaultMaxRoots = 10000;

ExplorationResult explore_groupoid(const DiagonalBraiding &braiding, std::size_t max_objects = kDefaultMaxObjects);

using RootVector = std::vector<std::int64_t>;

struct RootsInfinite {};
using RootEnumeration = std::variant<std::vector<RootVector>, RootsInfinite>;

/// Positive roots at the braiding's own object, sorted by height then
/// lexicographically. Throws RootSystemUndefined when the groupoid fails.
RootEnumeration enumerate_positive_roots(const DiagonalBraiding &braiding, std::size_t max_roots = kDefaultMaxRoots,
                                         std::size_t max_objects = kDefaultMaxObjects);

RootOfUnity root_label(const DiagonalBraiding &braiding, const RootVector &alpha);

/// Product of root label orders; nullopt when the root system is infinite
/// (bounds exceeded). Throws DomainError when a root label is 1.
std::optional<std::uint64_t> pbw_dimension(const DiagonalBraiding &braiding,
                                           std::size_t max_roots = kDefaultMaxRoots,
                                           std::size_t max_objects = kDefaultMaxObjects);

/// Product over roots of the orders of their labels, for a known root list.
std::uint64_t pbw_dimension_from_roots(const DiagonalBraiding &braiding, const std::vector<RootVector> &roots);

/// Coefficients of prod_alpha (1 + t^h + ... + t^{(N_alpha - 1) h}) through max_degree.
std::vector<Integer> pbw_hilbert_series(const DiagonalBraiding &braiding, std::uint32_t max_degree);
std::vector<Integer> pbw_hilbert_series_from_roots(const DiagonalBraiding &braiding,
                                                   const std::vector<RootVector> &roots, std::uint32_t max_degree);
/// Degree of the top coefficient of the PBW series.
std::uint32_t pbw_top_degree(const DiagonalBraiding &braiding);

} // namespace fkn
