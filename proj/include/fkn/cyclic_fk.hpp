#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fkn/diagonal.hpp"

namespace fkn {

enum class SweepMethod { Cartan, Inherited, Heuristic, Bfs };

const char *to_string(SweepMethod m);
const char *to_string(ExplorationStatus s);

struct SweepEntry {
  std::uint32_t n = 0;
  ExplorationStatus status = ExplorationStatus::Exists;
  std::vector<std::uint32_t> witness; // 0-based vertices, application order
  std::uint32_t failing_vertex = 0;
  SweepMethod method = SweepMethod::Cartan;
  std::optional<std::uint32_t> inherited_from;
  std::optional<std::uint64_t> objects; // set when a full exploration ran
  double elapsed = 0.0;                 // seconds

  bool heuristic_used() const { return method == SweepMethod::Heuristic; }
};

struct SweepOptions {
  bool heuristic_first = true;
  /// Recompute every n directly instead of inheriting failures from divisors.
  bool verify = false;
  std::uint32_t heuristic_cap = 200;
  std::size_t max_objects = kDefaultMaxObjects;
  unsigned jobs = 1;
  /// Append-only JSON-lines file; entries already present are reused.
  std::string checkpoint;
};

struct SweepReport {
  std::uint32_t max_n = 0;
  std::vector<SweepEntry> entries; // n = 2..max_n in order

  const SweepEntry &at(std::uint32_t n) const { return entries.at(n - 2); }
};

/// The s_j s_i s_p search on the full braiding of order n; nullopt when no
/// failure shows up within `cap` words.
std::optional<SweepEntry> heuristic_failure(std::uint32_t n, std::uint32_t cap);

/// Decides existence of the Weyl groupoid of the full braiding of order n
/// without using other values of n.
SweepEntry check_cyclic(std::uint32_t n, const SweepOptions &opts = {});

SweepReport sweep_groupoid_existence(std::uint32_t max_n, const SweepOptions &opts = {});

/// Pairs (p prime, r >= 2) with p*r | n and p | 2r - 1, plus (2, 3) when 6 | n.
std::vector<std::pair<std::uint32_t, std::uint32_t>> counterexample_family(std::uint32_t n);

struct SubsystemOptions {
  bool primitive_only = false;
  bool include_infinite = false;
  std::size_t max_objects = 5000;
  std::size_t max_roots = 500;
  unsigned jobs = 1;
};

struct SubsystemRecord {
  std::uint32_t n = 0;
  std::vector<std::uint32_t> representative;        // smallest member
  std::vector<std::vector<std::uint32_t>> members;  // all subsets in the class, sorted
  DiagonalBraiding braiding;                        // of the representative
  GeneralizedDynkinDiagram diagram;
  CartanData cartan;
  bool cartan_type = false;
  bool finite = false;
  std::optional<std::uint64_t> positive_root_count;
  std::optional<std::uint64_t> dimension;
  std::vector<std::uint32_t> root_orders; // one per positive root, in root order
  std::string factorization;              // e.g. "2^2·3·6"
  std::uint32_t minimal_n = 0;            // smallest order the subset already lives in
  bool primitive = false;
  std::string annotation;
};

/// Connected subsets I of {1..n-1} with 2 <= |I| <= max_rank, grouped into
/// classes of equivalent diagrams (groupoid objects, Galois conjugation and
/// vertex relabelling). Finite classes only unless include_infinite is set.
std::vector<SubsystemRecord> enumerate_finite_subsystems(std::uint32_t n, std::uint32_t max_rank,
                                                         const SubsystemOptions &opts = {});

/// "2^2·3·6" style product of the given orders in increasing order.
std::string factorization_string(std::vector<std::uint32_t> orders);

} // namespace fkn
