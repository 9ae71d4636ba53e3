#pragma once

// JSON forms of every report. Vertices and coordinates are 1-based here.

#include <json.hpp>

#include "fkn/cyclic_fk.hpp"
#include "fkn/diagonal.hpp"
#include "fkn/reflection_groups.hpp"
#include "fkn/symmetrizer.hpp"

namespace fkn {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

Json root_json(const RootOfUnity &z); // {"order": N, "exponent": e}
Json braiding_json(const DiagonalBraiding &braiding);
Json diagram_json(const GeneralizedDynkinDiagram &diagram);
/// Rows of the Cartan matrix, null where an entry is undefined.
Json cartan_json(const CartanData &cartan);
Json exploration_json(const DiagonalBraiding &braiding, const ExplorationResult &result);

Json sweep_entry_json(const SweepEntry &entry, bool timings);
SweepEntry sweep_entry_from_json(const Json &j);
Json sweep_report_json(const SweepReport &report, bool timings);

Json subsystem_json(const SubsystemRecord &record);

Json group_info_json(const GroupParams &params);
Json yd_decomposition_json(const YDModule &module);

Json hilbert_json(const HilbertData &data, const std::vector<std::string> &labels);
Json comparison_json(const HilbertComparison &c, const std::vector<std::string> &labels);

} // namespace fkn
