#pragma once

#include <string>
#include <utility>

#include <json.hpp>

#include "hamlab/combinatorics.hpp"
#include "hamlab/cycles.hpp"
#include "hamlab/extremal.hpp"
#include "hamlab/goodness.hpp"
#include "hamlab/kpartite.hpp"
#include "hamlab/mc.hpp"
#include "hamlab/parity.hpp"
#include "hamlab/search.hpp"

namespace hamlab {

/// Key order is insertion order, so equal inputs serialize to equal bytes.
using Json = nlohmann::ordered_json;

auto rational_json(const Rational& r) -> Json;  ///< {"num", "den"}
auto set_json(const VertexSet& s) -> Json;
auto path_json(const SegPath& p) -> Json;
auto cycle_json(const SegCycle& c) -> Json;
auto matching_json(const Matching& m) -> Json;
auto spec_json(const ExtremalSpec& spec) -> Json;

auto threshold_json(const ThresholdReport& r) -> Json;
auto goodness_json(const GoodnessReport& r) -> Json;
auto closeness_json(const ClosenessReport& r) -> Json;
auto link_bigraph_json(const LinkBigraphReport& r) -> Json;
auto concentration_json(const ConcentrationResult& r) -> Json;
auto chernoff_json(const ChernoffResult& r) -> Json;
auto reservoir_json(const ReservoirReport& r) -> Json;
auto parity_fix_json(const ParityFixResult& r) -> Json;
auto plan_json(const PartitionPlan& p) -> Json;
auto stability_json(const StabilityResult& r) -> Json;
auto kpath_stats_json(const KPathStats& s) -> Json;
auto tight_path_json(const TightPath& t) -> Json;
auto path_cover_json(const PathCover& c) -> Json;

template <typename W>
auto search_json(const SearchResult<W>& r, Json witness) -> Json {
    Json out;
    out["status"] = status_name(r.status);
    out["reason"] = r.reason;
    out["nodes"] = r.nodes;
    out["witness"] = r.witness ? std::move(witness) : Json(nullptr);
    return out;
}

/// Pretty-printed with a trailing newline.
auto dump_report(const Json& report) -> std::string;

/// The report without its "metadata" key (timings and other run-dependent data).
auto canonical_report(const Json& report) -> std::string;

}  // namespace hamlab
