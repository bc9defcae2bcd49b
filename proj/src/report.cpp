#include "hamlab/report.hpp"

namespace hamlab {

auto rational_json(const Rational& r) -> Json {
    Json out;
    out["num"] = r.numerator();
    out["den"] = r.denominator();
    return out;
}

auto set_json(const VertexSet& s) -> Json { return Json(s.members()); }

auto path_json(const SegPath& p) -> Json {
    Json segs = Json::array();
    for (const auto& s : p.segments) segs.push_back(set_json(s));
    Json out;
    out["ell"] = p.ell;
    out["vertex_count"] = p.vertex_count();
    out["segments"] = std::move(segs);
    return out;
}

auto cycle_json(const SegCycle& c) -> Json {
    Json blocks = Json::array();
    for (const auto& b : c.blocks) blocks.push_back(set_json(b));
    Json out;
    out["ell"] = c.ell;
    out["blocks"] = std::move(blocks);
    return out;
}

auto matching_json(const Matching& m) -> Json {
    Json out = Json::array();
    for (const auto& e : m) out.push_back(set_json(e));
    return out;
}

auto spec_json(const ExtremalSpec& spec) -> Json {
    Json out;
    out["n"] = spec.n;
    out["k"] = spec.k;
    out["a"] = set_json(spec.a);
    out["a_size"] = spec.a_size();
    out["eta"] = spec.eta;
    if (spec.k > 0 && spec.n % spec.k == 0) out["f"] = f_parity(spec).f;
    return out;
}

auto threshold_json(const ThresholdReport& r) -> Json {
    Json argmax = Json::array();
    for (const auto& [a, eta] : r.argmax) argmax.push_back({{"a", a}, {"eta", eta}});
    Json out;
    out["n"] = r.n;
    out["k"] = r.k;
    out["ell"] = r.ell;
    out["method"] = method_name(r.method);
    out["value_num"] = r.value.numerator();
    out["value_den"] = r.value.denominator();
    out["argmax"] = std::move(argmax);
    if (!r.formula_case.empty()) out["formula_case"] = r.formula_case;
    return out;
}

auto goodness_json(const GoodnessReport& r) -> Json {
    Json out;
    out["set"] = set_json(r.set);
    out["alpha_star"] = rational_json(r.alpha_star);
    out["missing"] = r.missing;
    out["possible"] = r.possible;
    return out;
}

auto closeness_json(const ClosenessReport& r) -> Json {
    Json out;
    out["distance"] = r.distance;
    out["a"] = set_json(r.a);
    out["eta"] = r.eta;
    out["mode"] = r.mode == ClosenessMode::exact ? "exact" : "heuristic";
    out["upper_bound_only"] = r.upper_bound_only;
    out["partitions_scanned"] = r.partitions_scanned;
    return out;
}

auto link_bigraph_json(const LinkBigraphReport& r) -> Json {
    Json out;
    out["n"] = r.n;
    out["k"] = r.k;
    out["ell"] = r.ell;
    out["gamma"] = r.gamma;
    out["N"] = r.big_n;
    out["N_prime"] = r.big_n_r;
    out["min_deg_left"] = r.min_deg_left;
    out["min_deg_right"] = r.min_deg_right;
    out["left_degree_bound"] = r.left_degree_bound;
    out["right_degree_bound"] = r.right_degree_bound;
    out["min_overlap_partners"] = r.min_overlap_partners;
    out["heavy_rights"] = r.heavy_rights;
    out["property_i"] = r.property_i;
    out["property_ii"] = r.property_ii;
    return out;
}

auto concentration_json(const ConcentrationResult& r) -> Json {
    Json out;
    out["m"] = r.m;
    out["k"] = r.k;
    out["t"] = r.t;
    out["theta"] = r.theta;
    out["family_size"] = r.family_size;
    out["gamma"] = r.gamma;
    out["trials"] = r.trials;
    out["seed"] = r.seed;
    out["empirical_tail"] = r.empirical_tail;
    out["bound"] = r.bound;
    out["mean"] = r.mean;
    out["sigma_hat"] = r.sigma_hat;
    out["expectation_check"] = r.expectation_check;
    out["expectation_tolerance"] = r.expectation_tolerance;
    out["tail_ok"] = r.tail_ok;
    out["expectation_ok"] = r.expectation_ok;
    return out;
}

auto chernoff_json(const ChernoffResult& r) -> Json {
    Json out;
    out["n"] = r.n;
    out["p"] = r.p;
    out["a"] = r.a;
    out["trials"] = r.trials;
    out["seed"] = r.seed;
    out["empirical"] = r.empirical;
    out["bound"] = r.bound;
    out["slack"] = r.slack;
    out["ok"] = r.ok;
    return out;
}

auto reservoir_json(const ReservoirReport& r) -> Json {
    Json members = Json::array();
    for (const auto& c : r.members) members.push_back(set_json(c));
    Json out;
    out["members"] = std::move(members);
    out["min_coverage"] = r.min_coverage;
    if (r.worst_pair) {
        out["worst_pair"] = {set_json(r.worst_pair->first), set_json(r.worst_pair->second)};
    } else {
        out["worst_pair"] = nullptr;
    }
    out["pairs_examined"] = r.pairs_examined;
    out["sampled_pairs"] = r.sampled_pairs;
    out["complete"] = r.complete;
    return out;
}

auto parity_fix_json(const ParityFixResult& r) -> Json {
    Json out;
    out["case"] = r.case_tag;
    out["path"] = path_json(r.path);
    out["removed"] = set_json(r.removed);
    out["v0"] = set_json(r.bad.v0);
    out["v0_prime"] = set_json(r.bad.v0_prime);
    out["relocated"] = spec_json(r.bad.relocated);
    out["residual"] = spec_json(r.residual);
    out["residual_f"] = r.residual_f;
    out["wrong_edges_in_view"] = r.wrong_edges_in_view;
    out["path_valid"] = r.path_valid;
    out["ends_in_family"] = r.ends_in_family;
    out["within_size_bound"] = r.within_size_bound;
    out["eps2"] = r.eps2;
    out["degree_precondition"] = r.degree_precondition ? Json(*r.degree_precondition) : Json(nullptr);
    out["audit"] = r.audit;
    return out;
}

auto plan_json(const PartitionPlan& p) -> Json {
    auto parts = [](const std::vector<VertexSet>& ps) {
        Json a = Json::array();
        for (const auto& s : ps) a.push_back(set_json(s));
        return a;
    };
    Json out;
    out["case"] = p.case_id;
    out["k"] = p.k;
    out["m"] = p.m;
    out["k1"] = p.k1;
    out["s"] = p.s;
    out["eta"] = p.eta;
    out["a1"] = p.a1;
    out["x"] = p.x;
    out["y"] = p.y;
    out["e_len"] = p.e_len;
    out["e_a"] = p.e_a;
    out["x_parts_in_a"] = p.x_parts_in_a;
    out["y_parts_in_a"] = p.y_parts_in_a;
    if (!p.x_parts.empty()) {
        out["x_parts"] = parts(p.x_parts);
        out["y_parts"] = parts(p.y_parts);
        out["e"] = path_json(p.e);
    }
    return out;
}

auto stability_json(const StabilityResult& r) -> Json {
    Json out;
    out["valid"] = r.valid;
    out["bridges_typical"] = r.bridges_typical;
    out["plan"] = plan_json(r.plan);
    out["l1_star"] = set_json(r.l1_star);
    out["r1_star"] = set_json(r.r1_star);
    out["l2_star"] = set_json(r.l2_star);
    out["r2_star"] = set_json(r.r2_star);
    out["path"] = path_json(r.path);
    out["log"] = r.log;
    return out;
}

auto kpath_stats_json(const KPathStats& s) -> Json {
    Json out;
    out["attempts"] = s.attempts;
    out["relaxations"] = s.relaxations;
    out["fallbacks"] = s.fallbacks;
    out["combined_matchings"] = s.combined_matchings;
    return out;
}

auto tight_path_json(const TightPath& t) -> Json {
    Json out;
    out["length"] = t.vertices.size();
    out["required"] = t.required;
    out["edges"] = t.edges;
    out["vertices"] = t.vertices;
    return out;
}

auto path_cover_json(const PathCover& c) -> Json {
    Json paths = Json::array();
    for (const auto& p : c.paths) paths.push_back(path_json(p));
    Json out;
    out["path_count"] = c.paths.size();
    out["count_bound"] = c.count_bound;
    out["uncovered"] = c.uncovered;
    out["uncovered_bound"] = c.uncovered_bound;
    out["stalled"] = c.stalled;
    out["uncovered_ok"] = c.uncovered_ok;
    out["count_ok"] = c.count_ok;
    out["paths"] = std::move(paths);
    return out;
}

auto dump_report(const Json& report) -> std::string { return report.dump(2) + "\n"; }

auto canonical_report(const Json& report) -> std::string {
    Json copy = report;
    if (copy.is_object()) copy.erase("metadata");
    return copy.dump();
}

}  // namespace hamlab
