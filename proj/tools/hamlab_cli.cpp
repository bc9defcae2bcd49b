#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "hamlab/extremal.hpp"
#include "hamlab/hypergraph_io.hpp"
#include "hamlab/random.hpp"
#include "hamlab/report.hpp"
#include "hamlab/verify.hpp"

using namespace hamlab;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_usage = 2;
constexpr int exit_none = 3;
constexpr int exit_unknown = 4;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// "n=6,k=3,a=3,eta=1"
auto key_values(const std::string& text) -> std::map<std::string, std::string> {
    std::map<std::string, std::string> out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("expected key=value, got '" + item + "'");
        out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

auto need_int(const std::map<std::string, std::string>& kv, const std::string& key) -> int {
    auto it = kv.find(key);
    if (it == kv.end()) throw UsageError("missing key '" + key + "'");
    try {
        std::size_t used = 0;
        const int v = std::stoi(it->second, &used);
        if (used != it->second.size()) throw UsageError("");
        return v;
    } catch (const std::exception&) {
        throw UsageError("key '" + key + "' needs an integer, got '" + it->second + "'");
    }
}

auto need_double(const std::map<std::string, std::string>& kv, const std::string& key) -> double {
    auto it = kv.find(key);
    if (it == kv.end()) throw UsageError("missing key '" + key + "'");
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        throw UsageError("key '" + key + "' needs a number, got '" + it->second + "'");
    }
}

// "0,1,2"
auto parse_set(const std::string& text) -> VertexSet {
    VertexSet out;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            out.insert(std::stoi(item));
        } catch (const std::exception&) {
            throw UsageError("bad vertex '" + item + "' in '" + text + "'");
        }
    }
    return out;
}

struct Common {
    std::optional<std::uint64_t> seed;
    int threads = 1;
    std::string out;
};

struct Source {
    std::string input;
    std::string extremal;
    std::string complete;
    std::string random;
    double remove = 0.0;
    int plant = 0;
    int plant_ell = 0;
};

struct Instance {
    Hypergraph graph;
    std::optional<ExtremalSpec> spec;
    Json description;
};

auto require_seed(const Common& c, const std::string& why) -> std::uint64_t {
    if (!c.seed) throw UsageError(why + " is randomized: --seed is required");
    return *c.seed;
}

void add_source(CLI::App* app, Source& s) {
    auto* g = app->add_option_group("instance", "exactly one instance source");
    g->add_option("--input", s.input, "hypergraph file");
    g->add_option("--extremal", s.extremal, "parity graph n=..,k=..,a=..,eta=.. (A = first a vertices)");
    g->add_option("--complete", s.complete, "complete graph n=..,k=..");
    g->add_option("--random", s.random, "random family n=..,k=..,p=..");
    g->require_option(1);
    app->add_option("--delete", s.remove, "delete each edge with this probability");
}

auto load(const Source& s, const Common& c) -> Instance {
    Instance out{Hypergraph::empty(1, 1), std::nullopt, Json::object()};
    if (!s.input.empty()) {
        out.graph = read_hypergraph_file(s.input);
        out.description = {{"source", "file"}, {"path", s.input}};
    } else if (!s.extremal.empty()) {
        const auto kv = key_values(s.extremal);
        const auto spec = prefix_spec(need_int(kv, "n"), need_int(kv, "k"), need_int(kv, "a"), need_int(kv, "eta"));
        out.graph = Hypergraph::extremal(spec);
        out.spec = spec;
        out.description = {{"source", "extremal"}, {"spec", spec_json(spec)}};
    } else if (!s.complete.empty()) {
        const auto kv = key_values(s.complete);
        out.graph = Hypergraph::complete(need_int(kv, "n"), need_int(kv, "k"));
        out.description = {{"source", "complete"}, {"n", out.graph.n()}, {"k", out.graph.k()}};
    } else {
        const auto kv = key_values(s.random);
        const auto seed = require_seed(c, "--random");
        const double p = need_double(kv, "p");
        out.graph = random_family(need_int(kv, "n"), need_int(kv, "k"), p, sub_seed(seed, 1));
        out.description = {{"source", "random"}, {"n", out.graph.n()}, {"k", out.graph.k()}, {"p", p}};
    }
    if (s.remove > 0.0) {
        const auto seed = require_seed(c, "--delete");
        out.graph = delete_random_edges(out.graph, s.remove, sub_seed(seed, 2));
        out.description["delete"] = s.remove;
    }
    if (s.plant > 0) {
        const auto seed = require_seed(c, "--plant");
        if (!out.spec) throw UsageError("--plant needs an --extremal source");
        auto inst = plant_wrong_pairs(out.graph, *out.spec, s.plant, s.plant_ell, sub_seed(seed, 3));
        out.graph = inst.graph;
        Json pairs = Json::array();
        for (const auto& [a, b] : inst.pairs) pairs.push_back({set_json(a), set_json(b)});
        out.description["planted"] = std::move(pairs);
    }
    return out;
}

auto spec_for(const Instance& inst, const std::string& text) -> ExtremalSpec {
    if (!text.empty()) {
        const auto kv = key_values(text);
        return prefix_spec(inst.graph.n(), inst.graph.k(), need_int(kv, "a"), need_int(kv, "eta"));
    }
    if (inst.spec) return *inst.spec;
    throw UsageError("a spec is needed: pass --spec a=..,eta=.. or use an --extremal source");
}

auto blocks(int k, int m) -> std::vector<std::vector<Vertex>> {
    std::vector<std::vector<Vertex>> parts(static_cast<std::size_t>(k));
    for (int p = 0; p < k; ++p) {
        for (int i = 0; i < m; ++i) parts[static_cast<std::size_t>(p)].push_back(p * m + i);
    }
    return parts;
}

struct Outcome {
    Json body;
    int code = exit_ok;
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hamlab: Hamilton (ℓ,k−ℓ)-cycles in parity-type hypergraphs"};
    app.require_subcommand(1);
    Common common;
    Source source;
    std::function<Outcome()> action;

    auto add_common = [&](CLI::App* sub, bool seeded) {
        if (seeded) sub->add_option("--seed", common.seed, "random seed");
        sub->add_option("--threads", common.threads, "worker threads (HAMLAB_THREADS overrides)")->check(CLI::PositiveNumber);
        sub->add_option("--out", common.out, "write the JSON report here instead of stdout");
    };

    // construct
    std::string write_path;
    auto* construct = app.add_subcommand("construct", "build an instance and summarize it");
    add_source(construct, source);
    add_common(construct, true);
    construct->add_option("--write", write_path, "write the edge list in the text format");
    construct->callback([&] {
        action = [&] {
            const auto inst = load(source, common);
            Budget budget;
            Json body = inst.description;
            body["n"] = inst.graph.n();
            body["k"] = inst.graph.k();
            body["structure"] = structure_name(inst.graph.structure());
            body["edges"] = edge_count(inst.graph, budget);
            if (!write_path.empty()) {
                write_hypergraph_file(inst.graph, write_path);
                body["written"] = write_path;
            }
            return Outcome{body, exit_ok};
        };
    });

    // delta
    int d_n = 0, d_k = 0, d_ell = 0;
    std::string d_method = "formula";
    auto* delta = app.add_subcommand("delta", "threshold δ(n,k,ℓ) over the extremal family");
    delta->add_option("--n", d_n)->required();
    delta->add_option("--k", d_k)->required();
    delta->add_option("--ell", d_ell)->required();
    delta->add_option("--method", d_method)->check(CLI::IsMember({"formula", "enumeration"}));
    add_common(delta, false);
    delta->callback([&] {
        action = [&] {
            const auto method = d_method == "formula" ? ThresholdMethod::formula : ThresholdMethod::enumeration;
            try {
                auto body = threshold_json(delta_threshold(d_n, d_k, d_ell, method, common.threads));
                body["status"] = "computed";
                return Outcome{body, exit_ok};
            } catch (const IllDefinedCase& e) {
                Json body = {{"n", d_n}, {"k", d_k}, {"ell", d_ell}, {"method", d_method}, {"status", "ill-defined"},
                             {"reason", e.what()}};
                return Outcome{body, exit_unknown};
            }
        };
    });

    // search
    int s_ell = 0;
    std::string s_mode = "cycle", s_left, s_right;
    std::uint64_t s_nodes = 200'000'000;
    double s_time = 600.0;
    auto* search = app.add_subcommand("search", "exact search for a perfect matching, Hamilton cycle or path");
    add_source(search, source);
    add_common(search, true);
    search->add_option("--ell", s_ell);
    search->add_option("--mode", s_mode)->check(CLI::IsMember({"matching", "cycle", "path"}));
    search->add_option("--left", s_left, "path mode: first segment, e.g. 0,1");
    search->add_option("--right", s_right, "path mode: last segment");
    search->add_option("--node-cap", s_nodes);
    search->add_option("--time-cap", s_time);
    search->callback([&] {
        action = [&] {
            const auto inst = load(source, common);
            SearchBudget budget{s_nodes, s_time, common.threads};
            Json body = inst.description;
            body["mode"] = s_mode;
            SearchStatus status = SearchStatus::unknown;
            std::string reason;
            if (s_mode == "matching") {
                const auto r = find_perfect_matching(inst.graph, budget);
                body["result"] = search_json(r, r.witness ? matching_json(*r.witness) : Json());
                status = r.status;
                reason = r.reason;
            } else {
                if (s_ell < 1) throw UsageError("--ell is required for cycle and path modes");
                body["ell"] = s_ell;
                if (s_mode == "cycle") {
                    const auto r = find_ham_cycle(inst.graph, s_ell, budget);
                    body["result"] = search_json(r, r.witness ? cycle_json(*r.witness) : Json());
                    status = r.status;
                    reason = r.reason;
                } else {
                    if (s_left.empty() || s_right.empty()) throw UsageError("path mode needs --left and --right");
                    const auto r = find_ham_path(inst.graph, s_ell, parse_set(s_left), parse_set(s_right), budget);
                    body["result"] = search_json(r, r.witness ? path_json(*r.witness) : Json());
                    status = r.status;
                    reason = r.reason;
                }
            }
            // Exhaustion backed by the parity invariant (unperturbed parity graphs only).
            if (status == SearchStatus::none && s_mode != "path" && inst.spec && source.remove == 0.0 &&
                source.plant == 0 && parity_certificate(*inst.spec)) {
                reason = "exhausted + parity certificate";
            }
            body["status"] = status_name(status);
            body["reason"] = reason;
            const int code = status == SearchStatus::found ? exit_ok : status == SearchStatus::none ? exit_none : exit_unknown;
            return Outcome{body, code};
        };
    });

    // analyze
    std::string a_what = "goodness", a_spec, a_set, a_mode = "exact";
    double a_alpha = 0.01, a_gamma = 0.1;
    int a_ell = 1, a_eta = 1;
    bool a_widen = false;
    auto* analyze = app.add_subcommand("analyze", "goodness, typicality, closeness and link-bigraph probes");
    add_source(analyze, source);
    add_common(analyze, true);
    analyze->add_option("--what", a_what)->check(CLI::IsMember({"goodness", "typical", "closeness", "link", "degree", "parity"}));
    analyze->add_option("--spec", a_spec, "reference parity graph a=..,eta=.. (A = first a vertices)");
    analyze->add_option("--set", a_set, "vertex set, e.g. 0,1");
    analyze->add_option("--alpha", a_alpha);
    analyze->add_option("--gamma", a_gamma);
    analyze->add_option("--ell", a_ell);
    analyze->add_option("--eta", a_eta, "closeness: family type");
    analyze->add_option("--closeness-mode", a_mode)->check(CLI::IsMember({"exact", "heuristic"}));
    analyze->add_flag("--widen", a_widen, "closeness: scan every |A|");
    analyze->callback([&] {
        action = [&] {
            const auto inst = load(source, common);
            Json body = inst.description;
            body["what"] = a_what;
            if (a_what == "goodness" || a_what == "typical") {
                if (a_set.empty()) throw UsageError("--set is required");
                const auto spec = spec_for(inst, a_spec);
                if (a_what == "goodness") {
                    body["result"] = goodness_json(goodness(inst.graph, spec, parse_set(a_set)));
                } else {
                    const auto r = typicality(inst.graph, spec, parse_set(a_set), a_alpha);
                    body["result"] = {{"typical", r.typical},
                                      {"worst", r.worst ? set_json(*r.worst) : Json()},
                                      {"worst_alpha", rational_json(r.worst_alpha)},
                                      {"alpha", a_alpha}};
                }
            } else if (a_what == "closeness") {
                ClosenessOptions o;
                o.mode = a_mode == "exact" ? ClosenessMode::exact : ClosenessMode::heuristic;
                o.widen = a_widen;
                o.threads = common.threads;
                if (o.mode == ClosenessMode::heuristic) o.seed = require_seed(common, "heuristic closeness");
                body["result"] = closeness_json(closeness(inst.graph, a_eta, o));
            } else if (a_what == "link") {
                body["result"] = link_bigraph_json(link_bigraph_probe(inst.graph, a_ell, a_gamma));
            } else if (a_what == "degree") {
                body["result"] = {{"ell", a_ell}, {"min_ell_degree", min_ell_degree(inst.graph, a_ell)}};
            } else {
                const auto spec = spec_for(inst, a_spec);
                const auto f = f_parity(spec);
                body["result"] = {{"spec", spec_json(spec)}, {"f", f.f}, {"in_extremal_family", f.in_hext}};
            }
            return Outcome{body, exit_ok};
        };
    });

    // mc
    auto* mc = app.add_subcommand("mc", "Monte Carlo experiments");
    mc->require_subcommand(1);
    int fk_m = 0, fk_k = 0, fk_t = 1;
    double fk_theta = 0.5, fk_gamma = 1.0;
    std::int64_t fk_trials = 1000;
    std::string fk_family = "random", fk_csv;
    auto* fk = mc->add_subcommand("fk", "concentration of |G ∩ M| for a uniform random t-matching M");
    fk->add_option("--m", fk_m)->required();
    fk->add_option("--k", fk_k)->required();
    fk->add_option("--t", fk_t)->required();
    fk->add_option("--theta-family", fk_family)->check(CLI::IsMember({"random", "star", "complete"}));
    fk->add_option("--theta", fk_theta, "density of the random family");
    fk->add_option("--gamma", fk_gamma);
    fk->add_option("--trials", fk_trials);
    fk->add_option("--csv", fk_csv, "per-trial η values");
    add_common(fk, true);
    fk->callback([&] {
        action = [&] {
            const auto seed = require_seed(common, "mc fk");
            Hypergraph g = Hypergraph::complete(fk_m, fk_k);
            if (fk_family == "random") {
                g = random_family(fk_m, fk_k, fk_theta, sub_seed(seed, 1));
            } else if (fk_family == "star") {
                g = Hypergraph::implicit(fk_m, fk_k, Structure::predicate, [](const VertexSet& e) { return e.contains(0); });
            }
            FkOptions o;
            o.t = fk_t;
            o.gamma = fk_gamma;
            o.trials = fk_trials;
            o.seed = seed;
            o.threads = common.threads;
            o.keep_samples = !fk_csv.empty();
            const auto r = fk_experiment(g, o);
            if (!fk_csv.empty()) {
                std::ofstream csv(fk_csv);
                if (!csv) throw Error("cannot write " + fk_csv);
                csv << "trial,eta\n";
                for (std::size_t i = 0; i < r.samples.size(); ++i) csv << i << ',' << r.samples[i] << '\n';
            }
            Json body = concentration_json(r);
            body["theta_family"] = fk_family;
            return Outcome{body, exit_ok};
        };
    });
    int ch_n = 0;
    double ch_p = 0.5, ch_a = 0.2;
    std::int64_t ch_trials = 10000;
    auto* chernoff = mc->add_subcommand("chernoff", "binomial tail against the Chernoff bound");
    chernoff->add_option("--n", ch_n)->required();
    chernoff->add_option("--p", ch_p)->required();
    chernoff->add_option("--a", ch_a)->required();
    chernoff->add_option("--trials", ch_trials);
    add_common(chernoff, true);
    chernoff->callback([&] {
        action = [&] {
            const auto seed = require_seed(common, "mc chernoff");
            return Outcome{chernoff_json(chernoff_experiment(ch_n, ch_p, ch_a, ch_trials, seed, common.threads)), exit_ok};
        };
    });
    int rs_ell = 1, rs_target = 1;
    std::int64_t rs_pairs = 0;
    auto* reservoir = mc->add_subcommand("reservoir", "random connector reservoir and its worst coverage");
    add_source(reservoir, source);
    reservoir->add_option("--ell", rs_ell);
    reservoir->add_option("--m-target", rs_target);
    reservoir->add_option("--pair-samples", rs_pairs, "0: every end pair");
    add_common(reservoir, true);
    reservoir->callback([&] {
        action = [&] {
            const auto seed = require_seed(common, "mc reservoir");
            const auto inst = load(source, common);
            ReservoirOptions o;
            o.ell = rs_ell;
            o.m_target = rs_target;
            o.seed = seed;
            o.pair_samples = rs_pairs;
            o.budget.threads = common.threads;
            Json body = inst.description;
            body["result"] = reservoir_json(reservoir_build(inst.graph, o));
            return Outcome{body, exit_ok};
        };
    });

    // parity-fix
    int pf_ell = 1;
    std::string pf_spec;
    double pf_alpha = 0.01;
    auto* parity = app.add_subcommand("parity-fix", "path that repairs the parity obstruction");
    add_source(parity, source);
    add_common(parity, true);
    parity->add_option("--ell", pf_ell)->required();
    parity->add_option("--spec", pf_spec, "reference parity graph a=..,eta=..");
    parity->add_option("--alpha", pf_alpha);
    parity->add_option("--plant", source.plant, "plant this many wrong-parity edge pairs");
    parity->callback([&] {
        action = [&] {
            source.plant_ell = pf_ell;
            const auto inst = load(source, common);
            const auto spec = spec_for(inst, pf_spec);
            ParityConfig config;
            config.alpha = pf_alpha;
            Json body = inst.description;
            try {
                body["result"] = parity_fix_json(parity_fix(inst.graph, spec, pf_ell, config));
                body["status"] = "found";
                return Outcome{body, exit_ok};
            } catch (const Error& e) {
                const std::string what = e.what();
                if (what.find("parity obstruction") == std::string::npos) throw;
                body["status"] = "none";
                body["reason"] = what;
                return Outcome{body, exit_none};
            }
        };
    });

    // engine
    auto* engine = app.add_subcommand("engine", "partition planning, k-partite paths, extremal pipeline");
    engine->require_subcommand(1);
    int pl_k = 0, pl_m = 0, pl_a1 = 0, pl_eta = 1, pl_k1 = 0;
    auto* plan = engine->add_subcommand("plan", "integral partition plans");
    plan->add_option("--k", pl_k)->required();
    plan->add_option("--m", pl_m)->required();
    plan->add_option("--a1", pl_a1)->required();
    plan->add_option("--eta", pl_eta);
    plan->add_option("--k1", pl_k1, "override ⌊a1/m⌋");
    add_common(plan, false);
    plan->callback([&] {
        action = [&] {
            Json options = Json::array();
            for (const auto& p : plan_options(pl_k, pl_m, pl_a1, pl_eta, pl_k1 > 0 ? std::optional<int>(pl_k1) : std::nullopt)) {
                options.push_back(plan_json(p));
            }
            Json body;
            body["chosen"] = options.front();
            body["options"] = std::move(options);
            return Outcome{body, exit_ok};
        };
    });
    int kp_k = 3, kp_m = 6, kp_ell = 1;
    double kp_density = 1.0, kp_alpha = 0.02;
    auto* kpath = engine->add_subcommand("kpath", "Hamilton path in a seeded k-partite box");
    kpath->add_option("--k", kp_k)->required();
    kpath->add_option("--m", kp_m)->required();
    kpath->add_option("--ell", kp_ell)->required();
    kpath->add_option("--density", kp_density, "keep each transversal with this probability");
    kpath->add_option("--alpha", kp_alpha);
    add_common(kpath, true);
    kpath->callback([&] {
        action = [&] {
            const auto seed = require_seed(common, "engine kpath");
            const auto key = sub_seed(seed, 1);
            const double density = kp_density;
            const auto f = Hypergraph::kpartite_restricted(kp_k * kp_m, blocks(kp_k, kp_m), [key, density](const VertexSet& e) {
                return density >= 1.0 || set_hash_unit(key, e) < density;
            });
            // Ends: the first edge through vertex 0 in lexicographic order.
            std::optional<std::pair<VertexSet, VertexSet>> ends;
            std::vector<std::vector<Vertex>> pools = blocks(kp_k, kp_m);
            std::function<void(int, VertexSet)> scan = [&](int p, VertexSet cur) {
                if (ends) return;
                if (p == kp_k) {
                    if (f.contains(cur)) {
                        VertexSet l, r;
                        int i = 0;
                        for (Vertex v : cur.members()) (i++ < kp_ell ? l : r).insert(v);
                        ends.emplace(l, r);
                    }
                    return;
                }
                for (Vertex v : pools[static_cast<std::size_t>(p)]) {
                    if (p == 0 && v != 0) break;
                    VertexSet next = cur;
                    next.insert(v);
                    scan(p + 1, next);
                    if (ends) return;
                }
            };
            scan(0, VertexSet{});
            if (!ends) throw Error("the box has no edge through vertex 0");
            Rng rng(sub_seed(seed, 2));
            Budget budget;
            KPathConfig config;
            config.alpha = kp_alpha;
            KPathStats stats;
            Json body = {{"k", kp_k}, {"m", kp_m}, {"ell", kp_ell}, {"density", kp_density}, {"seed", seed}};
            try {
                const auto p = build_ham_path_kpartite(f, kp_ell, ends->first, ends->second, rng, budget, config, &stats);
                body["valid"] = validate_path(f, p).ok && p.vertex_count() == f.n();
                body["path"] = path_json(p);
                body["stats"] = kpath_stats_json(stats);
                return Outcome{body, exit_ok};
            } catch (const HallFailure& e) {
                body["status"] = "hall failure";
                body["reason"] = e.what();
                Json witness = Json::array();
                for (Vertex v : e.deficient()) witness.push_back(v);
                body["deficient"] = std::move(witness);
                body["neighbour_count"] = e.neighbour_count();
                body["stats"] = kpath_stats_json(stats);
                return Outcome{body, exit_unknown};
            }
        };
    });
    int st_ell = 1;
    bool st_sequential = false;
    auto* stability = engine->add_subcommand("stability", "Hamilton path of a graph close to a parity graph with f = 0");
    add_source(stability, source);
    add_common(stability, true);
    stability->add_option("--ell", st_ell)->required();
    stability->add_flag("--sequential", st_sequential, "build the two boxes one after the other");
    stability->callback([&] {
        action = [&] {
            const auto seed = require_seed(common, "engine stability");
            const auto inst = load(source, common);
            if (!inst.spec) throw UsageError("engine stability needs an --extremal source");
            const auto [l, r] = default_ends(inst.graph, *inst.spec, st_ell);
            Rng rng(sub_seed(seed, 4));
            Budget budget;
            StabilityConfig config;
            config.parallel = !st_sequential && common.threads > 1;
            Json body = inst.description;
            try {
                body["result"] = stability_json(stability_ham_path(inst.graph, *inst.spec, st_ell, l, r, rng, budget, config));
                body["status"] = "found";
                return Outcome{body, exit_ok};
            } catch (const Error& e) {
                const std::string what = e.what();
                if (what.find("parity obstruction") == std::string::npos) throw;
                body["status"] = "none";
                body["reason"] = what;
                return Outcome{body, exit_none};
            }
        };
    });

    // verify
    std::string suite;
    auto* verify = app.add_subcommand("verify", "run a verification suite");
    verify->add_option("suite", suite, "thresholds | extremal-nonham | parity | engine | concentration")->required();
    add_common(verify, true);
    verify->callback([&] {
        action = [&] {
            if (!is_verify_suite(suite)) throw UsageError("unknown verify suite '" + suite + "'");
            VerifyOptions o;
            o.threads = common.threads;
            o.seed = common.seed.value_or(1);
            auto body = run_verify_suite(suite, o);
            return Outcome{body, body["failed"].get<int>() == 0 ? exit_ok : exit_error};
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return exit_usage;
    }

    if (const char* env = std::getenv("HAMLAB_THREADS")) {
        try {
            common.threads = std::max(1, std::stoi(env));
        } catch (const std::exception&) {
            std::cerr << "error: HAMLAB_THREADS must be a positive integer\n";
            return exit_usage;
        }
    }

    std::string command;
    for (const auto* sub = app.get_subcommands().front(); sub != nullptr;) {
        command += (command.empty() ? "" : " ") + sub->get_name();
        const auto subs = sub->get_subcommands();
        sub = subs.empty() ? nullptr : subs.front();
    }

    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
        outcome = action();
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const PreconditionError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return exit_usage;
    } catch (const ParseError& e) {
        std::cerr << "parse error: " << e.what() << '\n';
        return exit_usage;
    } catch (const BudgetExceeded& e) {
        outcome.body = {{"status", "unknown"}, {"reason", e.what()}};
        outcome.code = exit_unknown;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_error;
    }

    Json report;
    report["command"] = command;
    if (common.seed) report["seed"] = *common.seed;
    for (auto it = outcome.body.begin(); it != outcome.body.end(); ++it) {
        if (it.key() != "metadata") report[it.key()] = it.value();
    }
    Json meta = outcome.body.contains("metadata") ? outcome.body["metadata"] : Json::object();
    meta["elapsed_seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    meta["threads"] = common.threads;
    meta["exit_code"] = outcome.code;
    report["metadata"] = std::move(meta);

    const auto text = dump_report(report);
    if (common.out.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(common.out);
        if (!out) {
            std::cerr << "error: cannot write " << common.out << '\n';
            return exit_error;
        }
        out << text;
    }
    return outcome.code;
}
