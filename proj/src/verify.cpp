#include "hamlab/verify.hpp"

#include <chrono>
#include <cmath>
#include <functional>

#include "hamlab/random.hpp"

namespace hamlab {

namespace {

struct Matrix {
    Json cells = Json::array();
    Json seconds = Json::array();
    int passed = 0;
    int failed = 0;
    int reported = 0;

    // A cell body returns (status, detail); an exception is a failure.
    void run(const std::string& name, const std::function<std::pair<std::string, std::string>()>& body) {
        const auto start = std::chrono::steady_clock::now();
        std::string status;
        std::string detail;
        try {
            std::tie(status, detail) = body();
        } catch (const std::exception& e) {
            status = "fail";
            detail = std::string("error: ") + e.what();
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (status == "pass") {
            ++passed;
        } else if (status == "fail") {
            ++failed;
        } else {
            ++reported;
        }
        cells.push_back({{"cell", name}, {"status", status}, {"detail", detail}});
        seconds.push_back({{"cell", name}, {"seconds", secs}});
    }

    auto finish(const std::string& suite) -> Json {
        Json out;
        out["suite"] = suite;
        out["passed"] = passed;
        out["failed"] = failed;
        out["reported"] = reported;
        out["cells"] = std::move(cells);
        out["metadata"] = {{"cell_seconds", std::move(seconds)}};
        return out;
    }
};

auto verdict(bool ok) -> std::string { return ok ? "pass" : "fail"; }

auto blocks(int k, int m) -> std::vector<std::vector<Vertex>> {
    std::vector<std::vector<Vertex>> parts(static_cast<std::size_t>(k));
    for (int p = 0; p < k; ++p) {
        for (int i = 0; i < m; ++i) parts[static_cast<std::size_t>(p)].push_back(p * m + i);
    }
    return parts;
}

auto suite_thresholds(const VerifyOptions& options) -> Json {
    Matrix mx;
    const std::vector<std::pair<int, int>> grid{{7, 21}, {7, 35}, {8, 48}, {8, 56}, {10, 50}, {7, 28}, {9, 36}};
    for (const auto& [k, n] : grid) {
        mx.run("k=" + std::to_string(k) + ",n=" + std::to_string(n), [&, k = k, n = n] {
            const auto en = delta_threshold(n, k, k - 1, ThresholdMethod::enumeration, options.threads);
            const std::string shown = std::to_string(en.value.numerator()) + "/" + std::to_string(en.value.denominator());
            try {
                const auto fm = delta_threshold(n, k, k - 1, ThresholdMethod::formula);
                return std::pair{verdict(fm.value == en.value),
                                 fm.formula_case + ": formula " + std::to_string(fm.value.numerator()) + "/" +
                                     std::to_string(fm.value.denominator()) + ", enumeration " + shown};
            } catch (const IllDefinedCase& e) {
                return std::pair{std::string("reported"), std::string(e.what()) + "; enumeration " + shown};
            }
        });
    }
    return mx.finish("thresholds");
}

auto suite_extremal_nonham(const VerifyOptions& options) -> Json {
    Matrix mx;
    SearchBudget budget;
    budget.threads = options.threads;
    for (const auto& [n, k] : std::vector<std::pair<int, int>>{{6, 3}, {9, 3}, {8, 4}, {12, 4}}) {
        for (const auto& spec : extremal_family(n, k)) {
            const auto h = Hypergraph::extremal(spec);
            const std::string base = "n=" + std::to_string(n) + ",k=" + std::to_string(k) + ",a=" +
                                     std::to_string(spec.a_size()) + ",eta=" + std::to_string(spec.eta);
            mx.run(base + ",matching", [&] {
                const auto r = find_perfect_matching(h, budget);
                const bool ok = r.status == SearchStatus::none && parity_certificate(spec);
                return std::pair{verdict(ok), status_name(r.status) + ", " + r.reason};
            });
            for (int ell = 1; ell < k; ++ell) {
                mx.run(base + ",ell=" + std::to_string(ell), [&, ell] {
                    const auto r = find_ham_cycle(h, ell, budget);
                    const bool ok = r.status == SearchStatus::none && parity_certificate(spec);
                    return std::pair{verdict(ok), status_name(r.status) + ", " + r.reason};
                });
            }
        }
    }
    return mx.finish("extremal-nonham");
}

auto suite_parity(const VerifyOptions& options) -> Json {
    Matrix mx;
    const auto spec = prefix_spec(30, 5, 15, 1);
    const auto b = Hypergraph::extremal(spec);
    for (std::uint64_t i = 1; i <= 20; ++i) {
        const auto seed = sub_seed(options.seed, i);
        mx.run("planted seed " + std::to_string(i), [&] {
            const auto base = delete_random_edges(b, 0.01, seed);
            const auto inst = plant_wrong_pairs(base, spec, 1 + static_cast<int>(i % 2), 3, seed);
            const auto r = parity_fix(inst.graph, spec, 3);
            const bool ok = r.path_valid && r.residual_f == 0 && r.wrong_edges_in_view == 1;
            return std::pair{verdict(ok), r.case_tag + ", residual f " + std::to_string(r.residual_f) +
                                              ", wrong edges " + std::to_string(r.wrong_edges_in_view)};
        });
        mx.run("unplanted seed " + std::to_string(i), [&] {
            const auto base = delete_random_edges(b, 0.01, seed);
            try {
                parity_fix(base, spec, 3);
            } catch (const Error& e) {
                const std::string what = e.what();
                return std::pair{verdict(what.find("parity obstruction") != std::string::npos), what};
            }
            return std::pair{std::string("fail"), std::string("no obstruction reported")};
        });
    }
    return mx.finish("parity");
}

auto suite_engine(const VerifyOptions& options) -> Json {
    Matrix mx;
    for (int k : {2, 3, 4}) {
        for (int m : {4, 6, 8}) {
            for (int ell = 1; ell < k; ++ell) {
                mx.run("complete k=" + std::to_string(k) + ",m=" + std::to_string(m) + ",ell=" + std::to_string(ell),
                       [&, k, m, ell] {
                           const auto f = Hypergraph::kpartite_complete(k * m, blocks(k, m));
                           VertexSet l, r;
                           for (int p = 0; p < k; ++p) (p < ell ? l : r).insert(p * m);
                           Rng rng(sub_seed(options.seed, static_cast<std::uint64_t>(100 * k + 10 * m + ell)));
                           Budget budget;
                           const auto p = build_ham_path_kpartite(f, ell, l, r, rng, budget);
                           const bool ok = validate_path(f, p).ok && p.vertex_count() == k * m &&
                                           p.segments.front() == l && p.segments.back() == r;
                           return std::pair{verdict(ok), std::to_string(p.segments.size()) + " segments"};
                       });
            }
        }
    }
    for (std::uint64_t i = 1; i <= 100; ++i) {
        mx.run("2% deleted k=3,m=24 seed " + std::to_string(i), [&] {
            const int k = 3, m = 24;
            const auto seed = sub_seed(options.seed, 1000 + i);
            const auto f = Hypergraph::kpartite_restricted(
                k * m, blocks(k, m), [seed](const VertexSet& e) { return set_hash_unit(seed, e) >= 0.02; });
            VertexSet l{0}, r;
            for (int b = 0; b < m && r.size() == 0; ++b) {
                for (int c = 0; c < m; ++c) {
                    if (f.contains(VertexSet{0, m + b, 2 * m + c})) {
                        r = VertexSet{m + b, 2 * m + c};
                        break;
                    }
                }
            }
            Rng rng(seed);
            Budget budget;
            const auto p = build_ham_path_kpartite(f, 1, l, r, rng, budget);
            const bool ok = validate_path(f, p).ok && p.vertex_count() == k * m && p.segments.front() == l &&
                            p.segments.back() == r;
            return std::pair{verdict(ok), "ends " + l.to_string() + " " + r.to_string()};
        });
    }
    for (std::uint64_t i = 1; i <= 50; ++i) {
        mx.run("tight path density 0.5 seed " + std::to_string(i), [&] {
            const auto f = random_kpartite(60, blocks(3, 20), 0.5, sub_seed(options.seed, 2000 + i));
            Budget budget;
            Budget count_budget;
            const double c = static_cast<double>(edge_count(f, count_budget)) / 8000.0;
            const auto t = greedy_tight_path(f, c, budget);
            const bool ok = static_cast<double>(t.vertices.size()) >= c * 20 && t.vertices.size() >= 10;
            return std::pair{verdict(ok), std::to_string(t.vertices.size()) + " vertices, c = " + std::to_string(c)};
        });
    }
    for (std::uint64_t i = 1; i <= 20; ++i) {
        mx.run("path cover density 0.5 m=80 seed " + std::to_string(i), [&] {
            const auto f = random_kpartite(240, blocks(3, 80), 0.5, sub_seed(options.seed, 3000 + i));
            Budget budget;
            const auto c = path_cover_tuple(f, 1, 0.1, 0.5, budget);
            return std::pair{verdict(c.uncovered_ok && c.count_ok),
                             std::to_string(c.paths.size()) + " paths, " + std::to_string(c.uncovered) + " uncovered"};
        });
    }
    const auto spec = prefix_spec(70, 7, 34, 1);
    const auto b = Hypergraph::extremal(spec);
    for (std::uint64_t i = 0; i <= 20; ++i) {
        mx.run(i == 0 ? std::string("stability B n=70") : "stability 0.5% deleted seed " + std::to_string(i), [&] {
            const auto g = i == 0 ? b : delete_random_edges(b, 0.005, sub_seed(options.seed, 4000 + i));
            const auto [l, r] = default_ends(g, spec, 4);
            Rng rng(sub_seed(options.seed, 5000 + i));
            Budget budget;
            StabilityConfig config;
            config.parallel = options.threads > 1;
            const auto res = stability_ham_path(g, spec, 4, l, r, rng, budget, config);
            const bool ok = res.valid && res.path.segments.front() == l && res.path.segments.back() == r;
            return std::pair{verdict(ok), "plan case " + std::to_string(res.plan.case_id)};
        });
    }
    return mx.finish("engine");
}

auto suite_concentration(const VerifyOptions& options) -> Json {
    Matrix mx;
    struct Cell {
        int m, k, t;
        double gamma;
    };
    for (const auto& c : std::vector<Cell>{{60, 3, 10, 2.0}, {60, 3, 10, 3.0}, {100, 4, 10, 2.0}}) {
        mx.run("fk m=" + std::to_string(c.m) + ",k=" + std::to_string(c.k) + ",t=" + std::to_string(c.t) +
                   ",gamma=" + std::to_string(static_cast<int>(c.gamma)),
               [&] {
                   const auto g = random_family(c.m, c.k, 0.5, sub_seed(options.seed, 77));
                   FkOptions fo;
                   fo.t = c.t;
                   fo.gamma = c.gamma;
                   fo.trials = 100000;
                   fo.seed = options.seed;
                   fo.threads = options.threads;
                   const auto r = fk_experiment(g, fo);
                   return std::pair{verdict(r.tail_ok && r.expectation_ok),
                                    "tail " + std::to_string(r.empirical_tail) + " <= " + std::to_string(r.bound)};
               });
    }
    for (const auto& [n, p, a] : std::vector<std::tuple<int, double, double>>{{100, 0.3, 0.5}, {1000, 0.5, 0.2}}) {
        mx.run("chernoff n=" + std::to_string(n), [&, n = n, p = p, a = a] {
            const auto r = chernoff_experiment(n, p, a, 100000, options.seed, options.threads);
            return std::pair{verdict(r.ok), "slack " + std::to_string(r.slack)};
        });
    }
    return mx.finish("concentration");
}

}  // namespace

auto verify_suite_names() -> const std::vector<std::string>& {
    static const std::vector<std::string> names{"thresholds", "extremal-nonham", "parity", "engine", "concentration"};
    return names;
}

auto is_verify_suite(const std::string& name) -> bool {
    const auto& names = verify_suite_names();
    return std::find(names.begin(), names.end(), name) != names.end();
}

auto run_verify_suite(const std::string& name, const VerifyOptions& options) -> Json {
    if (name == "thresholds") return suite_thresholds(options);
    if (name == "extremal-nonham") return suite_extremal_nonham(options);
    if (name == "parity") return suite_parity(options);
    if (name == "engine") return suite_engine(options);
    if (name == "concentration") return suite_concentration(options);
    throw PreconditionError("unknown verify suite: " + name);
}

}  // namespace hamlab
