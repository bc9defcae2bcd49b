#include <doctest.h>

#include "hamlab/extremal.hpp"
#include "hamlab/kpartite.hpp"
#include "hamlab/random.hpp"

using namespace hamlab;

namespace {

auto vs(std::initializer_list<Vertex> xs) -> VertexSet {
    VertexSet s;
    for (auto v : xs) s.insert(v);
    return s;
}

auto block_parts(int k, int m) -> std::vector<std::vector<Vertex>> {
    std::vector<std::vector<Vertex>> parts(static_cast<std::size_t>(k));
    for (int p = 0; p < k; ++p) {
        for (int i = 0; i < m; ++i) parts[static_cast<std::size_t>(p)].push_back(p * m + i);
    }
    return parts;
}

// Ends: L from the first ell parts, R from the rest, all at offset 0.
auto ends(int k, int m, int ell) -> std::pair<VertexSet, VertexSet> {
    VertexSet l, r;
    for (int p = 0; p < k; ++p) (p < ell ? l : r).insert(p * m);
    return {l, r};
}

auto check_hamilton(const Hypergraph& f, const SegPath& p, const VertexSet& l, const VertexSet& r, int ell) {
    const auto report = validate_path(f, p);
    CHECK_MESSAGE(report.ok, report.message);
    CHECK(p.ell == ell);
    CHECK(p.vertex_count() == f.n());
    CHECK(p.segments.front() == l);
    CHECK(p.segments.back() == r);
}

}  // namespace

TEST_SUITE("kpartite") {

TEST_CASE("partition plans") {
    auto p = plan_partition(7, 9, 29, 1);
    CHECK(p.case_id == 1);
    CHECK(p.x == 4);
    CHECK(p.y == 5);
    CHECK(p.e_len == 0);
    CHECK(p.x_parts_in_a * p.x + p.y_parts_in_a * p.y == 29);

    auto q = plan_partition(7, 8, 16, 0);
    CHECK(q.x == 4);
    CHECK(q.y == 4);

    CHECK_THROWS_AS(plan_partition(7, 9, 30, 1), PreconditionError);
    CHECK_THROWS_AS(plan_partition(4, 9, 29, 1), PreconditionError);

    // Every option balances both sides.
    for (const auto& o : plan_options(7, 9, 29, 1)) {
        CHECK(o.x + o.y + o.e_len / 7 == 9);
        CHECK(o.x_parts_in_a * o.x + o.y_parts_in_a * o.y + o.e_a == 29);
        CHECK((o.x_parts_in_a - 1) % 2 == 0);
    }
}

TEST_CASE("hall matching and deficiency witness") {
    auto ok = hall_matching(3, {{0, 1}, {1, 2}, {0}});
    CHECK(ok.perfect);
    std::vector<int> seen(3, 0);
    for (int r : ok.match) ++seen[static_cast<std::size_t>(r)];
    CHECK(seen == std::vector<int>{1, 1, 1});

    auto bad = hall_matching(3, {{0}, {0}, {1, 2}});
    CHECK_FALSE(bad.perfect);
    CHECK(bad.deficient == std::vector<int>{0, 1});
    CHECK(bad.neighbours == std::vector<int>{0});
}

TEST_CASE("box deficit and typicality") {
    const int k = 3, m = 4;
    auto parts = block_parts(k, m);
    Budget budget(1'000'000);
    auto full = Hypergraph::kpartite_complete(k * m, parts);
    CHECK(box_deficit(full, vs({0}), budget) == 0);
    auto minus = Hypergraph::kpartite_restricted(k * m, parts, [](const VertexSet& e) { return !e.contains(0); });
    CHECK(box_deficit(minus, vs({0}), budget) == 16);
    CHECK(box_deficit(minus, vs({4}), budget) == 4);
    CHECK(box_deficit(minus, vs({}), budget) == 16);
    CHECK_FALSE(box_typical(minus, vs({0, 4}), 0.5, budget));
    CHECK(box_typical(minus, vs({1, 5}), 0.5, budget));
    CHECK_THROWS_AS(box_deficit(minus, vs({0, 1}), budget), PreconditionError);
}

TEST_CASE("bipartite base case") {
    Budget budget(10'000'000);
    auto parts = block_parts(2, 5);
    auto g = Hypergraph::kpartite_complete(10, parts);
    auto p = ham_path_bipartite_base(g, 0, 9, budget);
    check_hamilton(g, p, vs({0}), vs({9}), 1);

    // K_{6,6} minus a perfect matching.
    auto parts6 = block_parts(2, 6);
    auto h = Hypergraph::kpartite_restricted(12, parts6, [](const VertexSet& e) { return e.max() - e.min() != 6; });
    auto q = ham_path_bipartite_base(h, 0, 7, budget);
    check_hamilton(h, q, vs({0}), vs({7}), 1);

    CHECK_THROWS_AS(ham_path_bipartite_base(g, 0, 1, budget), PreconditionError);
}

TEST_CASE("complete k-partite boxes, every ell") {
    Budget budget(200'000'000);
    for (int k : {2, 3, 4}) {
        for (int m : {4, 6, 8}) {
            auto f = Hypergraph::kpartite_complete(k * m, block_parts(k, m));
            for (int ell = 1; ell < k; ++ell) {
                CAPTURE(k);
                CAPTURE(m);
                CAPTURE(ell);
                auto [l, r] = ends(k, m, ell);
                Rng rng(static_cast<std::uint64_t>(100 * k + 10 * m + ell));
                auto p = build_ham_path_kpartite(f, ell, l, r, rng, budget);
                check_hamilton(f, p, l, r, ell);
            }
        }
    }
}

TEST_CASE("slightly damaged 3-partite box") {
    const int k = 3, m = 24;
    auto parts = block_parts(k, m);
    Budget budget(2'000'000'000);
    for (std::uint64_t seed : {1, 2, 3}) {
        CAPTURE(seed);
        auto f = Hypergraph::kpartite_restricted(k * m, parts, [seed](const VertexSet& e) {
            return set_hash_unit(seed, e) >= 0.02;
        });
        // Ends chosen adjacent to each other.
        VertexSet l = vs({0}), r;
        for (int b = 0; b < m && r.size() == 0; ++b) {
            for (int c = 0; c < m; ++c) {
                if (f.contains(vs({0, m + b, 2 * m + c}))) {
                    r = vs({m + b, 2 * m + c});
                    break;
                }
            }
        }
        REQUIRE(r.size() == 2);
        Rng rng(seed);
        KPathStats stats;
        auto p = build_ham_path_kpartite(f, 1, l, r, rng, budget, {}, &stats);
        check_hamilton(f, p, l, r, 1);
        CHECK(stats.attempts >= 1);
    }
}

TEST_CASE("isolated vertex gives a Hall failure") {
    const int k = 3, m = 8;
    auto parts = block_parts(k, m);
    // Vertex 23 (last part) sits in no edge.
    auto f = Hypergraph::kpartite_restricted(k * m, parts, [](const VertexSet& e) { return !e.contains(23); });
    Budget budget(500'000'000);
    Rng rng(5);
    KPathConfig config;
    config.n0 = 4;
    try {
        build_ham_path_kpartite(f, 1, vs({0}), vs({8, 16}), rng, budget, config);
        FAIL("expected a Hall failure");
    } catch (const HallFailure& e) {
        const auto& d = e.deficient();
        CHECK(std::find(d.begin(), d.end(), 23) != d.end());
        CHECK(e.neighbour_count() < static_cast<int>(d.size()));
    }
}

TEST_CASE("greedy tight path") {
    Budget budget(100'000'000);
    const int k = 3;
    auto full = Hypergraph::kpartite_complete(k * 6, block_parts(k, 6));
    auto t = greedy_tight_path(full, 1.0, budget);
    CHECK(t.vertices.size() == 18);
    for (std::size_t i = 0; i + k <= t.vertices.size(); ++i) {
        VertexSet e;
        for (std::size_t j = i; j < i + k; ++j) e.insert(t.vertices[j]);
        CHECK(full.contains(e));
    }

    auto half = random_kpartite(k * 20, block_parts(k, 20), 0.5, 7);
    auto u = greedy_tight_path(half, 0.45, budget);
    CHECK(u.vertices.size() >= 10);
    for (std::size_t i = 0; i + k <= u.vertices.size(); ++i) {
        VertexSet e;
        for (std::size_t j = i; j < i + k; ++j) e.insert(u.vertices[j]);
        CHECK(half.contains(e));
    }
    CHECK_THROWS_AS(greedy_tight_path(half, 0.9, budget), PreconditionError);
}

TEST_CASE("path cover of a dense tuple") {
    Budget budget(2'000'000'000);
    const int k = 3, m = 80;
    auto f = random_kpartite(k * m, block_parts(k, m), 0.5, 11);
    auto cover = path_cover_tuple(f, 1, 0.1, 0.5, budget);
    CHECK(cover.uncovered_ok);
    CHECK(cover.count_ok);
    VertexSet seen;
    for (const auto& p : cover.paths) {
        CHECK(validate_path(f, p).ok);
        CHECK(seen.disjoint(p.vertices()));
        seen |= p.vertices();
    }
    CHECK(cover.uncovered == k * m - seen.size());

    auto small = random_kpartite(3 * 40, block_parts(3, 40), 0.5, 11);
    CHECK_THROWS_AS(path_cover_tuple(small, 1, 0.1, 0.5, budget), PreconditionError);
}

TEST_CASE("stability pipeline on the parity graph") {
    const auto spec = prefix_spec(70, 7, 34, 1);
    REQUIRE(f_parity(spec).f == 0);
    const auto b = Hypergraph::extremal(spec);
    Budget budget(4'000'000'000);
    const int ell = 4;
    auto [l, r] = default_ends(b, spec, ell);
    Rng rng(3);
    auto res = stability_ham_path(b, spec, ell, l, r, rng, budget);
    CHECK(res.valid);
    CHECK(res.path.vertex_count() == 70);
    CHECK(res.path.segments.front() == l);
    CHECK(res.path.segments.back() == r);
    CHECK(check_plan(res.plan, spec, l | r).empty());

    for (std::uint64_t seed : {1, 2}) {
        CAPTURE(seed);
        const auto g = delete_random_edges(b, 0.005, seed);
        auto [gl, gr] = default_ends(g, spec, ell);
        Rng grng(seed);
        auto gres = stability_ham_path(g, spec, ell, gl, gr, grng, budget);
        CHECK(gres.valid);
    }
}

TEST_CASE("stability pipeline refuses f = 1") {
    const auto spec = prefix_spec(70, 7, 35, 1);
    REQUIRE(f_parity(spec).f == 1);
    const auto b = Hypergraph::extremal(spec);
    Budget budget(1'000'000);
    Rng rng(1);
    try {
        stability_ham_path(b, spec, 4, vs({0, 1, 2, 3}), vs({40, 41, 42}), rng, budget);
        FAIL("expected the parity obstruction");
    } catch (const Error& e) {
        CHECK(std::string(e.what()).find("parity obstruction") != std::string::npos);
    }
}

}  // TEST_SUITE
