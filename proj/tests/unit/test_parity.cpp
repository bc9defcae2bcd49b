#include <doctest.h>

#include "hamlab/extremal.hpp"
#include "hamlab/parity.hpp"
#include "hamlab/random.hpp"

using namespace hamlab;

namespace {

auto vs(std::initializer_list<Vertex> xs) -> VertexSet {
    VertexSet s;
    for (auto v : xs) s.insert(v);
    return s;
}

// Drop a fraction of the family edges through v, keyed by a hash.
auto damage_vertex(const Hypergraph& b, Vertex v, double rate, std::uint64_t seed) -> Hypergraph {
    auto p = b.predicate();
    return Hypergraph::implicit(b.n(), b.k(), Structure::predicate, [=](const VertexSet& e) {
        if (!p(e)) return false;
        return !e.contains(v) || set_hash_unit(seed, e) >= rate;
    });
}

auto with_edges(const Hypergraph& b, std::vector<VertexSet> extra) -> Hypergraph {
    auto p = b.predicate();
    return Hypergraph::implicit(b.n(), b.k(), Structure::predicate, [=](const VertexSet& e) {
        return p(e) || std::find(extra.begin(), extra.end(), e) != extra.end();
    });
}

// Residual f recomputed from scratch: |V'| and |A ∩ V'| of the original labels.
auto residual_f(const ParityFixResult& r, int n, int k) -> int {
    const auto keep = VertexSet::prefix(n) - r.removed;
    const int a = (keep & r.bad.relocated.a).size();
    return (r.bad.relocated.eta * (keep.size() / k) + a) % 2;
}

}  // namespace

TEST_SUITE("parity") {

TEST_CASE("relocating bad vertices") {
    const auto spec = prefix_spec(12, 3, 6, 1);
    const auto b = build_extremal(spec);
    auto r = relocate_bad(b, spec, 0.01);
    CHECK(r.v0.empty());
    CHECK(r.relocated == spec);

    const auto h = damage_vertex(b, 2, 1.0, 1);
    r = relocate_bad(h, spec, 0.2);
    CHECK(r.v0 == vs({2}));
    CHECK(r.v0_prime == vs({2}));
    CHECK_FALSE(r.relocated.a.contains(2));
    CHECK(r.relocated.a.size() == 5);

    Budget budget;
    CHECK(relocate_bad(Hypergraph::empty(12, 3), spec, 1.0, 0.25, budget).v0.empty());
}

TEST_CASE("covering a bad vertex") {
    const auto spec = prefix_spec(30, 5, 15, 1);
    const auto h = damage_vertex(build_extremal(spec), 7, 0.4, 3);
    Budget budget;
    const auto bad = relocate_bad(h, spec, 0.1, 0.25, budget);
    REQUIRE(bad.v0 == vs({7}));
    for (int choice = 0; choice <= 1; ++choice) {
        const auto c = cover_bad_vertices(h, bad.relocated, 3, bad.v0, vs({0, 1}), choice, 1.0, budget);
        REQUIRE_FALSE(c.empty);
        CHECK(c.path.vertex_count() == 7);
        CHECK(c.path.vertices().contains(7));
        CHECK(c.path.vertices().disjoint(vs({0, 1})));
        CHECK(validate_path(h, c.path).ok);
        for (int i = 0; i < c.path.edge_count(); ++i) CHECK(bad.relocated.contains(c.path.edge(i)));
        CHECK(bad.relocated.eta_of(c.path.segments.front()) == choice);
        CHECK(bad.relocated.eta_of(c.path.segments.back()) == choice);
        CHECK(goodness(h, bad.relocated, c.path.segments.front()).alpha_star <= Rational(1));
    }
    CHECK(cover_bad_vertices(h, bad.relocated, 3, {}, {}, 0, 1.0, budget).empty);
    CHECK_THROWS_AS(cover_bad_vertices(build_extremal(prefix_spec(12, 4, 6, 1)), prefix_spec(12, 4, 6, 1), 2, vs({1}), {}, 0, 1.0, budget),
                    PreconditionError);
}

TEST_CASE("two bad vertices give one joined path") {
    const auto spec = prefix_spec(30, 5, 15, 1);
    const auto h = damage_vertex(damage_vertex(build_extremal(spec), 4, 0.4, 3), 20, 0.4, 5);
    Budget budget;
    const auto bad = relocate_bad(h, spec, 0.1, 0.25, budget);
    REQUIRE(bad.v0 == vs({4, 20}));
    const auto c = cover_bad_vertices(h, bad.relocated, 3, bad.v0, {}, 1, 1.0, budget);
    CHECK(c.path.vertex_count() == 2 * 5 * 2 - 3);
    CHECK(validate_path(h, c.path).ok);
}

TEST_CASE("case 1 when f is already zero") {
    const auto spec = prefix_spec(30, 5, 14, 1);
    REQUIRE(f_parity(spec).f == 0);
    const auto r = parity_fix(build_extremal(spec), spec, 3);
    CHECK(r.case_tag == "case1");
    CHECK(r.removed.empty());
    CHECK(r.path.segments.size() == 2);
    CHECK(r.path_valid);
    CHECK(r.residual_f == 0);
    CHECK(r.wrong_edges_in_view == 0);
}

TEST_CASE("case 2.2 with a planted disjoint pair") {
    const auto spec = prefix_spec(30, 5, 15, 1);
    REQUIRE(f_parity(spec).f == 1);
    const auto e1 = vs({0, 1, 15, 16, 17});
    const auto e2 = vs({2, 3, 18, 19, 20});
    REQUIRE(spec.eta_of(e1) == 0);
    const auto h = with_edges(build_extremal(spec), {e1, e2});
    const auto r = parity_fix(h, spec, 3);
    CHECK(r.case_tag == "case2.2");
    CHECK(r.path_valid);
    CHECK(r.ends_in_family);
    CHECK(r.wrong_edges_in_view == 1);
    CHECK(r.residual_f == 0);
    CHECK(residual_f(r, 30, 5) == 0);
    CHECK_FALSE(r.within_size_bound);
}

TEST_CASE("case 2.1 with a pair meeting in ell vertices") {
    const auto spec = prefix_spec(30, 5, 15, 1);
    const auto e1 = vs({0, 1, 15, 16, 17});
    const auto e2 = vs({0, 1, 15, 18, 19});
    const auto h = with_edges(build_extremal(spec), {e1, e2});
    const auto r = parity_fix(h, spec, 3);
    CHECK(r.case_tag == "case2.1");
    CHECK(r.path_valid);
    CHECK(r.wrong_edges_in_view == 1);
    CHECK(r.residual_f == 0);
    CHECK(residual_f(r, 30, 5) == 0);
}

TEST_CASE("case 2 with a bad vertex to cover") {
    const auto spec = prefix_spec(30, 5, 15, 1);
    const auto e1 = vs({0, 1, 15, 16, 17});
    const auto e2 = vs({2, 3, 18, 19, 20});
    const auto h = damage_vertex(with_edges(build_extremal(spec), {e1, e2}), 9, 0.4, 2);
    ParityConfig config;
    config.alpha = 0.1;
    const auto r = parity_fix(h, spec, 3, config);
    CHECK(r.bad.v0 == vs({9}));
    CHECK(r.case_tag == "case2.2");
    CHECK(r.path.vertices().contains(9));
    CHECK(r.path_valid);
    CHECK(r.wrong_edges_in_view == 1);
    CHECK(residual_f(r, 30, 5) == 0);
}

TEST_CASE("parity obstruction") {
    const auto spec = prefix_spec(30, 5, 15, 1);
    CHECK_THROWS_WITH_AS(parity_fix(build_extremal(spec), spec, 3), doctest::Contains("parity obstruction"), Error);
    CHECK_THROWS_AS(parity_fix(build_extremal(spec), spec, 2), PreconditionError);
}

}
