#include <doctest.h>

#include "hamlab/cycles.hpp"
#include "hamlab/extremal.hpp"

using namespace hamlab;

namespace {

auto vs(std::initializer_list<Vertex> xs) -> VertexSet {
    VertexSet s;
    for (auto v : xs) s.insert(v);
    return s;
}

auto witness() -> SegCycle { return SegCycle{{vs({0, 2}), vs({3}), vs({1, 4}), vs({5})}, 2}; }

}  // namespace

TEST_SUITE("cycles") {

TEST_CASE("path validation") {
    const SegPath p{{vs({0, 1}), vs({2}), vs({3, 4}), vs({5}), vs({6, 7}), vs({8})}, 2};
    CHECK(validate_path(Hypergraph::complete(9, 3), p).ok);
    const auto bad = validate_path(Hypergraph::empty(9, 3), p);
    CHECK_FALSE(bad.ok);
    CHECK(bad.kind == "edge");
    CHECK(bad.index == 0);
    const SegPath overlap{{vs({0, 1}), vs({2}), vs({2, 4}), vs({5})}, 2};
    CHECK(validate_path(Hypergraph::complete(9, 3), overlap).kind == "disjointness");
    const SegPath sizes{{vs({0, 1}), vs({2, 3})}, 2};
    CHECK(validate_path(Hypergraph::complete(9, 3), sizes).kind == "size");
}

TEST_CASE("cycle validation") {
    const auto h = build_extremal(prefix_spec(6, 3, 2, 1));
    CHECK(validate_cycle(h, witness(), true).ok);
    CHECK_FALSE(validate_cycle(Hypergraph::empty(6, 3), witness(), true).ok);
    const SegCycle short_cycle{{vs({0, 2}), vs({3}), vs({1, 4}), vs({5})}, 2};
    const auto r = validate_cycle(Hypergraph::complete(7, 3), short_cycle, true);
    CHECK(r.kind == "coverage");
    CHECK(r.index == 6);
    CHECK(validate_cycle(Hypergraph::complete(3, 3), SegCycle{{vs({0, 1}), vs({2})}, 2}, false).kind == "degenerate");
}

TEST_CASE("cycle to matchings") {
    const auto [m1, m2] = cycle_to_matchings(witness());
    CHECK(m1 == Matching{vs({0, 2, 3}), vs({1, 4, 5})});
    CHECK(m2 == Matching{vs({1, 3, 4}), vs({0, 2, 5})});
    const auto h = Hypergraph::complete(6, 3);
    CHECK(validate_matching(h, m1, true).ok);
    CHECK(validate_matching(h, m2, true).ok);
    CHECK_THROWS_AS(cycle_to_matchings(SegCycle{{vs({0, 1}), vs({2})}, 2}), PreconditionError);
}

TEST_CASE("every rotation of a valid cycle is a valid path") {
    const auto h = build_extremal(prefix_spec(6, 3, 2, 1));
    const auto c = witness();
    for (int s = 0; s < 4; ++s) CHECK(validate_path(h, cut_cycle(c, s)).ok);
}

TEST_CASE("canonical form") {
    const SegCycle rotated{{vs({1, 4}), vs({5}), vs({0, 2}), vs({3})}, 2};
    CHECK(canonicalize(rotated) == witness());
    // Reflection: L0, R1, L1, R0.
    const SegCycle reflected{{vs({0, 2}), vs({5}), vs({1, 4}), vs({3})}, 2};
    CHECK(canonicalize(reflected) == witness());
}

TEST_CASE("parity identity on matching views") {
    const auto spec = prefix_spec(6, 3, 2, 1);
    const auto [m1, m2] = cycle_to_matchings(witness());
    CHECK(intersection_total(m1, spec.a) == 2);
    CHECK(intersection_total(m2, spec.a) == 2);
    for (const auto& e : m1) CHECK(spec.eta_of(e) == 1);
}

}
