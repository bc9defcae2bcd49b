#include <doctest.h>

#include "hamlab/extremal.hpp"
#include "hamlab/random.hpp"
#include "hamlab/search.hpp"
#include "oracles.hpp"

using namespace hamlab;

namespace {

auto vs(std::initializer_list<Vertex> xs) -> VertexSet {
    VertexSet s;
    for (auto v : xs) s.insert(v);
    return s;
}

auto pred_of(const Hypergraph& h) -> oracle::Pred {
    return [h](oracle::Mask m) { return h.contains(oracle::to_set(m)); };
}

}  // namespace

TEST_SUITE("search") {

TEST_CASE("perfect matchings") {
    auto r = find_perfect_matching(Hypergraph::complete(6, 3));
    REQUIRE(r.status == SearchStatus::found);
    CHECK(validate_matching(Hypergraph::complete(6, 3), *r.witness, true).ok);

    CHECK(find_perfect_matching(build_extremal(prefix_spec(6, 3, 3, 1))).status == SearchStatus::none);

    const auto h = build_extremal(prefix_spec(6, 3, 2, 1));
    r = find_perfect_matching(h);
    REQUIRE(r.status == SearchStatus::found);
    CHECK(validate_matching(h, *r.witness, true).ok);
    CHECK_THROWS_AS(find_perfect_matching(Hypergraph::complete(7, 3)), PreconditionError);
}

TEST_CASE("perfect matchings agree with the oracle on random graphs") {
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        const auto h = random_family(9, 3, 0.12, seed);
        const bool want = oracle::has_perfect_matching(9, 3, pred_of(h));
        const auto got = find_perfect_matching(h, SearchBudget{1'000'000, 60, 1});
        CHECK(got.status == (want ? SearchStatus::found : SearchStatus::none));
        const auto par = find_perfect_matching(h, SearchBudget{1'000'000, 60, 4});
        CHECK(par.status == got.status);
        if (got.witness) CHECK(*par.witness == *got.witness);
    }
}

TEST_CASE("a tiny node cap gives unknown, not none") {
    const auto r = find_ham_cycle(Hypergraph::empty(12, 3), 1, SearchBudget{5, 60, 1});
    CHECK(r.status == SearchStatus::unknown);
}

TEST_CASE("Hamilton cycles") {
    auto r = find_ham_cycle(Hypergraph::complete(6, 3), 2);
    REQUIRE(r.status == SearchStatus::found);
    CHECK(validate_cycle(Hypergraph::complete(6, 3), *r.witness, true).ok);
    CHECK(*r.witness == canonicalize(*r.witness));

    CHECK(find_ham_cycle(build_extremal(prefix_spec(6, 3, 3, 1)), 2).status == SearchStatus::none);
    const auto h = build_extremal(prefix_spec(6, 3, 2, 1));
    r = find_ham_cycle(h, 2);
    REQUIRE(r.status == SearchStatus::found);
    CHECK(validate_cycle(h, *r.witness, true).ok);
    const auto [m1, m2] = cycle_to_matchings(*r.witness);
    CHECK(validate_matching(h, m1, true).ok);
    CHECK(validate_matching(h, m2, true).ok);
}

TEST_CASE("Hamilton cycles agree with the oracle") {
    for (std::uint64_t seed = 1; seed <= 12; ++seed) {
        const auto h = random_family(8, 4, 0.25, seed);
        for (int ell = 1; ell <= 3; ++ell) {
            const bool want = oracle::has_ham_cycle(8, 4, ell, pred_of(h));
            const auto got = find_ham_cycle(h, ell);
            CHECK(got.status == (want ? SearchStatus::found : SearchStatus::none));
            if (got.witness) CHECK(validate_cycle(h, *got.witness, true).ok);
        }
    }
}

TEST_CASE("single-thread witness is the least canonical one") {
    // Enumerate all canonical Hamilton cycles of complete(6,3), ell=1, and
    // compare the least with the search result.
    const auto h = build_extremal(prefix_spec(6, 3, 2, 1));
    std::vector<SegCycle> all;
    for (auto l0 : oracle::masks_of_size(6, 2)) {
        for (auto r0 : oracle::masks_of_size(6, 1)) {
            for (auto l1 : oracle::masks_of_size(6, 2)) {
                const auto used = l0 | r0 | l1;
                if (oracle::pop(used) != 5) continue;
                const auto r1 = oracle::prefix(6) & ~used;
                SegCycle c{{oracle::to_set(l0), oracle::to_set(r0), oracle::to_set(l1), oracle::to_set(r1)}, 2};
                if (validate_cycle(h, c, true).ok) all.push_back(canonicalize(c));
            }
        }
    }
    REQUIRE_FALSE(all.empty());
    auto least = all.front();
    for (const auto& c : all) {
        if (std::lexicographical_compare(c.blocks.begin(), c.blocks.end(), least.blocks.begin(), least.blocks.end())) least = c;
    }
    const auto r = find_ham_cycle(h, 2);
    REQUIRE(r.witness);
    CHECK(*r.witness == least);
    const auto par = find_ham_cycle(h, 2, SearchBudget{1'000'000, 60, 4});
    CHECK(*par.witness == least);
}

TEST_CASE("Hamilton paths") {
    const auto l = vs({0, 1});
    const auto rt = vs({8});
    auto r = find_ham_path(Hypergraph::complete(9, 3), 2, l, rt);
    REQUIRE(r.status == SearchStatus::found);
    CHECK(validate_path(Hypergraph::complete(9, 3), *r.witness).ok);
    CHECK(r.witness->segments.front() == l);
    CHECK(r.witness->segments.back() == rt);
    CHECK(r.witness->vertex_count() == 9);
    CHECK(find_ham_path(Hypergraph::empty(9, 3), 2, l, rt).status == SearchStatus::none);
    CHECK_THROWS_AS(find_ham_path(Hypergraph::complete(8, 3), 2, l, rt), PreconditionError);
}

TEST_CASE("Hamilton paths agree with the oracle") {
    for (int a = 0; a <= 9; ++a) {
        for (int eta = 0; eta <= 1; ++eta) {
            const auto spec = prefix_spec(9, 3, a, eta);
            const auto h = build_extremal(spec);
            const auto l = vs({0, 5});
            const auto rt = vs({8});
            const bool want = oracle::has_ham_path(9, 3, 2, oracle::to_mask(l), oracle::to_mask(rt), pred_of(h));
            CHECK(find_ham_path(h, 2, l, rt).status == (want ? SearchStatus::found : SearchStatus::none));
        }
    }
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto h = random_family(9, 3, 0.35, seed);
        const auto l = vs({2});
        const auto rt = vs({4, 7});
        const bool want = oracle::has_ham_path(9, 3, 1, oracle::to_mask(l), oracle::to_mask(rt), pred_of(h));
        CHECK(find_ham_path(h, 1, l, rt).status == (want ? SearchStatus::found : SearchStatus::none));
    }
}

TEST_CASE("connectors") {
    const auto l = vs({0, 1});
    const auto rt = vs({2});
    CHECK(count_connectors(Hypergraph::complete(9, 3), 2, l, rt).count == 1);
    CHECK(count_connectors(Hypergraph::complete(12, 3), 2, l, rt).count == 84);
    CHECK(count_connectors(Hypergraph::empty(12, 3), 2, l, rt).count == 0);
    const auto capped = count_connectors(Hypergraph::complete(12, 3), 2, l, rt, SearchBudget{10, 60, 1});
    CHECK_FALSE(capped.complete);
    CHECK(capped.count <= 84);

    // Oracle: a 2k-set connects iff the restricted graph has a path with ends L, R.
    const auto h = random_family(10, 3, 0.5, 9);
    const auto got = count_connectors(h, 2, l, rt);
    long long want = 0;
    for (auto c : oracle::masks_of_size(10, 6)) {
        if (c & oracle::to_mask(l | rt)) continue;
        const auto span = c | oracle::to_mask(l | rt);
        const auto p = [&](oracle::Mask e) { return (e & ~span) == 0 && h.contains(oracle::to_set(e)); };
        // Exhaust paths through the span with a relaxed vertex universe.
        bool ok = false;
        std::vector<int> members;
        for (int v = 0; v < 10; ++v) {
            if (span >> v & 1U) members.push_back(v);
        }
        // Relabel to 0..8 for the path oracle.
        auto relabel = [&](oracle::Mask m) {
            oracle::Mask out = 0;
            for (std::size_t i = 0; i < members.size(); ++i) {
                if (m >> members[i] & 1U) out |= oracle::Mask{1} << i;
            }
            return out;
        };
        auto back = [&](oracle::Mask m) {
            oracle::Mask out = 0;
            for (std::size_t i = 0; i < members.size(); ++i) {
                if (m >> i & 1U) out |= oracle::Mask{1} << members[i];
            }
            return out;
        };
        ok = oracle::has_ham_path(9, 3, 2, relabel(oracle::to_mask(l)), relabel(oracle::to_mask(rt)),
                                  [&](oracle::Mask e) { return p(back(e)); });
        if (ok) ++want;
    }
    CHECK(got.count == want);
}

TEST_CASE("absorbers") {
    const int k = 3;
    const auto h = Hypergraph::complete(36, k);
    SegPath p{{}, 2};
    for (int i = 0; i < 10; ++i) {
        p.segments.push_back(vs({3 * i, 3 * i + 1}));
        p.segments.push_back(vs({3 * i + 2}));
    }
    const auto l = vs({30, 31});
    const auto rt = vs({32});
    const auto r = is_absorber(h, p, l, rt);
    REQUIRE(r.status == SearchStatus::found);
    CHECK(r.witness->segments.front() == p.segments.front());
    CHECK(r.witness->segments.back() == p.segments.back());
    CHECK(r.witness->vertices() == (p.vertices() | l | rt));

    // Every edge through 30 is gone, so nothing can absorb L.
    const auto trap = Hypergraph::implicit(36, k, Structure::predicate, [](const VertexSet& e) { return !e.contains(30); });
    CHECK(is_absorber(trap, p, l, rt).status == SearchStatus::none);

    CHECK_THROWS_AS(is_absorber(h, p, vs({0, 31}), rt), PreconditionError);
}

TEST_CASE("parity pairs") {
    const auto spec = prefix_spec(8, 3, 4, 1);
    auto r = find_parity_pair(Hypergraph::complete(8, 3), spec, 2);
    REQUIRE(r.status == SearchStatus::found);
    CHECK(spec.eta_of(r.witness->first) != 1);
    CHECK(spec.eta_of(r.witness->second) != 1);
    const int common = r.witness->first.intersection_size(r.witness->second);
    CHECK((common == 0 || common == 2));

    CHECK(find_parity_pair(build_extremal(spec), spec, 2).status == SearchStatus::none);

    const auto e1 = vs({0, 1, 4});
    const auto e2 = vs({2, 3, 5});
    const auto planted = Hypergraph::implicit(8, 3, Structure::predicate, [&](const VertexSet& e) {
        return spec.contains(e) || e == e1 || e == e2;
    });
    r = find_parity_pair(planted, spec, 2);
    REQUIRE(r.witness);
    CHECK(r.witness->first == e1);
    CHECK(r.witness->second == e2);
}

TEST_CASE("parity certificate forbids Hamilton cycles") {
    for (auto [n, k] : std::vector<std::pair<int, int>>{{6, 3}, {9, 3}, {8, 4}}) {
        for (const auto& spec : extremal_family(n, k)) {
            CHECK(parity_certificate(spec));
            for (int ell = 1; ell < k; ++ell) {
                CHECK(find_ham_cycle(build_extremal(spec), ell).status == SearchStatus::none);
            }
        }
    }
}

}
