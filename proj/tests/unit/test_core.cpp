#include <doctest.h>

#include <sstream>

#include "hamlab/hypergraph.hpp"
#include "hamlab/hypergraph_io.hpp"
#include "hamlab/random.hpp"
#include "oracles.hpp"

using namespace hamlab;

namespace {

auto vs(std::initializer_list<Vertex> xs) -> VertexSet {
    VertexSet s;
    for (auto v : xs) s.insert(v);
    return s;
}

auto parity_graph(int n, int k, int a, int eta) -> Hypergraph {
    return Hypergraph::extremal(ExtremalSpec{n, k, VertexSet::prefix(a), eta});
}

auto count_edges(const Hypergraph& h) -> std::int64_t {
    Budget b;
    return edge_count(h, b);
}

}  // namespace

TEST_SUITE("core") {

TEST_CASE("vertex sets beyond the inline words") {
    VertexSet s;
    s.insert(3);
    s.insert(200);
    s.insert(127);
    CHECK(s.size() == 3);
    CHECK(s.min() == 3);
    CHECK(s.max() == 200);
    CHECK(s.members() == std::vector<Vertex>{3, 127, 200});
    s.erase(200);
    CHECK(s == vs({3, 127}));
    CHECK(s.hash() == vs({3, 127}).hash());
    CHECK(vs({0, 5}) < vs({1, 2}));
    CHECK(vs({0, 1}) < vs({0, 2}));
    CHECK(vs({0, 1, 9}) < vs({0, 2, 3}));
}

TEST_CASE("link of the complete and empty graphs") {
    CHECK(link(Hypergraph::complete(5, 3), vs({0})).size() == 6);
    CHECK(link(Hypergraph::empty(5, 3), vs({0, 1})).empty());
}

TEST_CASE("link in a parity graph matches enumeration") {
    const auto h = parity_graph(6, 3, 3, 1);
    const auto l = link(h, vs({0, 1}));
    REQUIRE(l.size() == 1);
    CHECK(l[0] == vs({2}));
    const auto amask = oracle::prefix(3);
    for (auto s : oracle::masks_of_size(6, 1)) {
        CHECK(degree(h, oracle::to_set(s)) == oracle::degree(6, 3, s, oracle::parity_pred(amask, 1)));
    }
}

TEST_CASE("minimum ell-degree") {
    CHECK(min_ell_degree(Hypergraph::complete(6, 3), 2) == 4);
    CHECK(min_ell_degree(parity_graph(6, 3, 3, 1), 2) == 1);
    CHECK(min_ell_degree(Hypergraph::empty(6, 3), 1) == 0);
    CHECK(min_ell_degree(parity_graph(6, 3, 3, 1), 0) == 10);
    for (int a = 0; a <= 9; ++a) {
        for (int ell = 1; ell <= 2; ++ell) {
            const auto want = oracle::min_degree(9, 3, ell, oracle::parity_pred(oracle::prefix(a), 1));
            CHECK(min_ell_degree(parity_graph(9, 3, a, 1), ell) == want);
        }
    }
}

TEST_CASE("budget caps enumeration on implicit graphs") {
    Budget tiny(10);
    CHECK_THROWS_AS(min_ell_degree(Hypergraph::complete(12, 4), 2, tiny), BudgetExceeded);
}

TEST_CASE("restriction") {
    const auto r = restrict_to(Hypergraph::complete(6, 3), vs({1, 2, 4, 5}));
    CHECK(r.graph.n() == 4);
    CHECK(count_edges(r.graph) == 4);

    const auto h = parity_graph(6, 3, 3, 1);
    const auto u = vs({0, 1, 3, 4});
    const auto sub = restrict_to(h, u);
    for (auto e : oracle::masks_of_size(4, 3)) {
        const auto set = oracle::to_set(e);
        CHECK(sub.graph.contains(set) == h.contains(sub.to_original(set)));
        // A ∩ U = {0,1} relabels to {0,1}.
        CHECK(sub.graph.contains(set) == ((oracle::pop(e & 0b11U) & 1) == 1));
    }
    CHECK_THROWS_AS(restrict_to(h, vs({0, 1})), PreconditionError);
}

TEST_CASE("restriction is functorial") {
    const auto h = random_family(12, 3, 0.5, 11);
    const auto u = vs({0, 2, 3, 5, 7, 8, 9, 11});
    const auto w_local = vs({1, 2, 4, 5, 6});  // labels inside H[U]
    const auto once = restrict_to(h, u);
    const auto twice = restrict_to(once.graph, w_local);
    const auto direct = restrict_to(h, once.to_original(w_local));
    for (auto e : oracle::masks_of_size(5, 3)) {
        const auto s = oracle::to_set(e);
        CHECK(twice.graph.contains(s) == direct.graph.contains(s));
    }
}

TEST_CASE("complement") {
    CHECK(complement(Hypergraph::empty(6, 3)).structure() == Structure::complete);
    CHECK(count_edges(complement(Hypergraph::complete(6, 3))) == 0);
    const auto c = complement(parity_graph(8, 3, 3, 1));
    REQUIRE(c.extremal_spec().has_value());
    CHECK(c.extremal_spec()->eta == 0);
    const auto h = random_family(8, 3, 0.4, 5);
    const auto cc = complement(complement(h));
    for (auto e : oracle::masks_of_size(8, 3)) {
        CHECK(cc.contains(oracle::to_set(e)) == h.contains(oracle::to_set(e)));
    }
}

TEST_CASE("degree complement identity") {
    const auto h = materialize(random_family(10, 4, 0.5, 3));
    const auto hc = complement(h);
    for (int ell = 0; ell <= 3; ++ell) {
        for (auto s : oracle::masks_of_size(10, ell)) {
            const auto set = oracle::to_set(s);
            CHECK(degree(h, set) + degree(hc, set) == oracle::binom(10 - ell, 4 - ell));
        }
    }
}

TEST_CASE("implicit and explicit backends agree") {
    for (int a = 0; a <= 14; a += 3) {
        const auto imp = parity_graph(14, 3, a, a % 2);
        const auto exp = materialize(imp);
        CHECK(exp.is_explicit());
        for (auto e : oracle::masks_of_size(14, 3)) {
            CHECK(imp.contains(oracle::to_set(e)) == exp.contains(oracle::to_set(e)));
        }
    }
}

TEST_CASE("k-partite backends") {
    const std::vector<std::vector<Vertex>> parts{{0, 1}, {2, 3}, {4, 5}};
    const auto k = Hypergraph::kpartite_complete(6, parts);
    CHECK(k.contains(vs({0, 2, 4})));
    CHECK_FALSE(k.contains(vs({0, 1, 4})));
    CHECK(count_edges(k) == 8);
}

TEST_CASE("text format round trip") {
    const auto h = materialize(parity_graph(6, 3, 3, 1));
    const auto text = format_hypergraph(h);
    CHECK(text.rfind("6 3\n", 0) == 0);
    const auto back = parse_hypergraph(text);
    CHECK(back.edges() == h.edges());
    CHECK(parse_hypergraph("4 2\n# comment\n0 1\n2 3\n").edges().size() == 2);
}

TEST_CASE("text format rejects malformed input") {
    CHECK_THROWS_AS(parse_hypergraph("4 2\n0 1"), ParseError);
    CHECK_THROWS_AS(parse_hypergraph("4 2\n1 0\n"), ParseError);
    CHECK_THROWS_AS(parse_hypergraph("4 2\n2 3\n0 1\n"), ParseError);
    CHECK_THROWS_AS(parse_hypergraph("4 2\n0  1\n"), ParseError);
    CHECK_THROWS_AS(parse_hypergraph("4 2\n0 4\n"), ParseError);
    CHECK_THROWS_AS(parse_hypergraph("4 2\n0 1\n0 1\n"), ParseError);
}

TEST_CASE("rng is reproducible and bounded") {
    Rng a(42);
    Rng b(42);
    for (int i = 0; i < 100; ++i) CHECK(a.next() == b.next());
    Rng c(1);
    std::vector<int> hist(6, 0);
    for (int i = 0; i < 60000; ++i) ++hist[static_cast<std::size_t>(c.below(6))];
    for (int x : hist) CHECK(std::abs(x - 10000) < 500);
    CHECK(sub_seed(1, 2) != sub_seed(2, 1));
}

}
