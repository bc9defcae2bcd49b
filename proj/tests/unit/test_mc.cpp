#include <doctest.h>

#include <cmath>
#include <map>

#include "hamlab/mc.hpp"
#include "oracles.hpp"

using namespace hamlab;

TEST_SUITE("mc") {

TEST_CASE("matching sampler shapes") {
    Rng rng(3);
    const auto full = sample_uniform_matching(12, 3, 4, rng);
    VertexSet all;
    for (const auto& b : full) all |= b;
    CHECK(all == VertexSet::prefix(12));
    CHECK(sample_uniform_matching(8, 3, 0, rng).empty());
    CHECK(sample_uniform_matching(8, 3, 1, rng).front().size() == 3);
    CHECK_THROWS_AS(sample_uniform_matching(8, 3, 3, rng), PreconditionError);
}

TEST_CASE("single k-set inclusion frequency") {
    const auto target = oracle::to_set(0b00010101U);
    std::int64_t hits = 0;
    const std::int64_t trials = 1'000'000;
    for (std::int64_t i = 0; i < trials; ++i) {
        Rng rng(sub_seed(17, static_cast<std::uint64_t>(i)));
        if (sample_uniform_matching(8, 3, 1, rng).front() == target) ++hits;
    }
    const double p = 1.0 / 56;
    const double sigma = std::sqrt(p * (1 - p) / trials);
    CHECK(std::abs(static_cast<double>(hits) / trials - p) <= 3 * sigma);
}

TEST_CASE("sampler is uniform over 2-matchings of pairs") {
    // m = 6, k = 2, t = 2: C(6,2) C(4,2) / 2 = 45 matchings.
    std::map<Matching, std::int64_t> counts;
    const std::int64_t trials = 1'000'000;
    Rng rng(99);
    for (std::int64_t i = 0; i < trials; ++i) ++counts[sample_uniform_matching(6, 2, 2, rng)];
    REQUIRE(counts.size() == 45);
    const double expected = static_cast<double>(trials) / 45;
    double chi2 = 0;
    for (const auto& [m, c] : counts) chi2 += (c - expected) * (c - expected) / expected;
    // 44 degrees of freedom; the 0.999 quantile is 78.75.
    CHECK(chi2 < 78.75);
}

TEST_CASE("FK with trivial families") {
    FkOptions o;
    o.t = 5;
    o.gamma = 0.5;
    o.trials = 200;
    o.seed = 5;
    auto r = fk_experiment(Hypergraph::complete(20, 3), o);
    CHECK(r.theta == 1.0);
    CHECK(r.empirical_tail == 0.0);
    CHECK(r.mean == 5.0);
    r = fk_experiment(Hypergraph::empty(20, 3), o);
    CHECK(r.theta == 0.0);
    CHECK(r.empirical_tail == 0.0);
}

TEST_CASE("FK on a random half family") {
    FkOptions o;
    o.t = 10;
    o.gamma = 2;
    o.trials = 20000;
    o.seed = 7;
    o.threads = 4;
    const auto g = random_family(60, 3, 0.5, 7);
    const auto r = fk_experiment(g, o);
    CHECK(r.theta == doctest::Approx(0.5).epsilon(0.02));
    CHECK(r.tail_ok);
    CHECK(r.expectation_ok);
    o.threads = 1;
    const auto again = fk_experiment(g, o);
    CHECK(again.empirical_tail == r.empirical_tail);
    CHECK(again.mean == r.mean);
}

TEST_CASE("Chernoff grid") {
    for (auto [n, p, a] : std::vector<std::tuple<int, double, double>>{{100, 0.3, 0.5}, {1000, 0.5, 0.2}}) {
        const auto r = chernoff_experiment(n, p, a, 20000, 11, 4);
        CHECK(r.ok);
        CHECK(r.slack >= 0);
    }
    CHECK_THROWS_AS(chernoff_experiment(10, 0.5, 2.0, 10, 1), PreconditionError);
}

TEST_CASE("reservoir") {
    ReservoirOptions o;
    o.ell = 2;
    o.m_target = 1;
    o.seed = 4;
    auto r = reservoir_build(Hypergraph::complete(12, 3), o);
    CHECK(r.members.size() == 1);
    CHECK(r.min_coverage == 1);
    CHECK(r.pairs_examined == 60);
    r = reservoir_build(Hypergraph::empty(12, 3), o);
    CHECK(r.min_coverage == 0);
    o.m_target = 3;
    CHECK_THROWS_AS(reservoir_build(Hypergraph::complete(12, 3), o), PreconditionError);
}

}
