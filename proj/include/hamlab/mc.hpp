#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "hamlab/cycles.hpp"
#include "hamlab/random.hpp"
#include "hamlab/search.hpp"

namespace hamlab {

/// t pairwise disjoint k-subsets of 0..m−1, uniform over unordered t-matchings.
/// Blocks come back sorted.
auto sample_uniform_matching(int m, int k, int t, Rng& rng) -> Matching;

/// Empirical check of the Frankl–Kupavskii inequality for a family G of
/// k-subsets of [m]: η = |G ∩ M| for a uniform random t-matching M.
struct ConcentrationResult {
    int m = 0;
    int k = 0;
    int t = 0;
    double theta = 0.0;
    std::int64_t family_size = 0;
    double gamma = 0.0;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    double empirical_tail = 0.0;  ///< fraction of trials with |η − θt| >= 2γ√t
    double bound = 0.0;           ///< 2 e^{−γ²/2}
    double mean = 0.0;
    double sigma_hat = 0.0;
    double expectation_check = 0.0;  ///< |mean(η) − θt|
    double expectation_tolerance = 0.0;  ///< 4 σ̂ / √trials
    bool tail_ok = false;
    bool expectation_ok = false;
    std::vector<int> samples;  ///< per-trial η, kept only on request
};

struct FkOptions {
    int t = 1;
    double gamma = 1.0;
    std::int64_t trials = 1000;
    std::uint64_t seed = 1;
    int threads = 1;
    bool keep_samples = false;
};

auto fk_experiment(const Hypergraph& g, const FkOptions& options) -> ConcentrationResult;

struct ChernoffResult {
    int n = 0;
    double p = 0.0;
    double a = 0.0;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    double empirical = 0.0;  ///< fraction with |X − np| >= a·np
    double bound = 0.0;      ///< 2 e^{−a² np / 3}
    double slack = 0.0;      ///< bound − empirical
    bool ok = false;
};

auto chernoff_experiment(int n, double p, double a, std::int64_t trials, std::uint64_t seed, int threads = 1)
    -> ChernoffResult;

/// Desk-scale reservoir: a random matching of 2k-sets and, over the end
/// pairs (L, R) that avoid it, the least number of members connecting them.
struct ReservoirReport {
    std::vector<VertexSet> members;
    std::int64_t min_coverage = 0;
    std::optional<std::pair<VertexSet, VertexSet>> worst_pair;
    std::int64_t pairs_examined = 0;
    bool sampled_pairs = false;
    bool complete = true;  ///< false when a connector count hit the budget
};

struct ReservoirOptions {
    int ell = 1;
    int m_target = 1;
    std::uint64_t seed = 1;
    std::int64_t pair_samples = 0;  ///< 0: every pair
    SearchBudget budget;
};

auto reservoir_build(const Hypergraph& h, const ReservoirOptions& options) -> ReservoirReport;

}  // namespace hamlab
