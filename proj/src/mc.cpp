#include "hamlab/mc.hpp"

#include <algorithm>
#include <cmath>
#include <future>

namespace hamlab {

auto sample_uniform_matching(int m, int k, int t, Rng& rng) -> Matching {
    require(k >= 1 && t >= 0, "need k >= 1 and t >= 0");
    require(m >= t * k, "a t-matching of k-sets needs m >= tk");
    std::vector<Vertex> perm(static_cast<std::size_t>(m));
    for (Vertex v = 0; v < m; ++v) perm[static_cast<std::size_t>(v)] = v;
    rng.shuffle(perm);
    Matching out;
    for (int i = 0; i < t; ++i) {
        VertexSet block;
        for (int j = 0; j < k; ++j) block.insert(perm[static_cast<std::size_t>(i * k + j)]);
        out.push_back(block);
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

/// Run `trial(i)` for i in [0, trials) across threads; results land by index
/// so the output does not depend on the thread count.
template <typename T, typename F>
auto run_trials(std::int64_t trials, int threads, F&& trial) -> std::vector<T> {
    std::vector<T> out(static_cast<std::size_t>(trials));
    const auto workers = static_cast<std::int64_t>(std::max(1, threads));
    const auto chunk = (trials + workers - 1) / workers;
    std::vector<std::future<void>> jobs;
    for (std::int64_t b = 0; b < trials; b += chunk) {
        const auto e = std::min(trials, b + chunk);
        jobs.push_back(std::async(std::launch::async, [&, b, e] {
            for (auto i = b; i < e; ++i) out[static_cast<std::size_t>(i)] = trial(i);
        }));
    }
    for (auto& j : jobs) j.get();
    return out;
}

}  // namespace

auto fk_experiment(const Hypergraph& g, const FkOptions& o) -> ConcentrationResult {
    const int m = g.n();
    const int k = g.k();
    require(o.trials >= 1, "need at least one trial");
    require(m >= o.t * k, "FK experiment needs m >= tk");
    ConcentrationResult r;
    r.m = m;
    r.k = k;
    r.t = o.t;
    r.gamma = o.gamma;
    r.trials = o.trials;
    r.seed = o.seed;
    Budget budget(static_cast<std::uint64_t>(binomial(m, k)) + 1);
    r.family_size = edge_count(g, budget);
    r.theta = static_cast<double>(r.family_size) / static_cast<double>(binomial(m, k));

    const auto etas = run_trials<int>(o.trials, o.threads, [&](std::int64_t i) {
        Rng rng(sub_seed(o.seed, static_cast<std::uint64_t>(i)));
        int eta = 0;
        for (const auto& e : sample_uniform_matching(m, k, o.t, rng)) eta += g.contains(e) ? 1 : 0;
        return eta;
    });
    const double centre = r.theta * o.t;
    const double radius = 2 * o.gamma * std::sqrt(static_cast<double>(o.t));
    std::int64_t tail = 0;
    double sum = 0;
    for (int eta : etas) {
        sum += eta;
        if (std::abs(eta - centre) >= radius) ++tail;
    }
    const auto n = static_cast<double>(o.trials);
    r.mean = sum / n;
    double sq = 0;
    for (int eta : etas) sq += (eta - r.mean) * (eta - r.mean);
    r.sigma_hat = o.trials > 1 ? std::sqrt(sq / (n - 1)) : 0.0;
    r.empirical_tail = static_cast<double>(tail) / n;
    r.bound = 2 * std::exp(-o.gamma * o.gamma / 2);
    r.expectation_check = std::abs(r.mean - centre);
    r.expectation_tolerance = 4 * r.sigma_hat / std::sqrt(n);
    r.tail_ok = r.empirical_tail <= r.bound;
    r.expectation_ok = r.expectation_check <= r.expectation_tolerance;
    if (o.keep_samples) r.samples = etas;
    return r;
}

auto chernoff_experiment(int n, double p, double a, std::int64_t trials, std::uint64_t seed, int threads) -> ChernoffResult {
    require(n >= 1 && p > 0 && p < 1, "need n >= 1 and 0 < p < 1");
    require(a > 0 && a < 1.5, "the bound needs 0 < a < 3/2");
    require(trials >= 1, "need at least one trial");
    ChernoffResult r;
    r.n = n;
    r.p = p;
    r.a = a;
    r.trials = trials;
    r.seed = seed;
    const double mean = n * p;
    const auto hits = run_trials<char>(trials, threads, [&](std::int64_t i) {
        Rng rng(sub_seed(seed, static_cast<std::uint64_t>(i)));
        int x = 0;
        for (int j = 0; j < n; ++j) x += rng.bernoulli(p) ? 1 : 0;
        return static_cast<char>(std::abs(x - mean) >= a * mean);
    });
    r.empirical = static_cast<double>(std::count(hits.begin(), hits.end(), 1)) / static_cast<double>(trials);
    r.bound = 2 * std::exp(-a * a * mean / 3);
    r.slack = r.bound - r.empirical;
    r.ok = r.empirical <= r.bound;
    return r;
}

auto reservoir_build(const Hypergraph& h, const ReservoirOptions& o) -> ReservoirReport {
    const int n = h.n();
    const int k = h.k();
    require(o.ell >= 1 && o.ell <= k - 1, "reservoir needs 1 <= ell <= k-1");
    require(o.m_target >= 1, "reservoir needs m_target >= 1");
    require(static_cast<std::int64_t>(o.m_target) * 2 * k <= n, "m_target * 2k exceeds n");
    require(n - o.m_target * 2 * k >= k, "too few vertices left outside the reservoir for an end pair");
    Rng rng(o.seed);
    ReservoirReport out;
    out.members = sample_uniform_matching(n, 2 * k, o.m_target, rng);
    VertexSet covered;
    for (const auto& c : out.members) covered |= c;
    const auto outside = complement_members(n, covered);

    std::vector<std::pair<VertexSet, VertexSet>> pairs;
    if (o.pair_samples > 0) {
        out.sampled_pairs = true;
        for (std::int64_t i = 0; i < o.pair_samples; ++i) {
            auto pool = outside;
            rng.shuffle(pool);
            VertexSet l;
            VertexSet r;
            for (int j = 0; j < o.ell; ++j) l.insert(pool[static_cast<std::size_t>(j)]);
            for (int j = o.ell; j < k; ++j) r.insert(pool[static_cast<std::size_t>(j)]);
            pairs.emplace_back(l, r);
        }
    } else {
        for_each_combination(std::span<const Vertex>(outside), o.ell, [&](const VertexSet& l) {
            std::vector<Vertex> rest;
            for (auto v : outside) {
                if (!l.contains(v)) rest.push_back(v);
            }
            for_each_combination(std::span<const Vertex>(rest), k - o.ell, [&](const VertexSet& r) {
                pairs.emplace_back(l, r);
                return true;
            });
            return true;
        });
    }
    out.min_coverage = -1;
    std::uint64_t tests = 0;
    for (const auto& [l, r] : pairs) {
        std::int64_t cover = 0;
        for (const auto& c : out.members) {
            if (++tests > o.budget.node_cap) {
                out.complete = false;
                break;
            }
            if (connector_path(h, o.ell, l, r, c)) ++cover;
        }
        ++out.pairs_examined;
        if (out.min_coverage < 0 || cover < out.min_coverage) {
            out.min_coverage = cover;
            out.worst_pair = std::make_pair(l, r);
        }
        if (!out.complete) break;
    }
    if (out.min_coverage < 0) out.min_coverage = 0;
    return out;
}

}  // namespace hamlab
