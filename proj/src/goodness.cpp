#include "hamlab/goodness.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <future>
#include <unordered_map>

#include "hamlab/random.hpp"

namespace hamlab {

auto goodness(const Hypergraph& h, const ExtremalSpec& spec, const VertexSet& s, Budget& budget) -> GoodnessReport {
    require(spec.n == h.n() && spec.k == h.k(), "spec and hypergraph disagree on n or k");
    const int n = h.n();
    const int k = h.k();
    const int j = s.size();
    require(j <= k - 1, "goodness needs |S| <= k-1");
    require(j == 0 || s.max() < n, "S must lie in 0..n-1");
    GoodnessReport out;
    out.set = s;
    out.possible = binomial(n - j, k - j);
    budget.charge(static_cast<std::uint64_t>(out.possible));
    const auto pool = complement_members(n, s);
    for_each_combination(std::span<const Vertex>(pool), k - j, [&](const VertexSet& t) {
        const auto e = s | t;
        if (spec.contains(e) && !h.contains(e)) ++out.missing;
        return true;
    });
    out.alpha_star = out.possible == 0 ? Rational(0) : Rational(out.missing, out.possible);
    return out;
}

auto goodness(const Hypergraph& h, const ExtremalSpec& spec, const VertexSet& s) -> GoodnessReport {
    Budget b;
    return goodness(h, spec, s, b);
}

auto within(const Rational& alpha_star, double alpha) -> bool {
    return static_cast<long double>(alpha_star.numerator()) <=
           static_cast<long double>(alpha) * static_cast<long double>(alpha_star.denominator());
}

auto typicality(const Hypergraph& h, const ExtremalSpec& spec, const VertexSet& s, double alpha, Budget& budget)
    -> TypicalityReport {
    TypicalityReport out;
    out.worst_alpha = Rational(0);
    for (int r = 1; r <= s.size(); ++r) {
        for_each_subset(s, r, [&](const VertexSet& sub) {
            const auto g = goodness(h, spec, sub, budget);
            if (!out.worst || g.alpha_star > out.worst_alpha) {
                out.worst = sub;
                out.worst_alpha = g.alpha_star;
            }
            if (!within(g.alpha_star, alpha)) out.typical = false;
            return true;
        });
    }
    return out;
}

auto typicality(const Hypergraph& h, const ExtremalSpec& spec, const VertexSet& s, double alpha) -> TypicalityReport {
    Budget b;
    return typicality(h, spec, s, alpha, b);
}

auto alpha_prime(int k, double alpha) -> double { return std::sqrt(std::ldexp(alpha, k)); }

auto eps_prime(int k, double eps) -> double { return std::sqrt(std::pow(static_cast<double>(k), k) * eps); }

// ---------------------------------------------------------------- closeness

namespace {

auto parity_family_size(int n, int k, int a, int eta) -> std::int64_t {
    std::int64_t total = 0;
    for (int i = eta; i <= k; i += 2) total = checked_add(total, checked_mul(binomial(a, i), binomial(n - a, k - i)));
    return total;
}

auto explicit_edges(const Hypergraph& h, Budget& budget) -> std::vector<VertexSet> {
    if (h.is_explicit()) return h.edges();
    return materialize(h, budget).edges();
}

auto closeness_exact(const Hypergraph& h, int eta, const ClosenessOptions& opt, Budget& budget) -> ClosenessReport {
    const int n = h.n();
    const int k = h.k();
    require(n <= 16, "exact closeness scans bipartitions and needs n <= 16");
    std::vector<std::uint32_t> edges;
    for (const auto& e : explicit_edges(h, budget)) edges.push_back(static_cast<std::uint32_t>(e.word(0)));
    const auto h_size = static_cast<std::int64_t>(edges.size());

    std::vector<VertexSet> candidates;
    const auto all = complement_members(n, {});
    const int lo = opt.widen ? 0 : (n + 1) / 2;
    const int hi = opt.widen ? n : (n + 1) / 2;
    for (int a = lo; a <= hi; ++a) {
        for_each_combination(std::span<const Vertex>(all), a, [&](const VertexSet& s) {
            candidates.push_back(s);
            return true;
        });
    }
    if (opt.widen) std::sort(candidates.begin(), candidates.end());
    budget.charge(static_cast<std::uint64_t>(candidates.size()) * static_cast<std::uint64_t>(std::max<std::int64_t>(h_size, 1)));

    std::vector<std::int64_t> dist(candidates.size());
    auto evaluate = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) {
            const auto mask = static_cast<std::uint32_t>(candidates[i].word(0));
            std::int64_t agree = 0;
            for (auto e : edges) {
                if ((std::popcount(e & mask) & 1) == eta) ++agree;
            }
            dist[i] = h_size + parity_family_size(n, k, candidates[i].size(), eta) - 2 * agree;
        }
    };
    const auto workers = static_cast<std::size_t>(std::max(1, opt.threads));
    const auto chunk = (candidates.size() + workers - 1) / workers;
    std::vector<std::future<void>> jobs;
    for (std::size_t b = 0; b < candidates.size(); b += chunk) {
        jobs.push_back(std::async(std::launch::async, evaluate, b, std::min(candidates.size(), b + chunk)));
    }
    for (auto& j : jobs) j.get();

    ClosenessReport out;
    out.eta = eta;
    out.mode = ClosenessMode::exact;
    out.partitions_scanned = static_cast<std::int64_t>(candidates.size());
    const auto best = std::min_element(dist.begin(), dist.end());  // first minimum = lex-least A
    out.distance = *best;
    out.a = candidates[static_cast<std::size_t>(best - dist.begin())];
    return out;
}

auto closeness_heuristic(const Hypergraph& h, int eta, const ClosenessOptions& opt, Budget& budget) -> ClosenessReport {
    const int n = h.n();
    const int k = h.k();
    const auto edges = explicit_edges(h, budget);
    const auto h_size = static_cast<std::int64_t>(edges.size());
    const int a_size = (n + 1) / 2;
    const auto family = parity_family_size(n, k, a_size, eta);
    std::vector<std::vector<Vertex>> members;
    for (const auto& e : edges) members.push_back(e.members());

    ClosenessReport out;
    out.eta = eta;
    out.mode = ClosenessMode::heuristic;
    out.upper_bound_only = true;
    out.distance = -1;

    const auto un = static_cast<std::size_t>(n);
    for (int r = 0; r < std::max(1, opt.restarts); ++r) {
        Rng rng(sub_seed(opt.seed, static_cast<std::uint64_t>(r)));
        std::vector<Vertex> perm(un);
        for (Vertex v = 0; v < n; ++v) perm[static_cast<std::size_t>(v)] = v;
        rng.shuffle(perm);
        std::vector<char> in_a(un, 0);
        for (int i = 0; i < a_size; ++i) in_a[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = 1;

        std::int64_t agree = 0;
        while (true) {
            budget.charge(static_cast<std::uint64_t>(std::max<std::int64_t>(h_size, 1)));
            // flip[e] = change in agreement if e's parity flips.
            std::vector<std::int64_t> gain(un, 0);
            std::vector<std::int64_t> pair(un * un, 0);
            agree = 0;
            for (const auto& e : members) {
                int c = 0;
                for (auto v : e) c += in_a[static_cast<std::size_t>(v)];
                const bool ok = (c & 1) == eta;
                agree += ok ? 1 : 0;
                const int flip = ok ? -1 : 1;
                for (std::size_t i = 0; i < e.size(); ++i) {
                    const auto u = static_cast<std::size_t>(e[i]);
                    gain[u] += flip;
                    for (std::size_t j = i + 1; j < e.size(); ++j) {
                        const auto w = static_cast<std::size_t>(e[j]);
                        pair[u * un + w] += flip;
                        pair[w * un + u] += flip;
                    }
                }
            }
            std::int64_t best = 0;
            std::size_t best_a = 0;
            std::size_t best_b = 0;
            for (std::size_t x = 0; x < un; ++x) {
                if (!in_a[x]) continue;
                for (std::size_t y = 0; y < un; ++y) {
                    if (in_a[y]) continue;
                    const auto d = gain[x] + gain[y] - 2 * pair[x * un + y];
                    if (d > best) {
                        best = d;
                        best_a = x;
                        best_b = y;
                    }
                }
            }
            if (best <= 0) break;
            in_a[best_a] = 0;
            in_a[best_b] = 1;
        }
        VertexSet a;
        for (std::size_t v = 0; v < un; ++v) {
            if (in_a[v]) a.insert(static_cast<Vertex>(v));
        }
        const auto d = h_size + family - 2 * agree;
        ++out.partitions_scanned;
        if (out.distance < 0 || d < out.distance || (d == out.distance && a < out.a)) {
            out.distance = d;
            out.a = a;
        }
    }
    return out;
}

}  // namespace

auto closeness(const Hypergraph& h, int eta, const ClosenessOptions& options, Budget& budget) -> ClosenessReport {
    require(eta == 0 || eta == 1, "eta must be 0 or 1");
    if (options.mode == ClosenessMode::exact) return closeness_exact(h, eta, options, budget);
    return closeness_heuristic(h, eta, options, budget);
}

auto closeness(const Hypergraph& h, int eta, const ClosenessOptions& options) -> ClosenessReport {
    Budget b;
    return closeness(h, eta, options, b);
}

// -------------------------------------------------------------- link bigraph

auto link_bigraph_probe(const Hypergraph& h, int ell, double gamma, Budget& budget) -> LinkBigraphReport {
    const int n = h.n();
    const int k = h.k();
    require(ell >= 1 && ell <= k - 1, "link bigraph needs 1 <= ell <= k-1");
    LinkBigraphReport out;
    out.n = n;
    out.k = k;
    out.ell = ell;
    out.gamma = gamma;
    out.lefts = all_subsets(n, ell);
    out.rights = all_subsets(n, k - ell);
    out.big_n = static_cast<std::int64_t>(out.lefts.size());
    out.big_n_r = static_cast<std::int64_t>(out.rights.size());
    budget.charge(static_cast<std::uint64_t>(checked_mul(out.big_n, out.big_n_r)));

    std::unordered_map<VertexSet, std::size_t, VertexSetHash> right_index;
    for (std::size_t i = 0; i < out.rights.size(); ++i) right_index.emplace(out.rights[i], i);
    const std::size_t words = (out.rights.size() + 63) / 64;
    std::vector<std::vector<std::uint64_t>> adj(out.lefts.size(), std::vector<std::uint64_t>(words, 0));
    out.deg_left.assign(out.lefts.size(), 0);
    out.deg_right.assign(out.rights.size(), 0);
    for (std::size_t i = 0; i < out.lefts.size(); ++i) {
        const auto& l = out.lefts[i];
        const auto pool = complement_members(n, l);
        for_each_combination(std::span<const Vertex>(pool), k - ell, [&](const VertexSet& r) {
            if (!h.contains(l | r)) return true;
            const auto j = right_index.at(r);
            adj[i][j / 64] |= std::uint64_t{1} << (j % 64);
            ++out.deg_left[i];
            ++out.deg_right[j];
            return true;
        });
    }
    out.min_deg_left = *std::min_element(out.deg_left.begin(), out.deg_left.end());
    out.min_deg_right = *std::min_element(out.deg_right.begin(), out.deg_right.end());
    const auto big_n = static_cast<double>(out.big_n);
    const auto big_n_r = static_cast<double>(out.big_n_r);
    out.left_degree_bound = static_cast<double>(out.min_deg_left) > (0.5 - gamma / 2) * big_n_r;
    out.right_degree_bound = static_cast<double>(out.min_deg_right) > (0.5 - gamma / 2) * big_n;

    out.overlap_partners.assign(out.lefts.size(), 0);
    for (std::size_t i = 0; i < adj.size(); ++i) {
        for (std::size_t j = 0; j < adj.size(); ++j) {
            std::int64_t common = 0;
            for (std::size_t w = 0; w < words; ++w) common += std::popcount(adj[i][w] & adj[j][w]);
            if (static_cast<double>(common) >= gamma * big_n_r) ++out.overlap_partners[i];
        }
    }
    out.min_overlap_partners = *std::min_element(out.overlap_partners.begin(), out.overlap_partners.end());
    for (auto d : out.deg_right) {
        if (static_cast<double>(d) >= (0.5 + gamma) * big_n) ++out.heavy_rights;
    }
    out.property_i = static_cast<double>(out.min_overlap_partners) >= (0.5 + gamma) * big_n;
    out.property_ii = static_cast<double>(out.heavy_rights) >= 2 * gamma * big_n_r;
    return out;
}

auto link_bigraph_probe(const Hypergraph& h, int ell, double gamma) -> LinkBigraphReport {
    Budget b;
    return link_bigraph_probe(h, ell, gamma, b);
}

}  // namespace hamlab
