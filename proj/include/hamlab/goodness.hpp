#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hamlab/combinatorics.hpp"
#include "hamlab/hypergraph.hpp"

namespace hamlab {

/// How far S is from its full degree in the parity graph B of the spec:
/// alpha_star = deg_{B∖H}(S) / C(n−|S|, k−|S|).
struct GoodnessReport {
    VertexSet set;
    Rational alpha_star;
    std::int64_t missing = 0;   ///< deg_{B∖H}(S)
    std::int64_t possible = 0;  ///< C(n−|S|, k−|S|)
};

auto goodness(const Hypergraph& h, const ExtremalSpec& spec, const VertexSet& s, Budget& budget) -> GoodnessReport;
auto goodness(const Hypergraph& h, const ExtremalSpec& spec, const VertexSet& s) -> GoodnessReport;

/// alpha_star <= alpha, decided without rounding the rational.
auto within(const Rational& alpha_star, double alpha) -> bool;

struct TypicalityReport {
    bool typical = true;
    std::optional<VertexSet> worst;  ///< subset with the largest alpha_star
    Rational worst_alpha;
};

/// Every non-empty subset of S is alpha-good.
auto typicality(const Hypergraph& h, const ExtremalSpec& spec, const VertexSet& s, double alpha, Budget& budget)
    -> TypicalityReport;
auto typicality(const Hypergraph& h, const ExtremalSpec& spec, const VertexSet& s, double alpha) -> TypicalityReport;

/// α′ = √(2^k α), the typicality threshold derived from α-goodness in the k-partite setting.
auto alpha_prime(int k, double alpha) -> double;
/// ε′ = √(k^k ε), the goodness threshold that all but ε′ n^j of the j-sets meet.
auto eps_prime(int k, double eps) -> double;

enum class ClosenessMode { exact, heuristic };

struct ClosenessReport {
    std::int64_t distance = 0;  ///< |H Δ B(A)| at the best A found
    VertexSet a;
    int eta = 1;
    ClosenessMode mode = ClosenessMode::exact;
    bool upper_bound_only = false;  ///< heuristic runs only bound the distance from above
    std::int64_t partitions_scanned = 0;
};

struct ClosenessOptions {
    ClosenessMode mode = ClosenessMode::exact;
    bool widen = false;  ///< exact mode: scan every |A| instead of |A| = ⌈n/2⌉
    std::uint64_t seed = 1;
    int restarts = 32;
    int threads = 1;
};

/// Distance from H to the nearest parity graph of type eta. Ties go to the
/// lexicographically least A. Exact mode needs n <= 16.
auto closeness(const Hypergraph& h, int eta, const ClosenessOptions& options, Budget& budget) -> ClosenessReport;
auto closeness(const Hypergraph& h, int eta, const ClosenessOptions& options = {}) -> ClosenessReport;

/// Degree and overlap profile of the bipartite graph between ℓ-sets and
/// (k−ℓ)-sets in which L ~ R iff L ∪ R ∈ H.
struct LinkBigraphReport {
    int n = 0;
    int k = 0;
    int ell = 0;
    double gamma = 0.0;
    std::int64_t big_n = 0;    ///< N = C(n, ℓ)
    std::int64_t big_n_r = 0;  ///< N′ = C(n, k−ℓ)
    std::vector<VertexSet> lefts;
    std::vector<VertexSet> rights;
    std::vector<std::int64_t> deg_left;
    std::vector<std::int64_t> deg_right;
    std::int64_t min_deg_left = 0;
    std::int64_t min_deg_right = 0;
    bool left_degree_bound = false;   ///< every deg(L) > (1/2 − γ/2) N′
    bool right_degree_bound = false;  ///< every deg(R) > (1/2 − γ/2) N
    std::vector<std::int64_t> overlap_partners;  ///< per L: #L′ with |N(L) ∩ N(L′)| >= γN′
    std::int64_t min_overlap_partners = 0;
    std::int64_t heavy_rights = 0;  ///< #R with deg(R) >= (1/2 + γ) N
    bool property_i = false;
    bool property_ii = false;
};

auto link_bigraph_probe(const Hypergraph& h, int ell, double gamma, Budget& budget) -> LinkBigraphReport;
auto link_bigraph_probe(const Hypergraph& h, int ell, double gamma) -> LinkBigraphReport;

}  // namespace hamlab
