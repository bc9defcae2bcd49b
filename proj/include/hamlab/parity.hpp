#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hamlab/cycles.hpp"
#include "hamlab/goodness.hpp"
#include "hamlab/hypergraph.hpp"

namespace hamlab {

struct BadVertexReport {
    double alpha = 0.0;
    VertexSet v0;        ///< vertices that are not alpha-good
    VertexSet v0_prime;  ///< vertices of v0 that are not 1/4-good
    ExtremalSpec relocated;  ///< A1 = (A ∖ V0′) ∪ (B ∩ V0′), same eta
};

/// Find the bad vertices of H with respect to the spec and move the very
/// bad ones across the bipartition.
auto relocate_bad(const Hypergraph& h, const ExtremalSpec& spec, double alpha, double move_threshold, Budget& budget)
    -> BadVertexReport;
auto relocate_bad(const Hypergraph& h, const ExtremalSpec& spec, double alpha) -> BadVertexReport;

/// Memoized alpha_star lookups against one spec.
class GoodnessCache {
public:
    GoodnessCache(const Hypergraph& h, const ExtremalSpec& spec, Budget& budget) : h_(h), spec_(spec), budget_(budget) {}
    auto alpha(const VertexSet& s) -> Rational;
    auto good(const VertexSet& s, double threshold) -> bool { return within(alpha(s), threshold); }

private:
    const Hypergraph& h_;
    const ExtremalSpec& spec_;
    Budget& budget_;
    std::unordered_map<VertexSet, Rational, VertexSetHash> memo_;
};

struct CoverResult {
    SegPath path;
    bool empty = false;  ///< M was empty; no path
};

/// Path of exactly 2k|M| − ℓ vertices in H ∩ B1 covering M and avoiding U,
/// whose two end (k−ℓ)-sets are eps2-good and have eta = parity_choice.
/// Throws Error naming the vertex whose gadget could not be built.
auto cover_bad_vertices(const Hypergraph& h, const ExtremalSpec& spec1, int ell, const VertexSet& m,
                        const VertexSet& u, int parity_choice, double eps2, Budget& budget) -> CoverResult;

struct ParityConfig {
    double alpha = 0.01;              ///< goodness threshold defining V0
    double move_threshold = 0.25;     ///< vertices worse than this switch sides
    double case_threshold = 0.2;      ///< "not 1/5-good" trigger of case 2.1
    std::optional<double> eps2;       ///< default min(1, √(2 k^k alpha))
    double size_fraction = 0.05;      ///< reported bound on |V(P)| / n
    bool check_degree = false;        ///< evaluate δ_ℓ(H) > δ(n,k,ℓ) (expensive)
};

struct ParityFixResult {
    SegPath path;
    VertexSet removed;  ///< V(P) ∖ (L ∪ R)
    std::string case_tag;  ///< "case1", "case2.1" or "case2.2"
    BadVertexReport bad;
    ExtremalSpec residual;  ///< on V ∖ removed, relabelled 0..|V′|−1
    std::vector<Vertex> residual_labels;  ///< new label -> original
    int residual_f = 0;
    int wrong_edges_in_view = 0;  ///< B̄1 edges in the path's matching view
    bool path_valid = false;
    bool ends_in_family = false;  ///< L ∪ R ∈ B1
    bool within_size_bound = false;
    double eps2 = 0.0;
    std::optional<bool> degree_precondition;
    std::vector<std::string> audit;
};

/// Build the parity-fixing path: after it is removed (keeping its ends) the
/// remaining parity graph has f = 0. Throws Error("parity obstruction") when
/// H has no edge of the wrong parity at all.
auto parity_fix(const Hypergraph& h, const ExtremalSpec& spec, int ell, const ParityConfig& config, Budget& budget)
    -> ParityFixResult;
auto parity_fix(const Hypergraph& h, const ExtremalSpec& spec, int ell, const ParityConfig& config = {})
    -> ParityFixResult;

struct PlantedInstance {
    Hypergraph graph;
    std::vector<std::pair<VertexSet, VertexSet>> pairs;
};

/// `base` plus `pairs` seeded pairs of edges outside the spec's family; each
/// pair is disjoint or meets in exactly ell vertices, pairs use fresh vertices.
auto plant_wrong_pairs(const Hypergraph& base, const ExtremalSpec& spec, int pairs, int ell, std::uint64_t seed)
    -> PlantedInstance;

}  // namespace hamlab
