#pragma once

#include <string>
#include <utility>
#include <vector>

#include "hamlab/hypergraph.hpp"

namespace hamlab {

/// (ℓ,k−ℓ)-path: consecutive segments alternate between sizes ℓ and k−ℓ and
/// every two consecutive segments form an edge. Ends are the first and last
/// segment.
struct SegPath {
    std::vector<VertexSet> segments;
    int ell = 0;

    [[nodiscard]] auto vertices() const -> VertexSet;
    [[nodiscard]] auto vertex_count() const -> int;
    [[nodiscard]] auto edge_count() const -> int { return segments.empty() ? 0 : static_cast<int>(segments.size()) - 1; }
    [[nodiscard]] auto edge(int i) const -> VertexSet;
    [[nodiscard]] auto reversed() const -> SegPath;

    friend auto operator==(const SegPath&, const SegPath&) -> bool = default;
};

/// Cyclic block list L_0, R_0, ..., L_{t-1}, R_{t-1} with |L_i| = ℓ, |R_i| = k−ℓ.
struct SegCycle {
    std::vector<VertexSet> blocks;
    int ell = 0;

    [[nodiscard]] auto t() const -> int { return static_cast<int>(blocks.size()) / 2; }
    [[nodiscard]] auto left(int i) const -> const VertexSet& { return blocks[static_cast<std::size_t>(2 * i)]; }
    [[nodiscard]] auto right(int i) const -> const VertexSet& { return blocks[static_cast<std::size_t>(2 * i + 1)]; }
    [[nodiscard]] auto vertices() const -> VertexSet;

    friend auto operator==(const SegCycle&, const SegCycle&) -> bool = default;
};

using Matching = std::vector<VertexSet>;

/// Outcome of a validator. `kind` names the first violated rule ("size",
/// "range", "disjointness", "edge", "coverage", "degenerate") and `index` the
/// offending segment/edge/vertex.
struct ValidationReport {
    bool ok = true;
    std::string kind;
    int index = -1;
    std::string message;

    explicit operator bool() const { return ok; }
};

auto validate_path(const Hypergraph& h, const SegPath& p) -> ValidationReport;
auto validate_cycle(const Hypergraph& h, const SegCycle& c, bool hamilton) -> ValidationReport;

/// Pairwise disjoint edges of H; `perfect` additionally demands they cover 0..n-1.
auto validate_matching(const Hypergraph& h, const Matching& m, bool perfect) -> ValidationReport;

/// M1 = {L_i ∪ R_i}, M2 = {R_i ∪ L_{i+1}}. Requires t >= 2.
auto cycle_to_matchings(const SegCycle& c) -> std::pair<Matching, Matching>;

/// Rotate so L_0 holds the smallest L-vertex, then pick the orientation with R_0 < R_{t-1}.
auto canonicalize(const SegCycle& c) -> SegCycle;

/// The 2t blocks read from block `start` onwards, as a path.
auto cut_cycle(const SegCycle& c, int start) -> SegPath;

/// Odd-position matching view of a path: {P_0 ∪ P_1, P_2 ∪ P_3, ...}.
auto path_matching_view(const SegPath& p) -> Matching;

/// Σ_{e∈M} |e ∩ A| for a matching.
auto intersection_total(const Matching& m, const VertexSet& a) -> int;

}  // namespace hamlab
