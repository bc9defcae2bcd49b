#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "hamlab/combinatorics.hpp"
#include "hamlab/vertex_set.hpp"

namespace hamlab {

/// Parity-type extremal family on a fixed bipartition.
///
/// The edge family is {e : |e ∩ A| ≡ eta (mod 2)}: eta = 1 is the
/// odd-intersection family, eta = 0 its complement. B is implicit as the
/// complement of A in 0..n-1.
struct ExtremalSpec {
    int n = 0;
    int k = 0;
    VertexSet a;
    int eta = 1;

    [[nodiscard]] auto a_size() const -> int { return a.size(); }
    [[nodiscard]] auto b_set() const -> VertexSet { return VertexSet::prefix(n) - a; }
    /// |S ∩ A| mod 2.
    [[nodiscard]] auto eta_of(const VertexSet& s) const -> int { return s.intersection_size(a) & 1; }
    [[nodiscard]] auto contains(const VertexSet& e) const -> bool { return eta_of(e) == eta; }

    friend auto operator==(const ExtremalSpec&, const ExtremalSpec&) -> bool = default;
};

/// What an implicit backend's predicate represents.
enum class Structure {
    explicit_edges,
    complete,
    extremal,
    kpartite_complete,
    kpartite_restricted,
    complement_of,
    restriction_of,
    predicate,
};

auto structure_name(Structure s) -> std::string;

using MembershipPredicate = std::function<bool(const VertexSet&)>;

/// k-uniform hypergraph on vertices 0..n-1.
///
/// Either explicit (canonical sorted edge list plus a hash index) or implicit
/// (a membership predicate tagged with the structure it encodes). Values are
/// immutable after construction and cheap to copy; all queries are const.
class Hypergraph {
public:
    static auto from_edges(int n, int k, std::vector<VertexSet> edges) -> Hypergraph;
    static auto complete(int n, int k) -> Hypergraph;
    static auto empty(int n, int k) -> Hypergraph;
    static auto extremal(const ExtremalSpec& spec) -> Hypergraph;
    /// Complete k-partite k-graph on the given parts (each edge meets every part once).
    static auto kpartite_complete(int n, std::vector<std::vector<Vertex>> parts) -> Hypergraph;
    /// Sub-family of the complete k-partite k-graph cut out by `keep`.
    static auto kpartite_restricted(int n, std::vector<std::vector<Vertex>> parts, MembershipPredicate keep) -> Hypergraph;
    static auto implicit(int n, int k, Structure kind, MembershipPredicate predicate) -> Hypergraph;

    [[nodiscard]] auto n() const -> int { return n_; }
    [[nodiscard]] auto k() const -> int { return k_; }
    [[nodiscard]] auto is_explicit() const -> bool { return kind_ == Structure::explicit_edges; }
    [[nodiscard]] auto structure() const -> Structure { return kind_; }
    [[nodiscard]] auto extremal_spec() const -> const std::optional<ExtremalSpec>& { return spec_; }
    [[nodiscard]] auto parts() const -> const std::vector<std::vector<Vertex>>& { return parts_; }

    /// Membership of a k-subset of 0..n-1. Sets of the wrong size are never edges.
    [[nodiscard]] auto contains(const VertexSet& e) const -> bool;

    /// Canonical edge list (explicit backend only).
    [[nodiscard]] auto edges() const -> const std::vector<VertexSet>&;

    [[nodiscard]] auto predicate() const -> MembershipPredicate;

private:
    Hypergraph(int n, int k, Structure kind) : n_(n), k_(k), kind_(kind) {}

    int n_ = 0;
    int k_ = 0;
    Structure kind_ = Structure::explicit_edges;
    std::shared_ptr<const std::vector<VertexSet>> edges_;
    std::shared_ptr<const std::unordered_set<VertexSet, VertexSetHash>> index_;
    MembershipPredicate predicate_;
    std::optional<ExtremalSpec> spec_;
    std::vector<std::vector<Vertex>> parts_;
};

/// Induced subhypergraph on U, relabelled 0..|U|-1 by the order-preserving map.
struct Restriction {
    Hypergraph graph;
    std::vector<Vertex> labels;  ///< new label -> original label

    [[nodiscard]] auto to_original(const VertexSet& s) const -> VertexSet;
};

/// N_H(S): all (k-|S|)-sets T disjoint from S with S ∪ T ∈ H, in lexicographic order.
auto link(const Hypergraph& h, const VertexSet& s, Budget& budget) -> std::vector<VertexSet>;
auto link(const Hypergraph& h, const VertexSet& s) -> std::vector<VertexSet>;

/// deg_H(S) = |N_H(S)|.
auto degree(const Hypergraph& h, const VertexSet& s, Budget& budget) -> std::int64_t;
auto degree(const Hypergraph& h, const VertexSet& s) -> std::int64_t;

/// δ_ℓ(H); ℓ = 0 gives the edge count.
auto min_ell_degree(const Hypergraph& h, int ell, Budget& budget) -> std::int64_t;
auto min_ell_degree(const Hypergraph& h, int ell) -> std::int64_t;

auto edge_count(const Hypergraph& h, Budget& budget) -> std::int64_t;

auto restrict_to(const Hypergraph& h, const VertexSet& u) -> Restriction;

/// C([n], k) \ H. Extremal backends flip eta, complete <-> empty.
auto complement(const Hypergraph& h) -> Hypergraph;

/// Explicit copy of an implicit hypergraph (enumerates all C(n, k) sets).
auto materialize(const Hypergraph& h, Budget& budget) -> Hypergraph;
auto materialize(const Hypergraph& h) -> Hypergraph;

/// Visit every edge in lexicographic order; enumeration charged to the budget for implicit backends.
auto for_each_edge(const Hypergraph& h, Budget& budget, const std::function<bool(const VertexSet&)>& visit) -> void;

}  // namespace hamlab
