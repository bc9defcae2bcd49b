#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hamlab/combinatorics.hpp"
#include "hamlab/cycles.hpp"
#include "hamlab/hypergraph.hpp"
#include "hamlab/random.hpp"

namespace hamlab {

// ---------------------------------------------------------------------------
// Partition planning

/// Split of V ∖ (L ∪ R) into an X-box, a Y-box and a short connecting path E.
/// Counts are always filled; the concrete parts and E only after realization.
struct PartitionPlan {
    int case_id = 0;  ///< 1..4; even ids use a non-empty E
    int k = 0;
    int m = 0;   ///< |V ∖ (L ∪ R)| / k
    int k1 = 0;
    int s = 0;   ///< a1 − k1·m
    int eta = 1;
    int a1 = 0;  ///< |A ∖ (L ∪ R)|
    int x = 0;   ///< X-part size
    int y = 0;   ///< Y-part size
    int e_len = 0;  ///< 0, k or 2k
    int e_a = 0;    ///< |E ∩ A|
    int x_parts_in_a = 0;
    int y_parts_in_a = 0;

    std::vector<VertexSet> x_parts;  ///< A-parts first, then B-parts
    std::vector<VertexSet> y_parts;
    SegPath e;

    [[nodiscard]] auto x_parts_in_b() const -> int { return k - x_parts_in_a; }
    [[nodiscard]] auto y_parts_in_b() const -> int { return k - y_parts_in_a; }
};

/// Every admissible plan, E-free ones first, then |E| = k, then |E| = 2k, each
/// by increasing |E ∩ A|. Throws PreconditionError("parity infeasible") when
/// a1 ≢ eta·m (mod 2).
auto plan_options(int k, int m, int a1, int eta, std::optional<int> k1 = {}) -> std::vector<PartitionPlan>;
auto plan_partition(int k, int m, int a1, int eta, std::optional<int> k1 = {}) -> PartitionPlan;
auto plan_partition(const ExtremalSpec& spec, const VertexSet& removed, std::optional<int> k1 = {}) -> PartitionPlan;

/// Checks a realized plan: exact partition of V ∖ removed, equal part sizes,
/// parts inside A or inside B, and box edges of type eta (sampled). Returns
/// the violated invariants, empty when all hold.
auto check_plan(const PartitionPlan& plan, const ExtremalSpec& spec, const VertexSet& removed, std::uint64_t seed = 1,
                int samples = 1000) -> std::vector<std::string>;

// ---------------------------------------------------------------------------
// Hall matchings

struct HallResult {
    bool perfect = false;
    std::vector<int> match;       ///< left -> right, −1 when unmatched
    std::vector<int> deficient;   ///< left set S with |N(S)| < |S| when not perfect
    std::vector<int> neighbours;  ///< N(S)
};

/// Maximum matching by augmenting paths, vertices tried in index order.
/// "Perfect" means every left vertex is matched.
auto hall_matching(int right_count, const std::vector<std::vector<int>>& adjacency) -> HallResult;

/// Raised when no perfect matching of X_k′ into the slots exists.
class HallFailure : public Error {
public:
    HallFailure(const std::string& what, std::vector<Vertex> deficient, int neighbour_count)
        : Error(what), deficient_(std::move(deficient)), neighbour_count_(neighbour_count) {}
    [[nodiscard]] auto deficient() const -> const std::vector<Vertex>& { return deficient_; }
    [[nodiscard]] auto neighbour_count() const -> int { return neighbour_count_; }

private:
    std::vector<Vertex> deficient_;
    int neighbour_count_;
};

// ---------------------------------------------------------------------------
// Hamilton paths in k-partite k-graphs

/// A k-partite k-graph is any Hypergraph carrying parts (see
/// Hypergraph::kpartite_restricted); all parts must have the same size.
auto is_transversal(const Hypergraph& f, const VertexSet& s) -> bool;

/// deg_{K∖F}(J): completions of the partial transversal J to a full
/// transversal that are missing from F.
auto box_deficit(const Hypergraph& f, const VertexSet& j, Budget& budget) -> std::int64_t;

/// J is alpha-good when its deficit is at most alpha·m^{k−|J|}; typical when
/// every non-empty subset is.
auto box_typical(const Hypergraph& f, const VertexSet& j, double alpha, Budget& budget) -> bool;

struct KPathConfig {
    double alpha = 0.02;
    int n0 = 4;            ///< below this part size the exhaustive search takes over
    int retries = 64;
    std::optional<double> spine_fraction;  ///< default 1/(128k)
    int sample_tries = 256;                ///< draws per gadget or connecting set
    std::int64_t dfs_nodes = 2'000'000;
};

struct KPathStats {
    int attempts = 0;
    int relaxations = 0;   ///< spine thresholds widened after a failed recursion
    int fallbacks = 0;     ///< boxes finished by exhaustive search
    int combined_matchings = 0;
};

/// Hamilton (ℓ,k−ℓ)-path of F with ends exactly (L, R). Throws HallFailure
/// with a deficiency witness when the final matching step cannot succeed,
/// Error otherwise.
auto build_ham_path_kpartite(const Hypergraph& f, int ell, const VertexSet& left, const VertexSet& right, Rng& rng,
                             Budget& budget, const KPathConfig& config = {}, KPathStats* stats = nullptr) -> SegPath;

/// Hamilton path alternating between the two parts of a bipartite 2-graph,
/// from `a` in one part to `b` in the other.
auto ham_path_bipartite_base(const Hypergraph& g, Vertex a, Vertex b, Budget& budget,
                             std::int64_t node_cap = 2'000'000) -> SegPath;

// ---------------------------------------------------------------------------
// Tight paths and path covers

struct TightPath {
    std::vector<Vertex> vertices;
    std::int64_t edges = 0;  ///< |F|
    double required = 0.0;   ///< c·m
};

/// Tight path (every k consecutive vertices an edge) on at least c·m vertices,
/// m the largest part. Throws PreconditionError when |F| < c·m^k.
auto greedy_tight_path(const Hypergraph& f, double c, Budget& budget) -> TightPath;

struct PathCover {
    std::vector<SegPath> paths;
    int uncovered = 0;
    double uncovered_bound = 0.0;  ///< k·ε·m
    double count_bound = 0.0;      ///< k / ((d − 2ε) ε)
    bool stalled = false;          ///< a sub-box fell below density d − ε
    bool uncovered_ok = false;
    bool count_ok = false;
};

/// Greedy cover of a k-tuple by vertex-disjoint (ℓ,k−ℓ)-paths cut from tight paths.
auto path_cover_tuple(const Hypergraph& f, int ell, double eps, double d, Budget& budget) -> PathCover;

// ---------------------------------------------------------------------------
// The extremal pipeline

struct StabilityConfig {
    KPathConfig kpath;
    int bridge_tries = 4096;
    bool parallel = true;
};

struct StabilityResult {
    SegPath path;
    PartitionPlan plan;
    VertexSet l1_star, r1_star, l2_star, r2_star;
    bool bridges_typical = true;
    bool valid = false;
    std::vector<std::string> log;
};

/// Hamilton (ℓ,k−ℓ)-path of G with ends (L, R) when G is close to the parity
/// graph of `spec` and f = 0. Throws Error("parity obstruction") for f = 1.
auto stability_ham_path(const Hypergraph& g, const ExtremalSpec& spec, int ell, const VertexSet& left,
                        const VertexSet& right, Rng& rng, Budget& budget, const StabilityConfig& config = {})
    -> StabilityResult;

/// Lexicographically first disjoint (L, R) with |L| = ℓ and L ∪ R in G and in B.
auto default_ends(const Hypergraph& g, const ExtremalSpec& spec, int ell) -> std::pair<VertexSet, VertexSet>;

}  // namespace hamlab
