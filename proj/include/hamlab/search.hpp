#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hamlab/cycles.hpp"
#include "hamlab/hypergraph.hpp"

namespace hamlab {

struct SearchBudget {
    std::uint64_t node_cap = 200'000'000;
    double time_cap_seconds = 600.0;
    int threads = 1;
};

enum class SearchStatus { found, none, unknown };

auto status_name(SearchStatus s) -> std::string;

/// `none` is only reported when the search space was exhausted; hitting a cap gives `unknown`.
template <typename Witness>
struct SearchResult {
    SearchStatus status = SearchStatus::unknown;
    std::optional<Witness> witness;
    std::uint64_t nodes = 0;
    std::string reason;
};

/// Lowest-uncovered-vertex backtracking. Needs k | n and either an explicit
/// backend or n <= 20.
auto find_perfect_matching(const Hypergraph& h, const SearchBudget& budget = {}) -> SearchResult<Matching>;

/// Hamilton (ℓ,k−ℓ)-cycle; single-threaded runs return the lexicographically
/// least canonical witness (so does the parallel mode, which merges by branch order).
auto find_ham_cycle(const Hypergraph& h, int ell, const SearchBudget& budget = {}) -> SearchResult<SegCycle>;

/// Hamilton (ℓ,k−ℓ)-path with first segment L (size ℓ) and last segment R (size k−ℓ).
auto find_ham_path(const Hypergraph& h, int ell, const VertexSet& left, const VertexSet& right,
                   const SearchBudget& budget = {}) -> SearchResult<SegPath>;

/// Ordered split (R', L', R'', L'') of C with L R' L' R'' L'' R an (ℓ,k−ℓ)-path.
auto connector_path(const Hypergraph& h, int ell, const VertexSet& left, const VertexSet& right, const VertexSet& c)
    -> std::optional<SegPath>;

struct ConnectorCount {
    std::int64_t count = 0;
    bool complete = true;  ///< false: the cap was hit and `count` is a lower bound
    std::vector<VertexSet> samples;
    std::int64_t candidates_examined = 0;
};

/// Number of 2k-sets C ⊆ V∖(L∪R) that connect L to R.
auto count_connectors(const Hypergraph& h, int ell, const VertexSet& left, const VertexSet& right,
                      const SearchBudget& budget = {}, std::size_t max_samples = 4) -> ConnectorCount;

/// P is an (L,R)-absorber when V(P) ∪ L ∪ R carries an (ℓ,k−ℓ)-path with P's ends.
auto is_absorber(const Hypergraph& h, const SegPath& p, const VertexSet& left, const VertexSet& right,
                 const SearchBudget& budget = {}) -> SearchResult<SegPath>;

/// Two edges of H outside the spec's family meeting in 0 or ℓ vertices
/// (lexicographically first pair).
auto find_parity_pair(const Hypergraph& h, const ExtremalSpec& spec, int ell, const SearchBudget& budget = {})
    -> SearchResult<std::pair<VertexSet, VertexSet>>;

/// True when f(spec) = 1: no perfect matching and no Hamilton (ℓ,k−ℓ)-cycle exist.
auto parity_certificate(const ExtremalSpec& spec) -> bool;

}  // namespace hamlab
