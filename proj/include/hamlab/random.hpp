#pragma once

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "hamlab/hypergraph.hpp"

namespace hamlab {

/// splitmix64 finalizer; used for sub-seeds and hash-keyed predicates.
constexpr auto mix64(std::uint64_t x) -> std::uint64_t {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Seed for stream `index` derived from a master seed.
constexpr auto sub_seed(std::uint64_t seed, std::uint64_t index) -> std::uint64_t {
    return mix64(mix64(seed) ^ mix64(index + 0x632be59bd9b4e019ULL));
}

/// Reproducible generator: mt19937_64 (its output sequence is fixed by the
/// C++ standard) with bounded draws and shuffles implemented here, since the
/// standard distributions are implementation-defined.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed), seed_(seed) {}

    auto next() -> std::uint64_t { return engine_(); }

    /// Uniform integer in [0, bound), bound > 0 (Lemire's multiply-shift with rejection).
    auto below(std::uint64_t bound) -> std::uint64_t {
        auto x = next();
        auto m = static_cast<unsigned __int128>(x) * bound;
        auto low = static_cast<std::uint64_t>(m);
        if (low < bound) {
            const std::uint64_t threshold = (0 - bound) % bound;
            while (low < threshold) {
                x = next();
                m = static_cast<unsigned __int128>(x) * bound;
                low = static_cast<std::uint64_t>(m);
            }
        }
        return static_cast<std::uint64_t>(m >> 64);
    }

    /// Uniform double in [0, 1) with 53 random bits.
    auto uniform() -> double { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    auto bernoulli(double p) -> bool { return uniform() < p; }

    template <typename T>
    auto shuffle(std::vector<T>& items) -> void {
        for (std::size_t i = items.size(); i > 1; --i) {
            const auto j = static_cast<std::size_t>(below(i));
            std::swap(items[i - 1], items[j]);
        }
    }

    template <typename T>
    auto pick(const std::vector<T>& items) -> const T& {
        return items[static_cast<std::size_t>(below(items.size()))];
    }

    [[nodiscard]] auto seed() const -> std::uint64_t { return seed_; }

private:
    std::mt19937_64 engine_;
    std::uint64_t seed_;
};

/// Deterministic pseudo-random value in [0, 1) attached to a vertex set.
auto set_hash_unit(std::uint64_t seed, const VertexSet& s) -> double;

/// Edges of `base` that survive deletion with probability `rate`, decided by
/// a hash of (seed, edge); never materialized.
auto delete_random_edges(const Hypergraph& base, double rate, std::uint64_t seed) -> Hypergraph;

/// k-sets of 0..n-1 kept independently with probability `density` (hash keyed).
auto random_family(int n, int k, double density, std::uint64_t seed) -> Hypergraph;

/// Sub-family of the complete k-partite k-graph kept with probability `density`.
auto random_kpartite(int n, const std::vector<std::vector<Vertex>>& parts, double density, std::uint64_t seed) -> Hypergraph;

}  // namespace hamlab
