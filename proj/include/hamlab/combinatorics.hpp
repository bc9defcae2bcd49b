#pragma once

#include <boost/rational.hpp>

#include <cstdint>
#include <span>
#include <vector>

#include "hamlab/errors.hpp"
#include "hamlab/vertex_set.hpp"

namespace hamlab {

using Rational = boost::rational<std::int64_t>;

/// C(n, r) with C(n, r) = 0 for r < 0 or r > n; throws OverflowError past int64.
auto binomial(std::int64_t n, std::int64_t r) -> std::int64_t;

auto checked_mul(std::int64_t a, std::int64_t b) -> std::int64_t;
auto checked_add(std::int64_t a, std::int64_t b) -> std::int64_t;
auto checked_pow(std::int64_t base, int exponent) -> std::int64_t;

/// Counts membership tests against a cap; shared by every enumerating operation.
class Budget {
public:
    static constexpr std::uint64_t default_tests = 100'000'000;

    explicit Budget(std::uint64_t max_tests = default_tests) : max_(max_tests) {}

    /// Reserve `count` tests up front; throws BudgetExceeded if they do not fit.
    auto charge(std::uint64_t count) -> void;
    [[nodiscard]] auto used() const -> std::uint64_t { return used_; }
    [[nodiscard]] auto limit() const -> std::uint64_t { return max_; }

private:
    std::uint64_t max_;
    std::uint64_t used_ = 0;
};

/// Visit every r-subset of `pool` in lexicographic order (pool must be sorted).
/// The visitor returns false to stop early; the function returns false iff stopped.
template <typename F>
auto for_each_combination(std::span<const Vertex> pool, int r, F&& visit) -> bool {
    const int n = static_cast<int>(pool.size());
    if (r < 0 || r > n) return true;
    std::vector<int> idx(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) idx[static_cast<std::size_t>(i)] = i;
    VertexSet current;
    for (int i = 0; i < r; ++i) current.insert(pool[static_cast<std::size_t>(i)]);
    while (true) {
        if (!visit(static_cast<const VertexSet&>(current))) return false;
        int i = r - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - r + i) --i;
        if (i < 0) return true;
        current.erase(pool[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])]);
        ++idx[static_cast<std::size_t>(i)];
        current.insert(pool[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])]);
        for (int j = i + 1; j < r; ++j) {
            current.erase(pool[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])]);
            idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
            current.insert(pool[static_cast<std::size_t>(idx[static_cast<std::size_t>(j)])]);
        }
    }
}

/// Same as above over the members of a set.
template <typename F>
auto for_each_subset(const VertexSet& pool, int r, F&& visit) -> bool {
    const auto members = pool.members();
    return for_each_combination(std::span<const Vertex>(members), r, std::forward<F>(visit));
}

/// Every r-subset of {0..n-1}, in lexicographic order.
auto all_subsets(int n, int r) -> std::vector<VertexSet>;

/// Vertices 0..n-1 not in `excluded`, ascending.
auto complement_members(int n, const VertexSet& excluded) -> std::vector<Vertex>;

}  // namespace hamlab
