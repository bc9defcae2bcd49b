#include "hamlab/combinatorics.hpp"

#include <string>

namespace hamlab {

auto checked_mul(std::int64_t a, std::int64_t b) -> std::int64_t {
    std::int64_t out = 0;
    if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("int64 overflow in multiplication");
    return out;
}

auto checked_add(std::int64_t a, std::int64_t b) -> std::int64_t {
    std::int64_t out = 0;
    if (__builtin_add_overflow(a, b, &out)) throw OverflowError("int64 overflow in addition");
    return out;
}

auto checked_pow(std::int64_t base, int exponent) -> std::int64_t {
    std::int64_t out = 1;
    for (int i = 0; i < exponent; ++i) out = checked_mul(out, base);
    return out;
}

auto binomial(std::int64_t n, std::int64_t r) -> std::int64_t {
    if (r < 0 || n < 0 || r > n) return 0;
    if (r > n - r) r = n - r;
    // Each partial product C(n-r+i, i) is exact; widen to 128 bits for the
    // intermediate multiply so only a genuinely oversized result overflows.
    __int128 acc = 1;
    for (std::int64_t i = 1; i <= r; ++i) {
        acc = acc * (n - r + i) / i;
        if (acc > INT64_MAX) throw OverflowError("binomial(" + std::to_string(n) + "," + std::to_string(r) + ") exceeds int64");
    }
    return static_cast<std::int64_t>(acc);
}

auto Budget::charge(std::uint64_t count) -> void {
    if (count > max_ || used_ > max_ - count) {
        throw BudgetExceeded("enumeration budget of " + std::to_string(max_) + " membership tests exceeded");
    }
    used_ += count;
}

auto all_subsets(int n, int r) -> std::vector<VertexSet> {
    std::vector<Vertex> pool(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) pool[static_cast<std::size_t>(v)] = v;
    std::vector<VertexSet> out;
    for_each_combination(std::span<const Vertex>(pool), r, [&](const VertexSet& s) {
        out.push_back(s);
        return true;
    });
    return out;
}

auto complement_members(int n, const VertexSet& excluded) -> std::vector<Vertex> {
    std::vector<Vertex> out;
    for (Vertex v = 0; v < n; ++v) {
        if (!excluded.contains(v)) out.push_back(v);
    }
    return out;
}

}  // namespace hamlab
