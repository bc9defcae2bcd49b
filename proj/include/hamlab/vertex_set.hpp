#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace hamlab {

using Vertex = int;

/// Set of vertex labels stored as a bitmap.
///
/// Labels below 128 live in two inline words so that the common desk-scale
/// case never allocates; larger labels spill into a trimmed word vector.
/// Ordering (operator<) is the lexicographic order of the sorted member
/// tuples, which is the canonical edge order used throughout the library.
class VertexSet {
public:
    static constexpr int inline_bits = 128;

    VertexSet() = default;
    VertexSet(std::initializer_list<Vertex> members) {
        for (Vertex v : members) insert(v);
    }
    explicit VertexSet(std::span<const Vertex> members) {
        for (Vertex v : members) insert(v);
    }

    /// {0, 1, ..., count-1}
    static auto prefix(int count) -> VertexSet {
        VertexSet s;
        for (int v = 0; v < count; ++v) s.insert(v);
        return s;
    }

    auto insert(Vertex v) -> void {
        auto [w, b] = locate(v);
        word_ref_grow(w) |= (std::uint64_t{1} << b);
    }

    auto erase(Vertex v) -> void {
        auto [w, b] = locate(v);
        if (w < 2) {
            low_[w] &= ~(std::uint64_t{1} << b);
        } else if (w - 2 < high_.size()) {
            high_[w - 2] &= ~(std::uint64_t{1} << b);
            trim();
        }
    }

    [[nodiscard]] auto contains(Vertex v) const -> bool {
        if (v < 0) return false;
        auto [w, b] = locate(v);
        return (word(w) >> b) & 1U;
    }

    [[nodiscard]] auto size() const -> int {
        int c = std::popcount(low_[0]) + std::popcount(low_[1]);
        for (auto x : high_) c += std::popcount(x);
        return c;
    }

    [[nodiscard]] auto empty() const -> bool {
        return low_[0] == 0 && low_[1] == 0 && high_.empty();
    }

    /// Smallest member, or -1 when empty.
    [[nodiscard]] auto min() const -> Vertex {
        for (std::size_t w = 0; w < word_count(); ++w) {
            if (auto x = word(w)) return static_cast<Vertex>(w * 64 + std::countr_zero(x));
        }
        return -1;
    }

    /// Largest member, or -1 when empty.
    [[nodiscard]] auto max() const -> Vertex {
        for (std::size_t w = word_count(); w-- > 0;) {
            if (auto x = word(w)) return static_cast<Vertex>(w * 64 + 63 - std::countl_zero(x));
        }
        return -1;
    }

    template <typename F>
    auto for_each(F&& f) const -> void {
        for (std::size_t w = 0; w < word_count(); ++w) {
            auto x = word(w);
            while (x) {
                f(static_cast<Vertex>(w * 64 + std::countr_zero(x)));
                x &= x - 1;
            }
        }
    }

    [[nodiscard]] auto members() const -> std::vector<Vertex> {
        std::vector<Vertex> out;
        out.reserve(static_cast<std::size_t>(size()));
        for_each([&](Vertex v) { out.push_back(v); });
        return out;
    }

    [[nodiscard]] auto intersection_size(const VertexSet& o) const -> int {
        int c = std::popcount(low_[0] & o.low_[0]) + std::popcount(low_[1] & o.low_[1]);
        const auto common = std::min(high_.size(), o.high_.size());
        for (std::size_t i = 0; i < common; ++i) c += std::popcount(high_[i] & o.high_[i]);
        return c;
    }

    [[nodiscard]] auto disjoint(const VertexSet& o) const -> bool { return intersection_size(o) == 0; }

    [[nodiscard]] auto subset_of(const VertexSet& o) const -> bool {
        for (std::size_t w = 0; w < word_count(); ++w) {
            if (word(w) & ~o.word(w)) return false;
        }
        return true;
    }

    auto operator|=(const VertexSet& o) -> VertexSet& {
        low_[0] |= o.low_[0];
        low_[1] |= o.low_[1];
        if (high_.size() < o.high_.size()) high_.resize(o.high_.size(), 0);
        for (std::size_t i = 0; i < o.high_.size(); ++i) high_[i] |= o.high_[i];
        return *this;
    }
    auto operator&=(const VertexSet& o) -> VertexSet& {
        low_[0] &= o.low_[0];
        low_[1] &= o.low_[1];
        for (std::size_t i = 0; i < high_.size(); ++i) high_[i] &= o.word(i + 2);
        trim();
        return *this;
    }
    auto operator-=(const VertexSet& o) -> VertexSet& {
        low_[0] &= ~o.low_[0];
        low_[1] &= ~o.low_[1];
        for (std::size_t i = 0; i < high_.size(); ++i) high_[i] &= ~o.word(i + 2);
        trim();
        return *this;
    }

    friend auto operator|(VertexSet a, const VertexSet& b) -> VertexSet { return a |= b; }
    friend auto operator&(VertexSet a, const VertexSet& b) -> VertexSet { return a &= b; }
    friend auto operator-(VertexSet a, const VertexSet& b) -> VertexSet { return a -= b; }

    friend auto operator==(const VertexSet& a, const VertexSet& b) -> bool {
        return a.low_ == b.low_ && a.high_ == b.high_;
    }

    /// Lexicographic order of the sorted member tuples.
    friend auto operator<(const VertexSet& a, const VertexSet& b) -> bool {
        const auto words = std::max(a.word_count(), b.word_count());
        for (std::size_t w = 0; w < words; ++w) {
            const auto x = a.word(w);
            const auto y = b.word(w);
            if (x == y) continue;
            const auto diff = x ^ y;
            const int bit = std::countr_zero(diff);
            // Vertices above the first differing one decide whether the
            // set lacking it is a prefix (smaller) or continues (larger).
            const std::uint64_t above = bit == 63 ? 0 : (~std::uint64_t{0} << (bit + 1));
            if ((x >> bit) & 1U) {
                return (y & above) != 0 || b.any_word_after(w);
            }
            return !((x & above) != 0 || a.any_word_after(w));
        }
        return false;
    }
    friend auto operator>(const VertexSet& a, const VertexSet& b) -> bool { return b < a; }
    friend auto operator<=(const VertexSet& a, const VertexSet& b) -> bool { return !(b < a); }
    friend auto operator>=(const VertexSet& a, const VertexSet& b) -> bool { return !(a < b); }

    [[nodiscard]] auto hash() const -> std::size_t {
        std::uint64_t h = 0x9e3779b97f4a7c15ULL;
        auto mix = [&](std::uint64_t x) {
            h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
            h *= 0xbf58476d1ce4e5b9ULL;
        };
        mix(low_[0]);
        mix(low_[1]);
        for (auto x : high_) mix(x);
        return static_cast<std::size_t>(h ^ (h >> 31));
    }

    /// Raw word access (word 0 holds labels 0..63).
    [[nodiscard]] auto word(std::size_t w) const -> std::uint64_t {
        if (w < 2) return low_[w];
        return w - 2 < high_.size() ? high_[w - 2] : 0;
    }
    [[nodiscard]] auto word_count() const -> std::size_t { return 2 + high_.size(); }

    [[nodiscard]] auto to_string() const -> std::string {
        std::string out = "{";
        bool first = true;
        for_each([&](Vertex v) {
            if (!first) out += ',';
            out += std::to_string(v);
            first = false;
        });
        return out + "}";
    }

private:
    static auto locate(Vertex v) -> std::pair<std::size_t, int> {
        return {static_cast<std::size_t>(v) / 64, static_cast<int>(static_cast<unsigned>(v) % 64)};
    }

    auto word_ref_grow(std::size_t w) -> std::uint64_t& {
        if (w < 2) return low_[w];
        if (high_.size() <= w - 2) high_.resize(w - 1, 0);
        return high_[w - 2];
    }

    auto trim() -> void {
        while (!high_.empty() && high_.back() == 0) high_.pop_back();
    }

    [[nodiscard]] auto any_word_after(std::size_t w) const -> bool {
        for (std::size_t i = w + 1; i < word_count(); ++i) {
            if (word(i)) return true;
        }
        return false;
    }

    std::array<std::uint64_t, 2> low_{};
    std::vector<std::uint64_t> high_;
};

struct VertexSetHash {
    auto operator()(const VertexSet& s) const -> std::size_t { return s.hash(); }
};

}  // namespace hamlab

template <>
struct std::hash<hamlab::VertexSet> {
    auto operator()(const hamlab::VertexSet& s) const -> std::size_t { return s.hash(); }
};
