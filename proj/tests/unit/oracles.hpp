#pragma once

// Brute-force reference implementations over plain bitmasks (n <= 20).
// They share no code with the library on purpose.

#include <bit>
#include <cstdint>
#include <functional>
#include <set>
#include <utility>
#include <vector>

#include "hamlab/vertex_set.hpp"

namespace oracle {

using Mask = std::uint32_t;
using Pred = std::function<bool(Mask)>;

inline auto pop(Mask m) -> int { return std::popcount(m); }

inline auto masks_of_size(int n, int r) -> std::vector<Mask> {
    std::vector<Mask> out;
    for (Mask m = 0; m < (Mask{1} << n); ++m) {
        if (pop(m) == r) out.push_back(m);
    }
    return out;
}

inline auto to_mask(const hamlab::VertexSet& s) -> Mask {
    Mask m = 0;
    s.for_each([&](hamlab::Vertex v) { m |= Mask{1} << v; });
    return m;
}

inline auto to_set(Mask m) -> hamlab::VertexSet {
    hamlab::VertexSet s;
    for (int v = 0; v < 32; ++v) {
        if (m >> v & 1U) s.insert(v);
    }
    return s;
}

inline auto prefix(int a) -> Mask { return a >= 32 ? ~Mask{0} : (Mask{1} << a) - 1; }

inline auto parity_pred(Mask amask, int eta) -> Pred {
    return [amask, eta](Mask e) { return (pop(e & amask) & 1) == eta; };
}

inline auto degree(int n, int k, Mask s, const Pred& p) -> long long {
    long long d = 0;
    for (Mask e : masks_of_size(n, k)) {
        if ((e & s) == s && p(e)) ++d;
    }
    return d;
}

inline auto min_degree(int n, int k, int ell, const Pred& p) -> long long {
    const auto edges = masks_of_size(n, k);
    long long best = -1;
    for (Mask s : masks_of_size(n, ell)) {
        long long d = 0;
        for (Mask e : edges) {
            if ((e & s) == s && p(e)) ++d;
        }
        if (best < 0 || d < best) best = d;
    }
    return best;
}

inline auto has_perfect_matching(int n, int k, const Pred& p) -> bool {
    std::vector<Mask> edges;
    for (Mask e : masks_of_size(n, k)) {
        if (p(e)) edges.push_back(e);
    }
    const Mask full = prefix(n);
    std::set<Mask> dead;
    std::function<bool(Mask)> go = [&](Mask used) -> bool {
        if (used == full) return true;
        if (dead.count(used)) return false;
        const Mask low = ~used & full & (~(~used & full) + 1);
        for (Mask e : edges) {
            if ((e & low) && !(e & used) && go(used | e)) return true;
        }
        dead.insert(used);
        return false;
    };
    return go(0);
}

/// Memoized reachability over (used, last block): is there a cyclic sequence
/// of blocks alternating sizes ell, k-ell covering all n vertices?
inline auto has_ham_cycle(int n, int k, int ell, const Pred& p) -> bool {
    const Mask full = prefix(n);
    const auto lefts = masks_of_size(n, ell);
    const auto rights = masks_of_size(n, k - ell);
    for (Mask first : lefts) {
        std::set<std::pair<Mask, Mask>> dead;
        std::function<bool(Mask, Mask, bool)> go = [&](Mask used, Mask last, bool need_right) -> bool {
            if (used == full) return !need_right && p(last | first);
            if (dead.count({used, last})) return false;
            const auto& pool = need_right ? rights : lefts;
            for (Mask b : pool) {
                if ((b & used) || !p(last | b)) continue;
                if (go(used | b, b, !need_right)) return true;
            }
            dead.insert({used, last});
            return false;
        };
        if (go(first, first, true)) return true;
    }
    return false;
}

/// Hamilton path with the given ends, same memoized scheme.
inline auto has_ham_path(int n, int k, int ell, Mask left, Mask right, const Pred& p) -> bool {
    const Mask full = prefix(n);
    const auto lefts = masks_of_size(n, ell);
    const auto rights = masks_of_size(n, k - ell);
    std::set<std::pair<Mask, Mask>> dead;
    std::function<bool(Mask, Mask, bool)> go = [&](Mask used, Mask last, bool need_right) -> bool {
        if ((used | right) == full && !need_right) return false;
        if (need_right && (used | right) == full) return p(last | right);
        if (dead.count({used, last})) return false;
        const auto& pool = need_right ? rights : lefts;
        for (Mask b : pool) {
            if ((b & (used | right)) || !p(last | b)) continue;
            if (go(used | b, b, !need_right)) return true;
        }
        dead.insert({used, last});
        return false;
    };
    return go(left, left, true);
}

inline auto binom(long long n, long long r) -> long long {
    if (r < 0 || r > n) return 0;
    long long out = 1;
    for (long long i = 1; i <= r; ++i) out = out * (n - r + i) / i;
    return out;
}

}  // namespace oracle
