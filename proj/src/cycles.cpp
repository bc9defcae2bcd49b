#include "hamlab/cycles.hpp"

#include <algorithm>

namespace hamlab {

namespace {

auto fail(std::string kind, int index, std::string message) -> ValidationReport {
    return {false, std::move(kind), index, std::move(message)};
}

auto out_of_range(const VertexSet& s, int n) -> bool { return !s.empty() && (s.min() < 0 || s.max() >= n); }

}  // namespace

auto SegPath::vertices() const -> VertexSet {
    VertexSet out;
    for (const auto& s : segments) out |= s;
    return out;
}

auto SegPath::vertex_count() const -> int {
    int c = 0;
    for (const auto& s : segments) c += s.size();
    return c;
}

auto SegPath::edge(int i) const -> VertexSet {
    return segments[static_cast<std::size_t>(i)] | segments[static_cast<std::size_t>(i + 1)];
}

auto SegPath::reversed() const -> SegPath {
    SegPath out{segments, ell};
    std::reverse(out.segments.begin(), out.segments.end());
    return out;
}

auto SegCycle::vertices() const -> VertexSet {
    VertexSet out;
    for (const auto& b : blocks) out |= b;
    return out;
}

auto validate_path(const Hypergraph& h, const SegPath& p) -> ValidationReport {
    const int k = h.k();
    const int ell = p.ell;
    if (ell < 1 || ell > k - 1) return fail("size", -1, "ell must lie in 1..k-1");
    if (p.segments.size() < 2) return fail("size", -1, "a path needs at least two segments");
    VertexSet seen;
    for (std::size_t i = 0; i < p.segments.size(); ++i) {
        const auto& s = p.segments[i];
        const int idx = static_cast<int>(i);
        if (out_of_range(s, h.n())) return fail("range", idx, "segment " + std::to_string(i) + " has a label outside 0..n-1");
        if (s.size() != ell && s.size() != k - ell) {
            return fail("size", idx, "segment " + std::to_string(i) + " has size " + std::to_string(s.size()));
        }
        if (i > 0 && s.size() + p.segments[i - 1].size() != k) {
            return fail("size", idx, "segments " + std::to_string(i - 1) + " and " + std::to_string(i) + " do not alternate");
        }
        if (!seen.disjoint(s)) return fail("disjointness", idx, "segment " + std::to_string(i) + " overlaps an earlier segment");
        seen |= s;
    }
    for (int i = 0; i < p.edge_count(); ++i) {
        if (!h.contains(p.edge(i))) return fail("edge", i, "segments " + std::to_string(i) + "," + std::to_string(i + 1) + " do not form an edge");
    }
    return {};
}

auto validate_cycle(const Hypergraph& h, const SegCycle& c, bool hamilton) -> ValidationReport {
    const int k = h.k();
    const int ell = c.ell;
    if (ell < 1 || ell > k - 1) return fail("size", -1, "ell must lie in 1..k-1");
    if (c.blocks.size() % 2 != 0) return fail("size", -1, "a cycle needs an even number of blocks");
    if (c.t() < 2) return fail("degenerate", -1, "cycles need t >= 2");
    VertexSet seen;
    for (std::size_t i = 0; i < c.blocks.size(); ++i) {
        const auto& b = c.blocks[i];
        const int idx = static_cast<int>(i);
        if (out_of_range(b, h.n())) return fail("range", idx, "block " + std::to_string(i) + " has a label outside 0..n-1");
        const int want = i % 2 == 0 ? ell : k - ell;
        if (b.size() != want) return fail("size", idx, "block " + std::to_string(i) + " has size " + std::to_string(b.size()));
        if (!seen.disjoint(b)) return fail("disjointness", idx, "block " + std::to_string(i) + " overlaps an earlier block");
        seen |= b;
    }
    const auto total = c.blocks.size();
    for (std::size_t i = 0; i < total; ++i) {
        if (!h.contains(c.blocks[i] | c.blocks[(i + 1) % total])) {
            return fail("edge", static_cast<int>(i), "blocks " + std::to_string(i) + "," + std::to_string((i + 1) % total) + " do not form an edge");
        }
    }
    if (hamilton && seen.size() != h.n()) {
        const auto missing = VertexSet::prefix(h.n()) - seen;
        return fail("coverage", missing.min(), "vertex " + std::to_string(missing.min()) + " is not covered");
    }
    return {};
}

auto validate_matching(const Hypergraph& h, const Matching& m, bool perfect) -> ValidationReport {
    VertexSet seen;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const int idx = static_cast<int>(i);
        if (!h.contains(m[i])) return fail("edge", idx, "member " + std::to_string(i) + " is not an edge");
        if (!seen.disjoint(m[i])) return fail("disjointness", idx, "member " + std::to_string(i) + " overlaps an earlier member");
        seen |= m[i];
    }
    if (perfect && seen.size() != h.n()) {
        const auto missing = VertexSet::prefix(h.n()) - seen;
        return fail("coverage", missing.min(), "vertex " + std::to_string(missing.min()) + " is not covered");
    }
    return {};
}

auto cycle_to_matchings(const SegCycle& c) -> std::pair<Matching, Matching> {
    require(c.blocks.size() % 2 == 0 && c.t() >= 2, "cycle_to_matchings needs t >= 2");
    VertexSet seen;
    for (const auto& b : c.blocks) {
        require(seen.disjoint(b), "cycle blocks overlap");
        seen |= b;
    }
    const int t = c.t();
    Matching m1;
    Matching m2;
    for (int i = 0; i < t; ++i) {
        m1.push_back(c.left(i) | c.right(i));
        m2.push_back(c.right(i) | c.left((i + 1) % t));
    }
    return {m1, m2};
}

auto canonicalize(const SegCycle& c) -> SegCycle {
    const int t = c.t();
    require(t >= 1 && c.blocks.size() % 2 == 0, "malformed cycle");
    int start = 0;
    for (int i = 1; i < t; ++i) {
        if (c.left(i).min() < c.left(start).min()) start = i;
    }
    SegCycle out{{}, c.ell};
    for (int i = 0; i < t; ++i) {
        const int j = (start + i) % t;
        out.blocks.push_back(c.left(j));
        out.blocks.push_back(c.right(j));
    }
    if (t >= 2 && out.right(t - 1) < out.right(0)) {
        // Reverse orientation: L0, R_{t-1}, L_{t-1}, ..., L_1, R_0.
        SegCycle rev{{}, c.ell};
        rev.blocks.push_back(out.left(0));
        for (int i = t - 1; i >= 1; --i) {
            rev.blocks.push_back(out.right(i));
            rev.blocks.push_back(out.left(i));
        }
        rev.blocks.push_back(out.right(0));
        return rev;
    }
    return out;
}

auto cut_cycle(const SegCycle& c, int start) -> SegPath {
    SegPath p{{}, c.ell};
    const auto total = c.blocks.size();
    for (std::size_t i = 0; i < total; ++i) p.segments.push_back(c.blocks[(static_cast<std::size_t>(start) + i) % total]);
    return p;
}

auto path_matching_view(const SegPath& p) -> Matching {
    Matching m;
    for (std::size_t i = 0; i + 1 < p.segments.size(); i += 2) m.push_back(p.segments[i] | p.segments[i + 1]);
    return m;
}

auto intersection_total(const Matching& m, const VertexSet& a) -> int {
    int total = 0;
    for (const auto& e : m) total += e.intersection_size(a);
    return total;
}

}  // namespace hamlab
