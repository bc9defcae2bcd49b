#include "hamlab/hypergraph.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace hamlab {

namespace {

auto check_uniformity(int n, int k) -> void {
    require(n >= 0, "vertex count must be non-negative");
    require(k >= 1, "uniformity k must be at least 1");
}

auto in_range(const VertexSet& s, int n) -> bool { return s.empty() || (s.min() >= 0 && s.max() < n); }

auto map_labels(const VertexSet& s, const std::vector<Vertex>& labels) -> VertexSet {
    VertexSet out;
    s.for_each([&](Vertex v) { out.insert(labels[static_cast<std::size_t>(v)]); });
    return out;
}

// Colex rank of an r-set, dense in 0..C(n,r)-1.
auto colex_rank(const VertexSet& s) -> std::int64_t {
    std::int64_t rank = 0;
    int i = 1;
    s.for_each([&](Vertex v) { rank += binomial(v, i++); });
    return rank;
}

constexpr std::int64_t explicit_complement_cap = 2'000'000;

}  // namespace

auto structure_name(Structure s) -> std::string {
    switch (s) {
        case Structure::explicit_edges: return "explicit";
        case Structure::complete: return "complete";
        case Structure::extremal: return "extremal";
        case Structure::kpartite_complete: return "kpartite-complete";
        case Structure::kpartite_restricted: return "kpartite-restricted";
        case Structure::complement_of: return "complement";
        case Structure::restriction_of: return "restriction";
        case Structure::predicate: return "predicate";
    }
    return "unknown";
}

auto Hypergraph::from_edges(int n, int k, std::vector<VertexSet> edges) -> Hypergraph {
    check_uniformity(n, k);
    for (const auto& e : edges) {
        require(e.size() == k, "edge " + e.to_string() + " does not have exactly k vertices");
        require(in_range(e, n), "edge " + e.to_string() + " has a label outside 0..n-1");
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    Hypergraph h(n, k, Structure::explicit_edges);
    auto index = std::make_shared<std::unordered_set<VertexSet, VertexSetHash>>(edges.begin(), edges.end());
    h.edges_ = std::make_shared<const std::vector<VertexSet>>(std::move(edges));
    h.index_ = std::move(index);
    return h;
}

auto Hypergraph::complete(int n, int k) -> Hypergraph {
    check_uniformity(n, k);
    Hypergraph h(n, k, Structure::complete);
    h.predicate_ = [](const VertexSet&) { return true; };
    return h;
}

auto Hypergraph::empty(int n, int k) -> Hypergraph { return from_edges(n, k, {}); }

auto Hypergraph::extremal(const ExtremalSpec& spec) -> Hypergraph {
    check_uniformity(spec.n, spec.k);
    require(spec.k <= spec.n, "extremal construction needs k <= n");
    require(in_range(spec.a, spec.n), "A must be a subset of 0..n-1");
    require(spec.eta == 0 || spec.eta == 1, "eta must be 0 or 1");
    Hypergraph h(spec.n, spec.k, Structure::extremal);
    h.predicate_ = [a = spec.a, eta = spec.eta](const VertexSet& e) { return (e.intersection_size(a) & 1) == eta; };
    h.spec_ = spec;
    return h;
}

auto Hypergraph::kpartite_complete(int n, std::vector<std::vector<Vertex>> parts) -> Hypergraph {
    return kpartite_restricted(n, std::move(parts), nullptr);
}

auto Hypergraph::kpartite_restricted(int n, std::vector<std::vector<Vertex>> parts, MembershipPredicate keep) -> Hypergraph {
    const int k = static_cast<int>(parts.size());
    check_uniformity(n, k);
    std::vector<int> part_of(static_cast<std::size_t>(n), -1);
    for (int p = 0; p < k; ++p) {
        for (Vertex v : parts[static_cast<std::size_t>(p)]) {
            require(v >= 0 && v < n, "part vertex outside 0..n-1");
            require(part_of[static_cast<std::size_t>(v)] == -1, "parts must be pairwise disjoint");
            part_of[static_cast<std::size_t>(v)] = p;
        }
    }
    const auto kind = keep ? Structure::kpartite_restricted : Structure::kpartite_complete;
    Hypergraph h(n, k, kind);
    h.predicate_ = [part_of = std::move(part_of), k, keep = std::move(keep)](const VertexSet& e) {
        std::uint64_t seen = 0;
        bool ok = true;
        e.for_each([&](Vertex v) {
            const int p = part_of[static_cast<std::size_t>(v)];
            if (p < 0 || ((seen >> p) & 1U)) {
                ok = false;
                return;
            }
            seen |= std::uint64_t{1} << p;
        });
        if (!ok || std::popcount(seen) != k) return false;
        return !keep || keep(e);
    };
    h.parts_ = std::move(parts);
    return h;
}

auto Hypergraph::implicit(int n, int k, Structure kind, MembershipPredicate predicate) -> Hypergraph {
    check_uniformity(n, k);
    require(kind != Structure::explicit_edges, "implicit hypergraph needs a predicate structure tag");
    require(static_cast<bool>(predicate), "implicit hypergraph needs a predicate");
    Hypergraph h(n, k, kind);
    h.predicate_ = std::move(predicate);
    return h;
}

auto Hypergraph::contains(const VertexSet& e) const -> bool {
    if (e.size() != k_ || !in_range(e, n_)) return false;
    if (kind_ == Structure::explicit_edges) return index_->count(e) > 0;
    return predicate_(e);
}

auto Hypergraph::edges() const -> const std::vector<VertexSet>& {
    require(kind_ == Structure::explicit_edges, "edge list requested from an implicit hypergraph");
    return *edges_;
}

auto Hypergraph::predicate() const -> MembershipPredicate {
    if (kind_ == Structure::explicit_edges) {
        return [index = index_](const VertexSet& e) { return index->count(e) > 0; };
    }
    return predicate_;
}

auto Restriction::to_original(const VertexSet& s) const -> VertexSet { return map_labels(s, labels); }

auto for_each_edge(const Hypergraph& h, Budget& budget, const std::function<bool(const VertexSet&)>& visit) -> void {
    if (h.is_explicit()) {
        for (const auto& e : h.edges()) {
            if (!visit(e)) return;
        }
        return;
    }
    budget.charge(static_cast<std::uint64_t>(binomial(h.n(), h.k())));
    std::vector<Vertex> pool(static_cast<std::size_t>(h.n()));
    for (int v = 0; v < h.n(); ++v) pool[static_cast<std::size_t>(v)] = v;
    for_each_combination(std::span<const Vertex>(pool), h.k(), [&](const VertexSet& e) {
        if (h.contains(e)) return visit(e);
        return true;
    });
}

auto link(const Hypergraph& h, const VertexSet& s, Budget& budget) -> std::vector<VertexSet> {
    require(s.size() < h.k(), "link needs |S| < k");
    require(in_range(s, h.n()), "S must be a subset of 0..n-1");
    std::vector<VertexSet> out;
    if (h.is_explicit()) {
        for (const auto& e : h.edges()) {
            if (s.subset_of(e)) out.push_back(e - s);
        }
        std::sort(out.begin(), out.end());
        return out;
    }
    const int r = h.k() - s.size();
    budget.charge(static_cast<std::uint64_t>(binomial(h.n() - s.size(), r)));
    const auto pool = complement_members(h.n(), s);
    for_each_combination(std::span<const Vertex>(pool), r, [&](const VertexSet& t) {
        if (h.contains(s | t)) out.push_back(t);
        return true;
    });
    return out;
}

auto link(const Hypergraph& h, const VertexSet& s) -> std::vector<VertexSet> {
    Budget budget;
    return link(h, s, budget);
}

auto degree(const Hypergraph& h, const VertexSet& s, Budget& budget) -> std::int64_t {
    require(s.size() < h.k(), "degree needs |S| < k");
    require(in_range(s, h.n()), "S must be a subset of 0..n-1");
    std::int64_t count = 0;
    if (h.is_explicit()) {
        for (const auto& e : h.edges()) {
            if (s.subset_of(e)) ++count;
        }
        return count;
    }
    const int r = h.k() - s.size();
    budget.charge(static_cast<std::uint64_t>(binomial(h.n() - s.size(), r)));
    const auto pool = complement_members(h.n(), s);
    for_each_combination(std::span<const Vertex>(pool), r, [&](const VertexSet& t) {
        if (h.contains(s | t)) ++count;
        return true;
    });
    return count;
}

auto degree(const Hypergraph& h, const VertexSet& s) -> std::int64_t {
    Budget budget;
    return degree(h, s, budget);
}

auto edge_count(const Hypergraph& h, Budget& budget) -> std::int64_t {
    switch (h.structure()) {
        case Structure::explicit_edges: return static_cast<std::int64_t>(h.edges().size());
        case Structure::complete: return binomial(h.n(), h.k());
        case Structure::extremal: {
            const auto& spec = *h.extremal_spec();
            const int a = spec.a_size();
            std::int64_t total = 0;
            for (int i = spec.eta; i <= h.k(); i += 2) {
                total = checked_add(total, checked_mul(binomial(a, i), binomial(h.n() - a, h.k() - i)));
            }
            return total;
        }
        default: break;
    }
    std::int64_t count = 0;
    for_each_edge(h, budget, [&](const VertexSet&) {
        ++count;
        return true;
    });
    return count;
}

auto min_ell_degree(const Hypergraph& h, int ell, Budget& budget) -> std::int64_t {
    require(ell >= 0 && ell <= h.k() - 1, "min_ell_degree needs 0 <= ell <= k-1");
    if (ell == 0) return edge_count(h, budget);
    const auto sets = binomial(h.n(), ell);
    if (sets == 0) return 0;
    budget.charge(static_cast<std::uint64_t>(sets));
    std::vector<std::int64_t> counts(static_cast<std::size_t>(sets), 0);
    // One pass over the edges; each edge credits its C(k, ell) ell-subsets.
    for_each_edge(h, budget, [&](const VertexSet& e) {
        for_each_subset(e, ell, [&](const VertexSet& sub) {
            ++counts[static_cast<std::size_t>(colex_rank(sub))];
            return true;
        });
        return true;
    });
    return *std::min_element(counts.begin(), counts.end());
}

auto min_ell_degree(const Hypergraph& h, int ell) -> std::int64_t {
    Budget budget;
    return min_ell_degree(h, ell, budget);
}

auto restrict_to(const Hypergraph& h, const VertexSet& u) -> Restriction {
    require(in_range(u, h.n()), "U must be a subset of 0..n-1");
    require(u.size() >= h.k(), "restriction needs |U| >= k");
    auto labels = u.members();
    const int m = static_cast<int>(labels.size());
    std::vector<Vertex> new_label(static_cast<std::size_t>(h.n()), -1);
    for (int i = 0; i < m; ++i) new_label[static_cast<std::size_t>(labels[static_cast<std::size_t>(i)])] = i;
    auto relabel = [&](const VertexSet& s) {
        VertexSet out;
        s.for_each([&](Vertex v) { out.insert(new_label[static_cast<std::size_t>(v)]); });
        return out;
    };

    switch (h.structure()) {
        case Structure::explicit_edges: {
            std::vector<VertexSet> kept;
            for (const auto& e : h.edges()) {
                if (e.subset_of(u)) kept.push_back(relabel(e));
            }
            return {Hypergraph::from_edges(m, h.k(), std::move(kept)), std::move(labels)};
        }
        case Structure::complete: return {Hypergraph::complete(m, h.k()), std::move(labels)};
        case Structure::extremal: {
            auto spec = *h.extremal_spec();
            ExtremalSpec sub{m, spec.k, relabel(spec.a & u), spec.eta};
            return {Hypergraph::extremal(sub), std::move(labels)};
        }
        default: break;
    }
    auto parent = h.predicate();
    auto shared_labels = std::make_shared<const std::vector<Vertex>>(labels);
    auto pred = [parent, shared_labels](const VertexSet& e) { return parent(map_labels(e, *shared_labels)); };
    if (h.structure() == Structure::kpartite_complete || h.structure() == Structure::kpartite_restricted) {
        std::vector<std::vector<Vertex>> parts;
        for (const auto& part : h.parts()) {
            std::vector<Vertex> p;
            for (Vertex v : part) {
                if (u.contains(v)) p.push_back(new_label[static_cast<std::size_t>(v)]);
            }
            parts.push_back(std::move(p));
        }
        return {Hypergraph::kpartite_restricted(m, std::move(parts), pred), std::move(labels)};
    }
    return {Hypergraph::implicit(m, h.k(), Structure::restriction_of, pred), std::move(labels)};
}

auto complement(const Hypergraph& h) -> Hypergraph {
    switch (h.structure()) {
        case Structure::complete: return Hypergraph::empty(h.n(), h.k());
        case Structure::extremal: {
            auto spec = *h.extremal_spec();
            spec.eta ^= 1;
            return Hypergraph::extremal(spec);
        }
        case Structure::explicit_edges: {
            if (h.edges().empty()) return Hypergraph::complete(h.n(), h.k());
            if (binomial(h.n(), h.k()) <= explicit_complement_cap) {
                std::vector<VertexSet> out;
                std::vector<Vertex> pool(static_cast<std::size_t>(h.n()));
                for (int v = 0; v < h.n(); ++v) pool[static_cast<std::size_t>(v)] = v;
                for_each_combination(std::span<const Vertex>(pool), h.k(), [&](const VertexSet& e) {
                    if (!h.contains(e)) out.push_back(e);
                    return true;
                });
                return Hypergraph::from_edges(h.n(), h.k(), std::move(out));
            }
            break;
        }
        default: break;
    }
    auto parent = h.predicate();
    return Hypergraph::implicit(h.n(), h.k(), Structure::complement_of, [parent](const VertexSet& e) { return !parent(e); });
}

auto materialize(const Hypergraph& h, Budget& budget) -> Hypergraph {
    if (h.is_explicit()) return h;
    std::vector<VertexSet> out;
    for_each_edge(h, budget, [&](const VertexSet& e) {
        out.push_back(e);
        return true;
    });
    return Hypergraph::from_edges(h.n(), h.k(), std::move(out));
}

auto materialize(const Hypergraph& h) -> Hypergraph {
    Budget budget;
    return materialize(h, budget);
}

}  // namespace hamlab
