#include "hamlab/parity.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "hamlab/extremal.hpp"
#include "hamlab/random.hpp"

namespace hamlab {

auto GoodnessCache::alpha(const VertexSet& s) -> Rational {
    if (auto it = memo_.find(s); it != memo_.end()) return it->second;
    const auto a = goodness(h_, spec_, s, budget_).alpha_star;
    memo_.emplace(s, a);
    return a;
}

auto relocate_bad(const Hypergraph& h, const ExtremalSpec& spec, double alpha, double move_threshold, Budget& budget)
    -> BadVertexReport {
    require(spec.n == h.n() && spec.k == h.k(), "spec and hypergraph disagree on n or k");
    BadVertexReport out;
    out.alpha = alpha;
    for (Vertex v = 0; v < h.n(); ++v) {
        const auto a = goodness(h, spec, VertexSet{v}, budget).alpha_star;
        if (!within(a, alpha)) {
            out.v0.insert(v);
            if (!within(a, move_threshold)) out.v0_prime.insert(v);
        }
    }
    out.relocated = spec;
    out.relocated.a = (spec.a - out.v0_prime) | (spec.b_set() & out.v0_prime);
    return out;
}

auto relocate_bad(const Hypergraph& h, const ExtremalSpec& spec, double alpha) -> BadVertexReport {
    Budget b;
    return relocate_bad(h, spec, alpha, 0.25, b);
}

namespace {

template <typename P>
auto first_subset(const VertexSet& pool, int size, P&& pred) -> std::optional<VertexSet> {
    std::optional<VertexSet> out;
    for_each_subset(pool, size, [&](const VertexSet& s) {
        if (pred(s)) {
            out = s;
            return false;
        }
        return true;
    });
    return out;
}

struct Engine {
    const Hypergraph& h;
    const ExtremalSpec& s1;
    int ell;
    int k;
    int n;
    double eps2;
    GoodnessCache& cache;
    Budget& budget;

    [[nodiscard]] auto right_edge(const VertexSet& e) const -> bool { return s1.contains(e) && h.contains(e); }
    [[nodiscard]] auto wrong_edge(const VertexSet& e) const -> bool { return !s1.contains(e) && h.contains(e); }
    [[nodiscard]] auto all() const -> VertexSet { return VertexSet::prefix(n); }

    auto good(const VertexSet& s) -> bool { return cache.good(s, eps2); }

    /// ℓ-set X ⊆ pool with a ∪ X and X ∪ b both in H ∩ B1.
    auto connect(const VertexSet& pool, int size, const VertexSet& a, const VertexSet& b) -> std::optional<VertexSet> {
        return first_subset(pool, size, [&](const VertexSet& x) { return right_edge(a | x) && right_edge(x | b); });
    }
};

}  // namespace

auto cover_bad_vertices(const Hypergraph& h, const ExtremalSpec& spec1, int ell, const VertexSet& m, const VertexSet& u,
                        int parity_choice, double eps2, Budget& budget) -> CoverResult {
    const int k = h.k();
    const int n = h.n();
    require(k >= 5, "covering bad vertices needs k >= 5");
    require(ell >= 1 && ell <= k - 1, "need 1 <= ell <= k-1");
    require(u.size() <= 2 * k, "U may hold at most 2k vertices");
    require(m.disjoint(u), "M and U must be disjoint");
    require(parity_choice == 0 || parity_choice == 1, "parity choice must be 0 or 1");
    CoverResult out;
    out.path.ell = ell;
    if (m.empty()) {
        out.empty = true;
        return out;
    }
    GoodnessCache cache(h, spec1, budget);
    Engine eng{h, spec1, ell, k, n, eps2, cache, budget};
    VertexSet used;  // gadgets and connectors placed so far
    std::optional<VertexSet> tail;  // last (k−ℓ)-set of the path so far

    for (auto v : m.members()) {
        const auto pool = eng.all() - m - u - used;
        // Link edges of v, bucketed by an (ℓ−1)-set S; T = E ∖ S has the chosen parity.
        std::map<VertexSet, std::vector<VertexSet>> buckets;
        for_each_subset(pool, k - 1, [&](const VertexSet& e) {
            budget.charge(1);
            if (!eng.right_edge(e | VertexSet{v})) return true;
            bool filtered = false;
            for_each_subset(e, k - ell, [&](const VertexSet& r) {
                if (!eng.good(r)) filtered = true;
                return !filtered;
            });
            if (filtered) return true;
            for_each_subset(e, ell - 1, [&](const VertexSet& s) {
                const auto t = e - s;
                if (spec1.eta_of(t) == parity_choice) buckets[s].push_back(t);
                return true;
            });
            return true;
        });
        bool placed = false;
        for (const auto& [s, ts] : buckets) {
            for (const auto& t1 : ts) {
                for (const auto& t2 : ts) {
                    if (!t1.disjoint(t2)) continue;
                    const auto middle = s | VertexSet{v};
                    std::optional<VertexSet> link;
                    if (tail) {
                        link = eng.connect(pool - t1 - t2 - s, ell, *tail, t1);
                        if (!link) continue;
                    }
                    if (link) {
                        out.path.segments.push_back(*link);
                        used |= *link;
                    }
                    out.path.segments.push_back(t1);
                    out.path.segments.push_back(middle);
                    out.path.segments.push_back(t2);
                    used |= t1 | t2 | middle;
                    tail = t2;
                    placed = true;
                    break;
                }
                if (placed) break;
            }
            if (placed) break;
        }
        if (!placed) throw Error("no admissible gadget for bad vertex " + std::to_string(v));
    }
    return out;
}

namespace {

struct Built {
    SegPath path;
    std::string tag;
};

/// The parity-fixing path for one choice of bridging sets, or nothing when a
/// greedy step finds no admissible set.
class Builder {
public:
    Builder(Engine& eng, const VertexSet& v0) : eng_(eng), v0_(v0) {}

    /// Ends R′ and R plus the covering path between them, avoiding `taken`.
    /// With no bad vertices the two ends coincide and are picked by the caller.
    auto cover(const VertexSet& taken, int parity) -> std::optional<CoverResult> {
        const auto m = v0_ - taken;
        if (m.empty()) return CoverResult{{{}, eng_.ell}, true};
        const auto u = taken.size() <= 2 * eng_.k ? taken : VertexSet{};
        try {
            auto c = cover_bad_vertices(eng_.h, eng_.s1, eng_.ell, m, u, parity, eng_.eps2, eng_.budget);
            if (!c.path.vertices().disjoint(taken)) return std::nullopt;
            return c;
        } catch (const BudgetExceeded&) {
            throw;
        } catch (const Error&) {
            return std::nullopt;
        }
    }

    auto case1() -> std::optional<Built> {
        const int ell = eng_.ell;
        const int k = eng_.k;
        auto c = cover({}, 0);
        if (!c) return std::nullopt;
        if (c->empty) {
            // Single edge L ∪ R.
            std::optional<Built> out;
            for_each_subset(eng_.all(), ell, [&](const VertexSet& l) {
                if (!eng_.good(l)) return true;
                auto r = first_subset(eng_.all() - l, k - ell, [&](const VertexSet& r) { return eng_.right_edge(l | r) && eng_.good(r); });
                if (r) out = Built{{{l, *r}, ell}, "case1"};
                return !out;
            });
            return out;
        }
        const auto span = c->path.vertices();
        const auto& r_prime = c->path.segments.front();
        auto l = first_subset(eng_.all() - span, ell, [&](const VertexSet& x) { return eng_.right_edge(x | r_prime) && eng_.good(x); });
        if (!l) return std::nullopt;
        SegPath p{{*l}, ell};
        p.segments.insert(p.segments.end(), c->path.segments.begin(), c->path.segments.end());
        return Built{p, "case1"};
    }

    /// L1 R1* L* R2* L2 R′ P⁰ R, where L* ∪ R1*, L* ∪ R2* are wrong-parity edges.
    auto case21(const VertexSet& l_star, const VertexSet& r1, const VertexSet& r2) -> std::optional<Built> {
        const int ell = eng_.ell;
        const int k = eng_.k;
        const int p = eng_.s1.eta_of(r2);
        const auto taken = l_star | r1 | r2;
        auto c = cover(taken, p);
        if (!c) return std::nullopt;
        std::vector<VertexSet> tail;  // L2 R′ P⁰ R
        VertexSet used = taken | c->path.vertices();
        if (c->empty) {
            std::optional<std::pair<VertexSet, VertexSet>> pick;
            for_each_subset(eng_.all() - used, k - ell, [&](const VertexSet& r) {
                if (eng_.s1.eta_of(r) != p || !eng_.good(r)) return true;
                if (auto l2 = eng_.connect(eng_.all() - used - r, ell, r2, r)) pick = std::make_pair(*l2, r);
                return !pick;
            });
            if (!pick) return std::nullopt;
            tail = {pick->first, pick->second};
        } else {
            auto l2 = eng_.connect(eng_.all() - used, ell, r2, c->path.segments.front());
            if (!l2) return std::nullopt;
            tail.push_back(*l2);
            tail.insert(tail.end(), c->path.segments.begin(), c->path.segments.end());
        }
        for (const auto& s : tail) used |= s;
        auto l1 = first_subset(eng_.all() - used, ell, [&](const VertexSet& x) { return eng_.right_edge(x | r1) && eng_.good(x); });
        if (!l1) return std::nullopt;
        SegPath path{{*l1, r1, l_star, r2}, ell};
        path.segments.insert(path.segments.end(), tail.begin(), tail.end());
        return Built{path, "case2.1"};
    }

    /// L4 R1* L1* R3 L2* R2* L3 R′ P⁰ R for disjoint wrong-parity edges
    /// e1 = L1* ∪ R1*, e2 = L2* ∪ R2*.
    auto case22(const VertexSet& e1, const VertexSet& e2) -> std::optional<Built> {
        const int ell = eng_.ell;
        const int k = eng_.k;
        std::optional<Built> out;
        for_each_subset(e1, k - ell, [&](const VertexSet& r1) {
            for_each_subset(e2, k - ell, [&](const VertexSet& r2) {
                if (eng_.s1.eta_of(r1) != eng_.s1.eta_of(r2)) return true;
                out = case22_split(e1 - r1, r1, e2 - r2, r2);
                return !out;
            });
            return !out;
        });
        return out;
    }

private:
    auto case22_split(const VertexSet& l1s, const VertexSet& r1s, const VertexSet& l2s, const VertexSet& r2s)
        -> std::optional<Built> {
        const int ell = eng_.ell;
        const int k = eng_.k;
        const int p = eng_.s1.eta_of(r2s);
        const auto taken = l1s | r1s | l2s | r2s;
        auto c = cover(taken, p);
        if (!c) return std::nullopt;
        VertexSet used = taken | c->path.vertices();
        auto r3 = eng_.connect(eng_.all() - used, k - ell, l1s, l2s);
        if (!r3) return std::nullopt;
        used |= *r3;
        std::vector<VertexSet> tail;  // L3 R′ P⁰ R
        if (c->empty) {
            std::optional<std::pair<VertexSet, VertexSet>> pick;
            for_each_subset(eng_.all() - used, k - ell, [&](const VertexSet& r) {
                if (eng_.s1.eta_of(r) != p || !eng_.good(r)) return true;
                if (auto l3 = eng_.connect(eng_.all() - used - r, ell, r2s, r)) pick = std::make_pair(*l3, r);
                return !pick;
            });
            if (!pick) return std::nullopt;
            tail = {pick->first, pick->second};
        } else {
            auto l3 = eng_.connect(eng_.all() - used, ell, r2s, c->path.segments.front());
            if (!l3) return std::nullopt;
            tail.push_back(*l3);
            tail.insert(tail.end(), c->path.segments.begin(), c->path.segments.end());
        }
        for (const auto& s : tail) used |= s;
        auto l4 = first_subset(eng_.all() - used, ell, [&](const VertexSet& x) { return eng_.right_edge(x | r1s) && eng_.good(x); });
        if (!l4) return std::nullopt;
        SegPath path{{*l4, r1s, l1s, *r3, l2s, r2s}, ell};
        path.segments.insert(path.segments.end(), tail.begin(), tail.end());
        return Built{path, "case2.2"};
    }

    Engine& eng_;
    VertexSet v0_;
};

}  // namespace

auto parity_fix(const Hypergraph& h, const ExtremalSpec& spec, int ell, const ParityConfig& config, Budget& budget)
    -> ParityFixResult {
    const int n = h.n();
    const int k = h.k();
    require(spec.n == n && spec.k == k, "spec and hypergraph disagree on n or k");
    require(n % k == 0, "parity fixing needs k | n");
    require(2 * ell >= k && ell <= k - 1, "parity fixing needs k/2 <= ell <= k-1");

    ParityFixResult out;
    if (config.check_degree) {
        const auto threshold = delta_threshold(n, k, ell, ThresholdMethod::enumeration).value;
        out.degree_precondition = Rational(min_ell_degree(h, ell, budget)) > threshold;
        out.audit.push_back(std::string("degree precondition ") + (*out.degree_precondition ? "holds" : "fails"));
    }
    out.bad = relocate_bad(h, spec, config.alpha, config.move_threshold, budget);
    const auto& s1 = out.bad.relocated;
    out.eps2 = config.eps2.value_or(std::min(1.0, std::sqrt(2 * std::pow(static_cast<double>(k), k) * config.alpha)));
    out.audit.push_back("|V0| = " + std::to_string(out.bad.v0.size()) + ", |V0'| = " + std::to_string(out.bad.v0_prime.size()));

    GoodnessCache cache(h, s1, budget);
    Engine eng{h, s1, ell, k, n, out.eps2, cache, budget};
    Builder builder(eng, out.bad.v0);
    std::optional<Built> built;
    const int f1 = f_parity(s1).f;
    out.audit.push_back("f(B1) = " + std::to_string(f1));

    if (f1 == 0) {
        built = builder.case1();
        if (!built) throw Error("case 1: no admissible path found");
    } else {
        // Wrong-parity edges of H, in lexicographic order.
        std::vector<VertexSet> wrong;
        for_each_edge(h, budget, [&](const VertexSet& e) {
            if (!s1.contains(e)) wrong.push_back(e);
            return true;
        });
        if (wrong.empty()) throw Error("parity obstruction: H has no edge outside B1 and f(B1) = 1");

        // Case 2.1 through a not-1/5-good ℓ-set.
        for_each_subset(eng.all(), ell, [&](const VertexSet& l_star) {
            if (cache.good(l_star, config.case_threshold)) return true;
            std::vector<VertexSet> rs;
            for_each_subset(eng.all() - l_star, k - ell, [&](const VertexSet& r) {
                if (eng.wrong_edge(l_star | r) && eng.good(r)) rs.push_back(r);
                return true;
            });
            for (std::size_t i = 0; i < rs.size() && !built; ++i) {
                for (std::size_t j = i + 1; j < rs.size() && !built; ++j) {
                    if (rs[i].disjoint(rs[j])) built = builder.case21(l_star, rs[i], rs[j]);
                }
            }
            if (built) out.audit.push_back("case 2.1 via a set that is not " + std::to_string(config.case_threshold) + "-good");
            return !built;
        });
        // Otherwise a pair of wrong-parity edges meeting in 0 or ℓ vertices.
        for (std::size_t i = 0; i < wrong.size() && !built; ++i) {
            for (std::size_t j = i + 1; j < wrong.size() && !built; ++j) {
                const int common = wrong[i].intersection_size(wrong[j]);
                if (common == ell) {
                    built = builder.case21(wrong[i] & wrong[j], wrong[i] - wrong[j], wrong[j] - wrong[i]);
                } else if (common == 0) {
                    built = builder.case22(wrong[i], wrong[j]);
                }
                if (built) out.audit.push_back("parity pair " + wrong[i].to_string() + " " + wrong[j].to_string());
            }
        }
        if (!built) throw Error("case 2: no parity pair led to an admissible path");
    }

    out.path = built->path;
    out.case_tag = built->tag;
    const auto& l = out.path.segments.front();
    const auto& r = out.path.segments.back();
    out.removed = out.path.vertices() - l - r;
    out.path_valid = validate_path(h, out.path).ok;
    out.ends_in_family = s1.contains(l | r);
    for (const auto& e : path_matching_view(out.path)) {
        if (!s1.contains(e)) ++out.wrong_edges_in_view;
    }
    out.within_size_bound = static_cast<double>(out.path.vertex_count()) <= config.size_fraction * n;

    const auto keep = eng.all() - out.removed;
    out.residual_labels = keep.members();
    out.residual.n = keep.size();
    out.residual.k = k;
    out.residual.eta = s1.eta;
    for (std::size_t i = 0; i < out.residual_labels.size(); ++i) {
        if (s1.a.contains(out.residual_labels[i])) out.residual.a.insert(static_cast<Vertex>(i));
    }
    out.residual_f = f_parity(out.residual).f;
    out.audit.push_back(out.case_tag + ": |V(P)| = " + std::to_string(out.path.vertex_count()) + ", residual f = " +
                        std::to_string(out.residual_f));
    return out;
}

auto parity_fix(const Hypergraph& h, const ExtremalSpec& spec, int ell, const ParityConfig& config) -> ParityFixResult {
    Budget b;
    return parity_fix(h, spec, ell, config, b);
}

auto plant_wrong_pairs(const Hypergraph& base, const ExtremalSpec& spec, int pairs, int ell, std::uint64_t seed)
    -> PlantedInstance {
    const int n = spec.n;
    const int k = spec.k;
    require(base.n() == n && base.k() == k, "base and spec must share n and k");
    require(ell >= 1 && ell <= k - 1, "need 1 <= ell <= k-1");
    require(pairs >= 0 && pairs * 2 * k <= n, "not enough vertices for the planted pairs");
    Rng rng(seed);
    PlantedInstance out{Hypergraph::empty(n, k), {}};
    std::vector<Vertex> pool = VertexSet::prefix(n).members();
    rng.shuffle(pool);
    std::size_t at = 0;
    auto take = [&](int count) {
        VertexSet s;
        for (int i = 0; i < count; ++i) s.insert(pool[at++]);
        return s;
    };
    std::vector<VertexSet> planted;
    for (int p = 0; p < pairs; ++p) {
        const bool meet = rng.bernoulli(0.5);
        const std::size_t mark = at;
        for (int tries = 0;; ++tries) {
            require(tries < 4096, "could not plant a wrong-parity pair");
            at = mark;
            // Redraw from the unused tail only.
            for (std::size_t i = pool.size(); i > mark + 1; --i) {
                const auto j = mark + static_cast<std::size_t>(rng.below(i - mark));
                std::swap(pool[i - 1], pool[j]);
            }
            const auto e1 = take(k);
            VertexSet e2 = meet ? take(k - ell) : take(k);
            if (meet) {
                auto shared = e1.members();
                for (int i = 0; i < ell; ++i) e2.insert(shared[static_cast<std::size_t>(i)]);
            }
            if (spec.contains(e1) || spec.contains(e2)) continue;
            if (base.contains(e1) || base.contains(e2)) continue;
            planted.push_back(e1);
            planted.push_back(e2);
            out.pairs.emplace_back(e1, e2);
            break;
        }
    }
    auto p = base.predicate();
    out.graph = Hypergraph::implicit(n, k, Structure::predicate, [p, planted](const VertexSet& e) {
        return p(e) || std::find(planted.begin(), planted.end(), e) != planted.end();
    });
    return out;
}

}  // namespace hamlab
