#include "hamlab/kpartite.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <future>
#include <memory>
#include <numeric>
#include <unordered_map>

#include "hamlab/extremal.hpp"

namespace hamlab {

namespace {

using Pools = std::vector<std::vector<Vertex>>;

auto part_lookup(const Hypergraph& f) -> std::vector<int> {
    std::vector<int> out(static_cast<std::size_t>(f.n()), -1);
    const auto& parts = f.parts();
    for (std::size_t p = 0; p < parts.size(); ++p) {
        for (Vertex v : parts[p]) out[static_cast<std::size_t>(v)] = static_cast<int>(p);
    }
    return out;
}

auto to_set(const std::vector<Vertex>& vs) -> VertexSet {
    VertexSet s;
    for (Vertex v : vs) s.insert(v);
    return s;
}

auto without(const std::vector<Vertex>& pool, const VertexSet& drop) -> std::vector<Vertex> {
    std::vector<Vertex> out;
    for (Vertex v : pool) {
        if (!drop.contains(v)) out.push_back(v);
    }
    return out;
}

auto product_size(const Pools& pools) -> std::int64_t {
    std::int64_t total = 1;
    for (const auto& p : pools) {
        total *= static_cast<std::int64_t>(p.size());
        if (total > (std::int64_t{1} << 40)) return total;
    }
    return total;
}

template <typename F>
auto for_each_transversal(const Pools& pools, std::size_t at, VertexSet& current, F& visit) -> bool {
    if (at == pools.size()) return visit(current);
    for (Vertex v : pools[at]) {
        current.insert(v);
        const bool go = for_each_transversal(pools, at + 1, current, visit);
        current.erase(v);
        if (!go) return false;
    }
    return true;
}

template <typename F>
auto for_each_transversal(const Pools& pools, F&& visit) -> bool {
    VertexSet current;
    return for_each_transversal(pools, 0, current, visit);
}

auto random_transversal(const Pools& pools, Rng& rng) -> VertexSet {
    VertexSet s;
    for (const auto& p : pools) s.insert(rng.pick(p));
    return s;
}

auto any_empty(const Pools& pools) -> bool {
    return std::any_of(pools.begin(), pools.end(), [](const auto& p) { return p.empty(); });
}

// Small products are enumerated in shuffled order, large ones sampled.
auto find_transversal(const Pools& pools, Rng& rng, int tries, const std::function<bool(const VertexSet&)>& pred)
    -> std::optional<VertexSet> {
    if (any_empty(pools)) return std::nullopt;
    if (product_size(pools) <= 4096) {
        std::vector<VertexSet> all;
        for_each_transversal(pools, [&](const VertexSet& t) {
            all.push_back(t);
            return true;
        });
        rng.shuffle(all);
        for (const auto& t : all) {
            if (pred(t)) return t;
        }
        return std::nullopt;
    }
    for (int i = 0; i < tries; ++i) {
        auto t = random_transversal(pools, rng);
        if (pred(t)) return t;
    }
    return std::nullopt;
}

auto pools_for(const Hypergraph& f, const std::vector<int>& part_ids, const VertexSet& used) -> Pools {
    Pools out;
    for (int p : part_ids) out.push_back(without(f.parts()[static_cast<std::size_t>(p)], used));
    return out;
}

auto ipow(std::int64_t b, int e) -> double {
    double r = 1.0;
    for (int i = 0; i < e; ++i) r *= static_cast<double>(b);
    return r;
}

}  // namespace

// ---------------------------------------------------------------------------
// Partition planning

auto plan_options(int k, int m, int a1, int eta, std::optional<int> k1_hint) -> std::vector<PartitionPlan> {
    require(k >= 5, "partition planning needs k >= 5");
    require(m >= 1, "need m >= 1");
    require(a1 >= 0 && a1 <= k * m, "|A ∖ (L ∪ R)| must lie in 0..k·m");
    require(eta == 0 || eta == 1, "eta must be 0 or 1");
    if (((a1 - eta * m) % 2 + 2) % 2 != 0) {
        throw PreconditionError("parity infeasible: s + k1·m and eta·m differ mod 2");
    }
    const int k1 = k1_hint.value_or(a1 / m);
    require(k1 >= 2 && k1 <= k - 3, "need 2 <= k1 <= k-3");
    const bool even = (k1 - eta) % 2 == 0;
    const int xa = even ? k1 - 2 : k1 - 1;
    const int ya = even ? k1 + 2 : k1 + 3;
    const int b1 = k * m - a1;

    std::vector<PartitionPlan> out;
    auto attempt = [&](int len, int ea) {
        const int mm = m - len / k;
        const int ap = a1 - ea;
        const int bp = b1 - (len - ea);
        if (mm < 2 || ap < 0 || bp < 0) return;
        // xa·x + ya·(mm − x) = ap, and ya − xa = 4
        const int num = ya * mm - ap;
        if (num <= 0 || num % 4 != 0) return;
        const int x = num / 4;
        const int y = mm - x;
        if (x < 1 || y < 1) return;
        PartitionPlan p;
        p.case_id = even ? (len == 0 ? 1 : 2) : (len == 0 ? 3 : 4);
        p.k = k;
        p.m = m;
        p.k1 = k1;
        p.s = a1 - k1 * m;
        p.eta = eta;
        p.a1 = a1;
        p.x = x;
        p.y = y;
        p.e_len = len;
        p.e_a = ea;
        p.x_parts_in_a = xa;
        p.y_parts_in_a = ya;
        out.push_back(std::move(p));
    };
    attempt(0, 0);
    for (int ea = eta; ea <= k; ea += 2) attempt(k, ea);
    for (int ea = 0; ea <= 2 * k; ea += 2) attempt(2 * k, ea);
    if (out.empty()) {
        throw Error("no integral partition plan for k=" + std::to_string(k) + ", m=" + std::to_string(m) +
                    ", |A|=" + std::to_string(a1));
    }
    return out;
}

auto plan_partition(int k, int m, int a1, int eta, std::optional<int> k1) -> PartitionPlan {
    return plan_options(k, m, a1, eta, k1).front();
}

auto plan_partition(const ExtremalSpec& spec, const VertexSet& removed, std::optional<int> k1) -> PartitionPlan {
    const int rest = spec.n - removed.size();
    require(rest % spec.k == 0, "k must divide |V ∖ (L ∪ R)|");
    return plan_partition(spec.k, rest / spec.k, (spec.a - removed).size(), spec.eta, k1);
}

auto check_plan(const PartitionPlan& plan, const ExtremalSpec& spec, const VertexSet& removed, std::uint64_t seed,
                int samples) -> std::vector<std::string> {
    std::vector<std::string> bad;
    const int k = plan.k;
    if (static_cast<int>(plan.x_parts.size()) != k || static_cast<int>(plan.y_parts.size()) != k) {
        bad.push_back("plan is not realized with k X-parts and k Y-parts");
        return bad;
    }
    VertexSet seen = removed;
    int overlap = 0;
    auto take = [&](const VertexSet& s) {
        if (!seen.disjoint(s)) ++overlap;
        seen |= s;
    };
    for (const auto& p : plan.x_parts) take(p);
    for (const auto& p : plan.y_parts) take(p);
    const auto e_vertices = plan.e.vertices();
    take(e_vertices);
    if (overlap > 0) bad.push_back("parts overlap");
    if (seen != VertexSet::prefix(spec.n)) bad.push_back("parts, E and L ∪ R do not cover V");
    if (e_vertices.size() != plan.e_len) bad.push_back("|V(E)| differs from the plan");
    if ((e_vertices & spec.a).size() != plan.e_a) bad.push_back("|E ∩ A| differs from the plan");

    auto check_box = [&](const std::vector<VertexSet>& parts, int size, int in_a, const char* name) {
        int a_parts = 0;
        for (const auto& p : parts) {
            if (p.size() != size) bad.push_back(std::string(name) + "-part of wrong size");
            const int inside = (p & spec.a).size();
            if (inside == p.size()) {
                ++a_parts;
            } else if (inside != 0) {
                bad.push_back(std::string(name) + "-part meets both A and B");
            }
        }
        if (a_parts != in_a) bad.push_back(std::string(name) + "-box has the wrong number of A-parts");
        Pools pools;
        for (const auto& p : parts) pools.push_back(p.members());
        if (any_empty(pools)) return;
        Rng rng(seed);
        for (int i = 0; i < samples; ++i) {
            if (!spec.contains(random_transversal(pools, rng))) {
                bad.push_back(std::string(name) + "-box edge outside B");
                return;
            }
        }
    };
    check_box(plan.x_parts, plan.x, plan.x_parts_in_a, "X");
    check_box(plan.y_parts, plan.y, plan.y_parts_in_a, "Y");
    return bad;
}

// ---------------------------------------------------------------------------
// Hall matchings

auto hall_matching(int right_count, const std::vector<std::vector<int>>& adjacency) -> HallResult {
    const int left = static_cast<int>(adjacency.size());
    HallResult out;
    out.match.assign(static_cast<std::size_t>(left), -1);
    std::vector<int> owner(static_cast<std::size_t>(right_count), -1);
    std::vector<int> stamp(static_cast<std::size_t>(right_count), -1);

    std::function<bool(int, int)> augment = [&](int u, int round) {
        for (int r : adjacency[static_cast<std::size_t>(u)]) {
            auto& st = stamp[static_cast<std::size_t>(r)];
            if (st == round) continue;
            st = round;
            auto& o = owner[static_cast<std::size_t>(r)];
            if (o == -1 || augment(o, round)) {
                o = u;
                out.match[static_cast<std::size_t>(u)] = r;
                return true;
            }
        }
        return false;
    };
    int free_left = -1;
    for (int u = 0; u < left; ++u) {
        if (!augment(u, u) && free_left < 0) free_left = u;
    }
    out.perfect = free_left < 0;
    if (out.perfect) return out;

    // Alternating reachability from an unmatched left vertex: |N(S)| = |S| − 1.
    std::vector<char> seen_left(static_cast<std::size_t>(left), 0);
    std::vector<char> seen_right(static_cast<std::size_t>(right_count), 0);
    std::vector<int> queue{free_left};
    seen_left[static_cast<std::size_t>(free_left)] = 1;
    for (std::size_t i = 0; i < queue.size(); ++i) {
        for (int r : adjacency[static_cast<std::size_t>(queue[i])]) {
            if (seen_right[static_cast<std::size_t>(r)]) continue;
            seen_right[static_cast<std::size_t>(r)] = 1;
            out.neighbours.push_back(r);
            const int o = owner[static_cast<std::size_t>(r)];
            if (o >= 0 && !seen_left[static_cast<std::size_t>(o)]) {
                seen_left[static_cast<std::size_t>(o)] = 1;
                queue.push_back(o);
            }
        }
    }
    out.deficient = queue;
    std::sort(out.deficient.begin(), out.deficient.end());
    std::sort(out.neighbours.begin(), out.neighbours.end());
    return out;
}

// ---------------------------------------------------------------------------
// k-partite helpers

auto is_transversal(const Hypergraph& f, const VertexSet& s) -> bool {
    const auto lookup = part_lookup(f);
    std::vector<char> hit(f.parts().size(), 0);
    bool ok = true;
    s.for_each([&](Vertex v) {
        if (v < 0 || v >= f.n()) {
            ok = false;
            return;
        }
        const int p = lookup[static_cast<std::size_t>(v)];
        if (p < 0 || hit[static_cast<std::size_t>(p)]) {
            ok = false;
            return;
        }
        hit[static_cast<std::size_t>(p)] = 1;
    });
    return ok;
}

auto box_deficit(const Hypergraph& f, const VertexSet& j, Budget& budget) -> std::int64_t {
    require(!f.parts().empty(), "box_deficit needs a k-partite hypergraph");
    require(is_transversal(f, j), "J must meet each part at most once");
    const auto lookup = part_lookup(f);
    std::vector<char> hit(f.parts().size(), 0);
    j.for_each([&](Vertex v) { hit[static_cast<std::size_t>(lookup[static_cast<std::size_t>(v)])] = 1; });
    Pools pools;
    for (std::size_t p = 0; p < hit.size(); ++p) {
        if (!hit[p]) pools.push_back(f.parts()[p]);
    }
    budget.charge(static_cast<std::uint64_t>(product_size(pools)));
    std::int64_t missing = 0;
    VertexSet current = j;
    auto visit = [&](const VertexSet& e) {
        if (!f.contains(e)) ++missing;
        return true;
    };
    for_each_transversal(pools, 0, current, visit);
    return missing;
}

auto box_typical(const Hypergraph& f, const VertexSet& j, double alpha, Budget& budget) -> bool {
    const int k = static_cast<int>(f.parts().size());
    const auto m = static_cast<std::int64_t>(f.parts().front().size());
    bool ok = true;
    for (int r = 1; r <= j.size() && ok; ++r) {
        for_each_subset(j, r, [&](const VertexSet& sub) {
            if (static_cast<double>(box_deficit(f, sub, budget)) > alpha * ipow(m, k - r)) ok = false;
            return ok;
        });
    }
    return ok;
}

// ---------------------------------------------------------------------------
// Bipartite base case

auto ham_path_bipartite_base(const Hypergraph& g, Vertex a, Vertex b, Budget& budget, std::int64_t node_cap)
    -> SegPath {
    require(g.k() == 2 && g.parts().size() == 2, "base case needs a bipartite 2-graph with two parts");
    const auto& parts = g.parts();
    const int m = static_cast<int>(parts[0].size());
    require(static_cast<int>(parts[1].size()) == m, "parts must have equal size");
    const auto lookup = part_lookup(g);
    require(a >= 0 && a < g.n() && b >= 0 && b < g.n(), "endpoint outside 0..n-1");
    const int pa = lookup[static_cast<std::size_t>(a)];
    const int pb = lookup[static_cast<std::size_t>(b)];
    require(pa >= 0 && pb >= 0, "endpoints must lie in the parts");
    require(pa != pb, "endpoints must lie in opposite parts");

    // Local indices: side s, position i -> parts[s][i].
    auto index_of = [&](int side, Vertex v) {
        const auto& p = parts[static_cast<std::size_t>(side)];
        return static_cast<int>(std::find(p.begin(), p.end(), v) - p.begin());
    };
    std::vector<std::vector<char>> adj(static_cast<std::size_t>(m), std::vector<char>(static_cast<std::size_t>(m), 0));
    budget.charge(static_cast<std::uint64_t>(m) * static_cast<std::uint64_t>(m));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < m; ++j) {
            VertexSet e;
            e.insert(parts[0][static_cast<std::size_t>(i)]);
            e.insert(parts[1][static_cast<std::size_t>(j)]);
            adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = g.contains(e) ? 1 : 0;
        }
    }
    auto linked = [&](int side, int i, int j) {  // i on `side`, j on the other
        return side == 0 ? adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0
                         : adj[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] != 0;
    };
    std::vector<std::vector<char>> used(2, std::vector<char>(static_cast<std::size_t>(m), 0));
    const int start = index_of(pa, a);
    const int goal = index_of(pb, b);
    std::vector<int> seq{start};
    used[static_cast<std::size_t>(pa)][static_cast<std::size_t>(start)] = 1;
    std::int64_t nodes = 0;

    auto free_degree = [&](int side, int i) {
        int d = 0;
        const int other = 1 - side;
        for (int j = 0; j < m; ++j) {
            if (!used[static_cast<std::size_t>(other)][static_cast<std::size_t>(j)] && linked(side, i, j)) ++d;
        }
        return d;
    };

    std::function<bool(int)> dfs = [&](int side) -> bool {
        if (++nodes > node_cap) throw Error("bipartite base case: no Hamilton path found within the node budget");
        const int cur = seq.back();
        const int other = 1 - side;
        const int placed = static_cast<int>(seq.size());
        if (placed == 2 * m - 1) {
            if (!linked(side, cur, goal)) return false;
            seq.push_back(goal);
            return true;
        }
        // Every unused vertex other than the goal still needs a free neighbour.
        for (int s = 0; s < 2; ++s) {
            for (int i = 0; i < m; ++i) {
                if (used[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)]) continue;
                if (s == pb && i == goal) continue;
                bool touches_cur = (s == other) && linked(side, cur, i);
                if (!touches_cur && free_degree(s, i) == 0) return false;
            }
        }
        std::vector<std::pair<int, int>> options;
        for (int j = 0; j < m; ++j) {
            if (used[static_cast<std::size_t>(other)][static_cast<std::size_t>(j)]) continue;
            if (other == pb && j == goal) continue;
            if (!linked(side, cur, j)) continue;
            options.emplace_back(free_degree(other, j), j);
        }
        std::sort(options.begin(), options.end());
        for (const auto& [deg, j] : options) {
            used[static_cast<std::size_t>(other)][static_cast<std::size_t>(j)] = 1;
            seq.push_back(j);
            if (dfs(other)) return true;
            seq.pop_back();
            used[static_cast<std::size_t>(other)][static_cast<std::size_t>(j)] = 0;
        }
        return false;
    };
    if (!dfs(pa)) throw Error("bipartite base case: no Hamilton path with the given ends");
    SegPath out;
    out.ell = 1;
    for (std::size_t i = 0; i < seq.size(); ++i) {
        const int side = (i % 2 == 0) ? pa : 1 - pa;
        VertexSet s;
        s.insert(parts[static_cast<std::size_t>(side)][static_cast<std::size_t>(seq[i])]);
        out.segments.push_back(s);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Inductive builder

namespace {

struct Gadget {
    VertexSet first;  // L_{2i−1}
    VertexSet minus;  // R⁻_{2i}
    VertexSet second; // L_{2i}
};

class Builder {
public:
    Builder(Rng& rng, Budget& budget, const KPathConfig& config, KPathStats& stats)
        : rng_(rng), budget_(budget), config_(config), stats_(stats) {}

    auto run(const Hypergraph& f, int ell, const VertexSet& left, const VertexSet& right) -> SegPath {
        const auto& parts = f.parts();
        const int k = static_cast<int>(parts.size());
        require(k >= 2 && k == f.k(), "need a k-partite k-graph with k >= 2");
        const int m = static_cast<int>(parts.front().size());
        for (const auto& p : parts) require(static_cast<int>(p.size()) == m, "parts must have equal size");
        require(ell >= 1 && ell <= k - 1, "need 1 <= ell <= k-1");
        require(left.size() == ell && right.size() == k - ell, "ends must have sizes ell and k-ell");
        require(left.disjoint(right) && is_transversal(f, left | right), "L ∪ R must meet every part once");

        if (2 * ell > k) {
            auto p = run(f, k - ell, right, left).reversed();
            p.ell = ell;
            return p;
        }
        if (k == 2) return ham_path_bipartite_base(f, left.min(), right.min(), budget_, config_.dfs_nodes);
        const int q = std::max(1, m / (16 * k));
        if (m < config_.n0 || m < 2 * q + 2) {
            ++stats_.fallbacks;
            return exhaustive(f, ell, left, right);
        }

        std::string last = "no attempt made";
        std::optional<HallFailure> hall;
        for (int attempt = 0; attempt < config_.retries; ++attempt) {
            ++stats_.attempts;
            try {
                return attempt_once(f, ell, left, right, q);
            } catch (const HallFailure& e) {
                if (structural(f, e)) throw;
                hall.emplace(e);
                last = e.what();
            } catch (const BudgetExceeded&) {
                throw;
            } catch (const PreconditionError&) {
                throw;
            } catch (const Error& e) {
                hall.reset();
                last = e.what();
            }
        }
        if (hall) throw *hall;
        throw Error("k-partite path: " + last + " (after " + std::to_string(config_.retries) + " attempts)");
    }

private:
    // An isolated vertex of X_k′ cannot be fixed by resampling.
    auto structural(const Hypergraph& f, const HallFailure& e) -> bool {
        const int k = static_cast<int>(f.parts().size());
        const double full = ipow(static_cast<std::int64_t>(f.parts().front().size()), k - 1);
        for (Vertex v : e.deficient()) {
            VertexSet s;
            s.insert(v);
            if (static_cast<double>(box_deficit(f, s, budget_)) >= full) return true;
        }
        return false;
    }

    auto exhaustive(const Hypergraph& f, int ell, const VertexSet& left, const VertexSet& right) -> SegPath {
        const auto lookup = part_lookup(f);
        const int k = static_cast<int>(f.parts().size());
        const int m = static_cast<int>(f.parts().front().size());
        std::vector<int> lparts, rparts;
        std::vector<char> is_left(static_cast<std::size_t>(k), 0);
        left.for_each([&](Vertex v) { is_left[static_cast<std::size_t>(lookup[static_cast<std::size_t>(v)])] = 1; });
        for (int p = 0; p < k; ++p) (is_left[static_cast<std::size_t>(p)] ? lparts : rparts).push_back(p);

        std::vector<VertexSet> seq{left};
        VertexSet used = left | right;
        std::int64_t nodes = 0;
        std::function<bool()> dfs = [&]() -> bool {
            if (++nodes > config_.dfs_nodes) throw Error("exhaustive k-partite search exceeded its node budget");
            budget_.charge(1);
            const int c = static_cast<int>(seq.size());
            const auto& tail = seq.back();
            if (c == 2 * m - 1) {
                if (!f.contains(tail | right)) return false;
                seq.push_back(right);
                return true;
            }
            const auto pools = pools_for(f, (c % 2 == 1) ? rparts : lparts, used);
            std::vector<VertexSet> options;
            for_each_transversal(pools, [&](const VertexSet& t) {
                if (f.contains(tail | t)) options.push_back(t);
                return true;
            });
            rng_.shuffle(options);
            for (const auto& t : options) {
                seq.push_back(t);
                used |= t;
                if (dfs()) return true;
                used -= t;
                seq.pop_back();
            }
            return false;
        };
        if (!dfs()) throw Error("exhaustive k-partite search: no Hamilton path with the given ends");
        SegPath out;
        out.ell = ell;
        out.segments = std::move(seq);
        return out;
    }

    auto attempt_once(const Hypergraph& f, int ell, const VertexSet& left, const VertexSet& right, int q) -> SegPath {
        const auto& parts = f.parts();
        const int k = static_cast<int>(parts.size());
        const int m = static_cast<int>(parts.front().size());
        const auto lookup = part_lookup(f);
        const double alpha_p = std::sqrt(std::pow(2.0, k) * config_.alpha);
        const int tries = config_.sample_tries;

        std::vector<int> lparts, rparts;
        std::vector<char> is_left(static_cast<std::size_t>(k), 0);
        left.for_each([&](Vertex v) { is_left[static_cast<std::size_t>(lookup[static_cast<std::size_t>(v)])] = 1; });
        for (int p = 0; p < k; ++p) (is_left[static_cast<std::size_t>(p)] ? lparts : rparts).push_back(p);

        // X_k: the R-side part holding the vertex of least degree.
        int xk = rparts.back();
        std::int64_t worst = -1;
        for (int p : rparts) {
            for (Vertex v : parts[static_cast<std::size_t>(p)]) {
                if (right.contains(v)) continue;
                VertexSet s;
                s.insert(v);
                const auto d = box_deficit(f, s, budget_);
                if (d > worst) {
                    worst = d;
                    xk = p;
                }
            }
        }
        std::vector<int> rminus;
        for (int p : rparts) {
            if (p != xk) rminus.push_back(p);
        }
        const auto& xk_part = parts[static_cast<std::size_t>(xk)];

        auto good = [&](const VertexSet& j) {
            return static_cast<double>(box_deficit(f, j, budget_)) <= alpha_p * ipow(m, k - j.size());
        };
        auto with = [](const VertexSet& a, Vertex x) {
            VertexSet s = a;
            s.insert(x);
            return s;
        };

        VertexSet used = left | right;

        // Gadgets L R⁻ L′, rejection-sampled; among passing draws keep the one
        // serving most vertices of X_k.
        std::vector<Gadget> gadgets;
        for (int i = 0; i < q; ++i) {
            std::optional<Gadget> best;
            int best_score = -1;
            int passing = 0;
            for (int t = 0; t < tries && passing < 8; ++t) {
                auto lp = pools_for(f, lparts, used);
                auto rp = pools_for(f, rminus, used);
                if (any_empty(lp) || any_empty(rp)) break;
                const auto l1 = random_transversal(lp, rng_);
                lp = pools_for(f, lparts, used | l1);
                if (any_empty(lp)) break;
                const auto l2 = random_transversal(lp, rng_);
                const auto rm = random_transversal(rp, rng_);
                if (!good(l1) || !good(l2) || !good(l1 | rm) || !good(rm | l2)) continue;
                ++passing;
                int score = 0;
                for (Vertex x : xk_part) {
                    if (used.contains(x)) continue;
                    if (f.contains(with(l1 | rm, x)) && f.contains(with(rm | l2, x))) ++score;
                }
                if (score > best_score) {
                    best_score = score;
                    best = Gadget{l1, rm, l2};
                }
            }
            if (!best) throw Error("gadget sampling found no admissible L R⁻ L′");
            used |= best->first | best->minus | best->second;
            gadgets.push_back(*best);
        }

        // R_1 joins L_0 to L_1; R_{2i+1} joins L_{2i} to L_{2i+1}.
        std::vector<VertexSet> r_odd;
        for (int i = 0; i < q; ++i) {
            auto found = find_transversal(pools_for(f, rparts, used), rng_, tries, [&](const VertexSet& r) {
                if (!f.contains(r | gadgets[static_cast<std::size_t>(i)].first)) return false;
                return i == 0 || f.contains(gadgets[static_cast<std::size_t>(i - 1)].second | r);
            });
            if (!found) throw Error("no connecting (k-ell)-set between consecutive gadgets");
            used |= *found;
            r_odd.push_back(*found);
        }
        auto l0 = find_transversal(pools_for(f, lparts, used), rng_, tries, [&](const VertexSet& l) {
            return f.contains(right | l) && f.contains(l | r_odd.front());
        });
        if (!l0) throw Error("no L_0 joining R and R_1");
        used |= *l0;

        // Leftovers: X_k′ gets matched, the other k−1 parts carry the spine.
        const auto xk_rest = without(xk_part, used);
        const VertexSet xk_rest_set = to_set(xk_rest);
        std::vector<std::vector<Vertex>> spine_parts;
        for (int p : lparts) spine_parts.push_back(without(parts[static_cast<std::size_t>(p)], used - left));
        for (int p : rminus) spine_parts.push_back(without(parts[static_cast<std::size_t>(p)], used));
        const int spine_m = m - 2 * q - 1;
        for (const auto& p : spine_parts) {
            if (static_cast<int>(p.size()) != spine_m) throw Error("internal: spine parts have unequal sizes");
        }

        // Deficit of a (k−1)-set over X_k′, memoized across threshold changes.
        auto memo = std::make_shared<std::unordered_map<VertexSet, int, VertexSetHash>>();
        auto deficit = [memo, f, xk_rest](const VertexSet& j) {
            auto it = memo->find(j);
            if (it != memo->end()) return it->second;
            int d = 0;
            for (Vertex x : xk_rest) {
                VertexSet e = j;
                e.insert(x);
                if (!f.contains(e)) ++d;
            }
            memo->emplace(j, d);
            return d;
        };

        double fraction = config_.spine_fraction.value_or(1.0 / (128.0 * k));
        SegPath spine;
        VertexSet r_last;
        while (true) {
            const int threshold = static_cast<int>(std::floor(fraction * m));
            Pools rp;
            for (std::size_t i = lparts.size(); i < spine_parts.size(); ++i) rp.push_back(spine_parts[i]);
            // R⁻_{2q+1}: best served from L_{2q}.
            std::optional<VertexSet> pick;
            int best_score = 0;
            const auto& tail = gadgets.back().second;
            auto consider = [&](const VertexSet& r) {
                if (spine_m == 1 && deficit(left | r) > threshold) return true;
                int score = 0;
                for (Vertex x : xk_rest) {
                    if (f.contains(with(tail | r, x))) ++score;
                }
                if (score > best_score) {
                    best_score = score;
                    pick = r;
                }
                return score < static_cast<int>(xk_rest.size());
            };
            if (product_size(rp) <= 4096) {
                for_each_transversal(rp, consider);
            } else {
                for (int t = 0; t < tries && consider(random_transversal(rp, rng_)); ++t) {
                }
            }
            if (!pick) throw Error("no R⁻ to start the spine");
            r_last = *pick;

            auto spine_graph = Hypergraph::kpartite_restricted(
                f.n(), spine_parts, [deficit, threshold](const VertexSet& j) { return deficit(j) <= threshold; });
            try {
                spine = run(spine_graph, ell, left, r_last);
                break;
            } catch (const BudgetExceeded&) {
                throw;
            } catch (const Error&) {
                if (fraction >= 1.0) throw;
                fraction = std::min(1.0, fraction * 4.0);
                ++stats_.relaxations;
            }
        }

        // Slots: (previous L, R⁻, next L). Gadget slots first, then spine slots.
        struct Slot {
            VertexSet prev, minus, next;
        };
        std::vector<Slot> slots;
        for (const auto& g : gadgets) slots.push_back({g.first, g.minus, g.second});
        auto rev = spine.reversed().segments;  // R⁻_{2q+1}, L_{2q+1}, ..., R⁻_{m−1}, L
        for (std::size_t i = 0; i < rev.size(); i += 2) {
            const auto& prev = (i == 0) ? gadgets.back().second : rev[i - 1];
            slots.push_back({prev, rev[i], rev[i + 1]});
        }
        const int nx = static_cast<int>(xk_rest.size());
        if (static_cast<int>(slots.size()) != nx) throw Error("internal: slot count differs from |X_k′|");

        std::vector<std::vector<int>> adj(static_cast<std::size_t>(nx));
        std::vector<int> spine_degree(static_cast<std::size_t>(nx), 0);
        for (int xi = 0; xi < nx; ++xi) {
            const Vertex x = xk_rest[static_cast<std::size_t>(xi)];
            for (int si = 0; si < nx; ++si) {
                const auto& s = slots[static_cast<std::size_t>(si)];
                if (f.contains(with(s.prev | s.minus, x)) && f.contains(with(s.minus | s.next, x))) {
                    adj[static_cast<std::size_t>(xi)].push_back(si);
                    if (si >= q) ++spine_degree[static_cast<std::size_t>(xi)];
                }
            }
        }
        budget_.charge(static_cast<std::uint64_t>(2 * nx) * static_cast<std::uint64_t>(nx));

        std::vector<int> assign(static_cast<std::size_t>(nx), -1);  // slot -> x index
        // Split: the q vertices of least spine degree go to the gadgets.
        std::vector<int> order(static_cast<std::size_t>(nx));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return spine_degree[static_cast<std::size_t>(a)] < spine_degree[static_cast<std::size_t>(b)];
        });
        bool split_ok = true;
        {
            std::vector<int> ys(order.begin(), order.begin() + q);
            std::vector<int> zs(order.begin() + q, order.end());
            std::sort(ys.begin(), ys.end());
            std::sort(zs.begin(), zs.end());
            std::vector<std::vector<int>> a_y, a_z;
            for (int xi : ys) {
                std::vector<int> row;
                for (int si : adj[static_cast<std::size_t>(xi)]) {
                    if (si < q) row.push_back(si);
                }
                a_y.push_back(row);
            }
            for (int xi : zs) {
                std::vector<int> row;
                for (int si : adj[static_cast<std::size_t>(xi)]) {
                    if (si >= q) row.push_back(si - q);
                }
                a_z.push_back(row);
            }
            const auto my = hall_matching(q, a_y);
            const auto mz = hall_matching(nx - q, a_z);
            if (my.perfect && mz.perfect) {
                for (std::size_t i = 0; i < ys.size(); ++i) assign[static_cast<std::size_t>(my.match[i])] = ys[i];
                for (std::size_t i = 0; i < zs.size(); ++i) assign[static_cast<std::size_t>(mz.match[i] + q)] = zs[i];
            } else {
                split_ok = false;
            }
        }
        if (!split_ok) {
            ++stats_.combined_matchings;
            const auto all = hall_matching(nx, adj);
            if (!all.perfect) {
                std::vector<Vertex> witness;
                for (int xi : all.deficient) witness.push_back(xk_rest[static_cast<std::size_t>(xi)]);
                throw HallFailure("Hall condition fails: " + std::to_string(witness.size()) +
                                      " vertices of X_k′ have only " + std::to_string(all.neighbours.size()) +
                                      " admissible slots",
                                  witness, static_cast<int>(all.neighbours.size()));
            }
            for (int xi = 0; xi < nx; ++xi) assign[static_cast<std::size_t>(all.match[static_cast<std::size_t>(xi)])] = xi;
        }

        // R L_0 R_1 L_1 (R⁻_2 x) L_2 R_3 ... L_{2q} (R⁻_{2q+1} x) L_{2q+1} ... (R⁻_{m−1} x) L
        std::vector<VertexSet> seq{right, *l0};
        for (int i = 0; i < q; ++i) {
            const auto& g = gadgets[static_cast<std::size_t>(i)];
            const Vertex x = xk_rest[static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])];
            seq.push_back(r_odd[static_cast<std::size_t>(i)]);
            seq.push_back(g.first);
            seq.push_back(with(g.minus, x));
            seq.push_back(g.second);
        }
        for (std::size_t i = 0; i < rev.size(); i += 2) {
            const auto slot = static_cast<std::size_t>(q) + i / 2;
            const Vertex x = xk_rest[static_cast<std::size_t>(assign[slot])];
            seq.push_back(with(rev[i], x));
            seq.push_back(rev[i + 1]);
        }
        SegPath out;
        out.ell = k - ell;
        out.segments = std::move(seq);
        out = out.reversed();
        out.ell = ell;
        const auto report = validate_path(f, out);
        if (!report.ok) throw Error("internal: assembled path fails validation: " + report.message);
        if (out.vertex_count() != k * m) throw Error("internal: assembled path is not Hamilton");
        (void)xk_rest_set;
        return out;
    }

    Rng& rng_;
    Budget& budget_;
    const KPathConfig& config_;
    KPathStats& stats_;
};

}  // namespace

auto build_ham_path_kpartite(const Hypergraph& f, int ell, const VertexSet& left, const VertexSet& right, Rng& rng,
                             Budget& budget, const KPathConfig& config, KPathStats* stats) -> SegPath {
    require(!f.parts().empty(), "build_ham_path_kpartite needs a k-partite hypergraph");
    KPathStats local;
    Builder builder(rng, budget, config, stats ? *stats : local);
    return builder.run(f, ell, left, right);
}

// ---------------------------------------------------------------------------
// Tight paths

auto greedy_tight_path(const Hypergraph& f, double c, Budget& budget) -> TightPath {
    const auto& parts = f.parts();
    require(!parts.empty() && static_cast<int>(parts.size()) == f.k(), "greedy_tight_path needs a k-partite k-graph");
    require(c > 0.0, "c must be positive");
    const int k = f.k();
    std::size_t m = 0;
    for (const auto& p : parts) m = std::max(m, p.size());
    require(m > 0, "parts must be non-empty");

    TightPath out;
    out.required = c * static_cast<double>(m);
    budget.charge(static_cast<std::uint64_t>(product_size(parts)));
    std::vector<VertexSet> starts;
    for_each_transversal(parts, [&](const VertexSet& e) {
        if (f.contains(e)) {
            ++out.edges;
            if (starts.size() < 16 || (out.edges % 97 == 0 && starts.size() < 64)) starts.push_back(e);
        }
        return true;
    });
    if (static_cast<double>(out.edges) < c * ipow(static_cast<std::int64_t>(m), k) * (1.0 - 1e-12)) {
        throw PreconditionError("density below c: " + std::to_string(out.edges) + " edges");
    }

    const auto lookup = part_lookup(f);
    std::vector<char> used(static_cast<std::size_t>(f.n()), 0);
    auto window_set = [](const std::vector<Vertex>& w) {
        VertexSet s;
        for (Vertex v : w) s.insert(v);
        return s;
    };
    // Vertices that extend a (k−1)-window; the next part is the one the window misses.
    auto candidates = [&](const std::vector<Vertex>& window, int part) {
        std::vector<Vertex> out_c;
        const auto base = window_set(window);
        for (Vertex v : parts[static_cast<std::size_t>(part)]) {
            if (used[static_cast<std::size_t>(v)]) continue;
            VertexSet e = base;
            e.insert(v);
            if (f.contains(e)) out_c.push_back(v);
        }
        return out_c;
    };
    auto extend = [&](std::vector<Vertex>& path) {
        // Grows at the back; the caller reverses for the other direction.
        while (true) {
            std::vector<Vertex> window(path.end() - (k - 1), path.end());
            const int part = lookup[static_cast<std::size_t>(path[path.size() - static_cast<std::size_t>(k)])];
            const auto options = candidates(window, part);
            budget.charge(parts[static_cast<std::size_t>(part)].size() * (1 + options.size()));
            if (options.empty()) return;
            Vertex best = options.front();
            int best_score = -1;
            for (Vertex v : options) {
                used[static_cast<std::size_t>(v)] = 1;
                std::vector<Vertex> next(window.begin() + 1, window.end());
                next.push_back(v);
                const int next_part = lookup[static_cast<std::size_t>(window.front())];
                const int score = static_cast<int>(candidates(next, next_part).size());
                used[static_cast<std::size_t>(v)] = 0;
                if (score > best_score) {
                    best_score = score;
                    best = v;
                }
            }
            used[static_cast<std::size_t>(best)] = 1;
            path.push_back(best);
        }
    };
    for (const auto& e : starts) {
        std::fill(used.begin(), used.end(), 0);
        std::vector<Vertex> path;
        for (const auto& part : parts) {
            for (Vertex v : part) {
                if (e.contains(v)) path.push_back(v);
            }
        }
        for (Vertex v : path) used[static_cast<std::size_t>(v)] = 1;
        extend(path);
        std::reverse(path.begin(), path.end());
        extend(path);
        if (path.size() > out.vertices.size()) out.vertices = path;
        if (static_cast<double>(out.vertices.size()) >= out.required &&
            out.vertices.size() >= static_cast<std::size_t>(k) * m) {
            break;
        }
    }
    if (static_cast<double>(out.vertices.size()) < out.required) {
        throw Error("greedy stall: tight path on " + std::to_string(out.vertices.size()) + " vertices, need " +
                    std::to_string(out.required));
    }
    return out;
}

auto path_cover_tuple(const Hypergraph& f, int ell, double eps, double d, Budget& budget) -> PathCover {
    const auto& parts = f.parts();
    require(!parts.empty() && static_cast<int>(parts.size()) == f.k(), "path_cover_tuple needs a k-partite k-graph");
    const int k = f.k();
    require(ell >= 1 && ell <= k - 1, "need 1 <= ell <= k-1");
    require(eps > 0.0 && d > 2.0 * eps, "need eps > 0 and d > 2 eps");
    const int m = static_cast<int>(parts.front().size());
    for (const auto& p : parts) require(static_cast<int>(p.size()) == m, "parts must have equal size");
    const double threshold = static_cast<double>(k) / (eps * (d - eps));
    require(static_cast<double>(m) > threshold,
            "m below threshold: need m > k/(eps(d-eps)) = " + std::to_string(threshold));

    PathCover out;
    out.uncovered_bound = k * eps * m;
    out.count_bound = k / ((d - 2.0 * eps) * eps);
    std::vector<std::vector<Vertex>> left = parts;
    auto total = [&] {
        int t = 0;
        for (const auto& p : left) t += static_cast<int>(p.size());
        return t;
    };
    while (true) {
        int smallest = m;
        for (const auto& p : left) smallest = std::min(smallest, static_cast<int>(p.size()));
        if ((smallest < eps * m && total() <= out.uncovered_bound) || smallest == 0) break;

        // Fullest parts first so the tight path's extra vertices come from them.
        std::vector<int> order(static_cast<std::size_t>(k));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return left[static_cast<std::size_t>(a)].size() > left[static_cast<std::size_t>(b)].size();
        });
        std::vector<std::vector<Vertex>> sub;
        for (int p : order) {
            const auto& src = left[static_cast<std::size_t>(p)];
            sub.emplace_back(src.begin(), src.begin() + smallest);
        }
        const auto box = Hypergraph::kpartite_restricted(f.n(), sub, f.predicate());
        TightPath tight;
        try {
            tight = greedy_tight_path(box, d - eps, budget);
        } catch (const BudgetExceeded&) {
            throw;
        } catch (const Error&) {
            out.stalled = true;
            break;
        }
        SegPath path;
        path.ell = ell;
        std::size_t at = 0;
        for (int i = 0;; ++i) {
            const auto size = static_cast<std::size_t>(i % 2 == 0 ? ell : k - ell);
            if (at + size > tight.vertices.size()) break;
            VertexSet seg;
            for (std::size_t j = at; j < at + size; ++j) seg.insert(tight.vertices[j]);
            path.segments.push_back(seg);
            at += size;
        }
        if (path.segments.size() < 2) {
            out.stalled = true;
            break;
        }
        const auto covered = path.vertices();
        for (auto& p : left) p = without(p, covered);
        out.paths.push_back(std::move(path));
    }
    out.uncovered = total();
    out.uncovered_ok = out.uncovered <= out.uncovered_bound;
    out.count_ok = static_cast<double>(out.paths.size()) <= out.count_bound;
    return out;
}

// ---------------------------------------------------------------------------
// Stability pipeline

auto default_ends(const Hypergraph& g, const ExtremalSpec& spec, int ell) -> std::pair<VertexSet, VertexSet> {
    const int n = g.n();
    const int k = g.k();
    require(ell >= 1 && ell <= k - 1, "need 1 <= ell <= k-1");
    std::optional<std::pair<VertexSet, VertexSet>> found;
    for_each_subset(VertexSet::prefix(n), ell, [&](const VertexSet& l) {
        for_each_subset(VertexSet::prefix(n) - l, k - ell, [&](const VertexSet& r) {
            if (spec.contains(l | r) && g.contains(l | r)) found.emplace(l, r);
            return !found;
        });
        return !found;
    });
    if (!found) throw Error("no edge of G inside B to serve as ends");
    return *found;
}

namespace {

// Vertices drawn from shuffled A and B pools with prescribed A-counts.
class Drawer {
public:
    Drawer(std::vector<Vertex> a, std::vector<Vertex> b) : a_(std::move(a)), b_(std::move(b)) {}
    auto draw(int size, int in_a) -> std::optional<VertexSet> {
        if (in_a < 0 || in_a > size) return std::nullopt;
        if (ai_ + static_cast<std::size_t>(in_a) > a_.size()) return std::nullopt;
        if (bi_ + static_cast<std::size_t>(size - in_a) > b_.size()) return std::nullopt;
        VertexSet s;
        for (int i = 0; i < in_a; ++i) s.insert(a_[ai_++]);
        for (int i = 0; i < size - in_a; ++i) s.insert(b_[bi_++]);
        return s;
    }

private:
    std::vector<Vertex> a_, b_;
    std::size_t ai_ = 0, bi_ = 0;
};

// R-type parts of a box: k−ℓ parts whose A-count has parity `want`.
auto choose_rtype(int k, int ell, int in_a, int want) -> std::optional<std::vector<int>> {
    const int in_b = k - in_a;
    for (int a = want; a <= std::min(in_a, k - ell); a += 2) {
        const int b = k - ell - a;
        if (b < 0 || b > in_b) continue;
        std::vector<int> out;
        for (int i = in_a - a; i < in_a; ++i) out.push_back(i);
        for (int i = k - b; i < k; ++i) out.push_back(i);
        return out;
    }
    return std::nullopt;
}

}  // namespace

auto stability_ham_path(const Hypergraph& g, const ExtremalSpec& spec, int ell, const VertexSet& left,
                        const VertexSet& right, Rng& rng, Budget& budget, const StabilityConfig& config)
    -> StabilityResult {
    const int n = g.n();
    const int k = g.k();
    require(spec.n == n && spec.k == k, "spec and G must share n and k");
    if (f_parity(spec).f == 1) {
        throw Error("parity obstruction: f(B) = 1, no Hamilton path of B can have both ends in B");
    }
    require(k >= 5, "the stability pipeline needs k >= 5");
    require(n % k == 0, "k must divide n");
    require(ell >= 1 && ell <= k - 1, "need 1 <= ell <= k-1");
    require(left.size() == ell && right.size() == k - ell && left.disjoint(right), "ends must be disjoint with sizes ell, k-ell");
    require(spec.contains(left | right), "L ∪ R must be an edge of B");

    StabilityResult out;
    const VertexSet removed = left | right;
    const int m = (n - k) / k;
    const int a1 = (spec.a - removed).size();
    const int eta_l = spec.eta_of(left);
    const int eta_r = spec.eta_of(right);
    const auto options = plan_options(k, m, a1, spec.eta);

    std::vector<Vertex> a_avail = (spec.a - removed).members();
    std::vector<Vertex> b_avail = (spec.b_set() - removed).members();

    std::optional<PartitionPlan> chosen;
    std::vector<int> x_rtype, y_rtype;
    for (auto plan : options) {
        auto xr = choose_rtype(k, ell, plan.x_parts_in_a, eta_r);
        auto yr = choose_rtype(k, ell, plan.y_parts_in_a, eta_r);
        if (!xr || !yr) {
            out.log.push_back("plan case " + std::to_string(plan.case_id) + ": no part orientation with the end parity");
            continue;
        }
        // E: L1 R1 or L1 R2 L2 R1, with η(L1) = η(L), η(R1) = η(R).
        if (plan.e_len > 0) {
            std::vector<std::vector<int>> splits;
            const int segs = plan.e_len == k ? 2 : 4;
            std::vector<int> sizes = segs == 2 ? std::vector<int>{ell, k - ell} : std::vector<int>{ell, k - ell, ell, k - ell};
            std::vector<int> parity = segs == 2 ? std::vector<int>{eta_l, eta_r} : std::vector<int>{eta_l, eta_r, eta_l, eta_r};
            std::vector<int> cur;
            std::function<void(int, int)> gen = [&](int i, int left_a) {
                if (i == segs) {
                    if (left_a == 0) splits.push_back(cur);
                    return;
                }
                for (int a = parity[static_cast<std::size_t>(i)]; a <= std::min(sizes[static_cast<std::size_t>(i)], left_a); a += 2) {
                    cur.push_back(a);
                    gen(i + 1, left_a - a);
                    cur.pop_back();
                }
            };
            gen(0, plan.e_a);
            std::optional<SegPath> e;
            for (int t = 0; t < config.bridge_tries && !e && !splits.empty(); ++t) {
                const auto& split = splits[static_cast<std::size_t>(t) % splits.size()];
                auto as = a_avail;
                auto bs = b_avail;
                rng.shuffle(as);
                rng.shuffle(bs);
                Drawer drawer(as, bs);
                SegPath cand;
                cand.ell = ell;
                bool ok = true;
                for (int i = 0; i < segs && ok; ++i) {
                    auto s = drawer.draw(sizes[static_cast<std::size_t>(i)], split[static_cast<std::size_t>(i)]);
                    if (!s) ok = false;
                    else cand.segments.push_back(*s);
                }
                if (!ok) continue;
                // Stored as L1 ... R1 in path order L1 R2 L2 R1.
                for (int i = 0; i + 1 < segs && ok; ++i) ok = g.contains(cand.edge(i)) && spec.contains(cand.edge(i));
                if (ok) e = cand;
            }
            if (!e) {
                out.log.push_back("plan case " + std::to_string(plan.case_id) + ": no connecting path E found");
                continue;
            }
            plan.e = *e;
        }
        const auto e_vertices = plan.e.vertices();
        const auto ap = (spec.a - removed - e_vertices).members();
        const auto bp = (spec.b_set() - removed - e_vertices).members();
        std::size_t ai = 0, bi = 0;
        auto cut = [&](const std::vector<Vertex>& src, std::size_t& at, int size) {
            VertexSet s;
            for (int i = 0; i < size; ++i) s.insert(src[at++]);
            return s;
        };
        std::vector<VertexSet> xa, xb, ya, yb;
        for (int i = 0; i < plan.x_parts_in_a; ++i) xa.push_back(cut(ap, ai, plan.x));
        for (int i = 0; i < plan.y_parts_in_a; ++i) ya.push_back(cut(ap, ai, plan.y));
        for (int i = 0; i < plan.x_parts_in_b(); ++i) xb.push_back(cut(bp, bi, plan.x));
        for (int i = 0; i < plan.y_parts_in_b(); ++i) yb.push_back(cut(bp, bi, plan.y));
        if (ai != ap.size() || bi != bp.size()) throw Error("internal: plan does not balance");
        plan.x_parts = xa;
        plan.x_parts.insert(plan.x_parts.end(), xb.begin(), xb.end());
        plan.y_parts = ya;
        plan.y_parts.insert(plan.y_parts.end(), yb.begin(), yb.end());
        x_rtype = *xr;
        y_rtype = *yr;
        chosen = std::move(plan);
        break;
    }
    if (!chosen) throw Error("plan: no admissible partition could be realized");
    out.plan = *chosen;
    const auto& plan = out.plan;
    out.log.push_back("plan case " + std::to_string(plan.case_id) + ": x=" + std::to_string(plan.x) +
                      ", y=" + std::to_string(plan.y) + ", |E|=" + std::to_string(plan.e_len));

    auto as_pools = [](const std::vector<VertexSet>& ps) {
        Pools out_p;
        for (const auto& p : ps) out_p.push_back(p.members());
        return out_p;
    };
    const auto fx = Hypergraph::kpartite_restricted(n, as_pools(plan.x_parts), g.predicate());
    const auto fy = Hypergraph::kpartite_restricted(n, as_pools(plan.y_parts), g.predicate());
    auto split_pools = [&](const std::vector<VertexSet>& ps, const std::vector<int>& rtype, bool want_r) {
        Pools out_p;
        for (int i = 0; i < k; ++i) {
            const bool is_r = std::find(rtype.begin(), rtype.end(), i) != rtype.end();
            if (is_r == want_r) out_p.push_back(ps[static_cast<std::size_t>(i)].members());
        }
        return out_p;
    };
    const auto x_l = split_pools(plan.x_parts, x_rtype, false);
    const auto x_r = split_pools(plan.x_parts, x_rtype, true);
    const auto y_l = split_pools(plan.y_parts, y_rtype, false);
    const auto y_r = split_pools(plan.y_parts, y_rtype, true);
    const double alpha_p = std::sqrt(std::pow(2.0, k) * config.kpath.alpha);

    // Adjacent candidates in shuffled order; the first typical one wins,
    // else the first adjacent one is used and the miss is reported.
    auto bridge = [&](const Pools& pools, const Hypergraph& box, const std::function<bool(const VertexSet&)>& adjacent,
                      const std::string& name) -> VertexSet {
        std::optional<VertexSet> fallback;
        std::optional<VertexSet> typical;
        auto consider = [&](const VertexSet& t) {
            if (!adjacent(t)) return false;
            if (!fallback) fallback = t;
            if (box_typical(box, t, alpha_p, budget)) {
                typical = t;
                return true;
            }
            return false;
        };
        find_transversal(pools, rng, config.bridge_tries, consider);
        if (typical) return *typical;
        if (!fallback) throw Error("bridge: no " + name + " adjacent in G");
        out.bridges_typical = false;
        out.log.push_back("bridge " + name + " is not alpha'-typical");
        return *fallback;
    };

    out.r1_star = bridge(x_r, fx, [&](const VertexSet& t) { return g.contains(left | t); }, "R1*");
    out.l2_star = bridge(y_l, fy, [&](const VertexSet& t) { return g.contains(t | right); }, "L2*");
    if (plan.e_len > 0) {
        const auto& e_first = plan.e.segments.front();
        const auto& e_last = plan.e.segments.back();
        out.l1_star = bridge(x_l, fx, [&](const VertexSet& t) { return g.contains(t | e_last); }, "L1*");
        out.r2_star = bridge(y_r, fy, [&](const VertexSet& t) { return g.contains(e_first | t); }, "R2*");
    } else {
        out.l1_star = bridge(x_l, fx, [&](const VertexSet& t) {
            for (int i = 0; i < 64; ++i) {
                if (g.contains(t | random_transversal(y_r, rng))) return true;
            }
            return false;
        }, "L1*");
        out.r2_star = bridge(y_r, fy, [&](const VertexSet& t) { return g.contains(out.l1_star | t); }, "R2*");
    }

    // The two boxes are vertex-disjoint; build them side by side.
    Rng rng_x(rng.next());
    Rng rng_y(rng.next());
    const auto share = (budget.limit() - std::min(budget.limit(), budget.used())) / 2;
    Budget bx(share), by(share);
    auto make = [&](const Hypergraph& box, const VertexSet& l, const VertexSet& r, Rng& rr, Budget& bb) {
        return build_ham_path_kpartite(box, ell, l, r, rr, bb, config.kpath);
    };
    SegPath p1, p2;
    if (config.parallel) {
        auto fut = std::async(std::launch::async, [&] { return make(fy, out.l2_star, out.r2_star, rng_y, by); });
        try {
            p1 = make(fx, out.l1_star, out.r1_star, rng_x, bx);
        } catch (...) {
            fut.wait();
            throw;
        }
        p2 = fut.get();
    } else {
        p1 = make(fx, out.l1_star, out.r1_star, rng_x, bx);
        p2 = make(fy, out.l2_star, out.r2_star, rng_y, by);
    }
    budget.charge(bx.used() + by.used());

    // L, R1* ... L1*, E reversed, R2* ... L2*, R
    std::vector<VertexSet> seq{left};
    for (const auto& s : p1.reversed().segments) seq.push_back(s);
    for (const auto& s : plan.e.reversed().segments) seq.push_back(s);
    for (const auto& s : p2.reversed().segments) seq.push_back(s);
    seq.push_back(right);
    out.path.ell = ell;
    out.path.segments = std::move(seq);
    const auto report = validate_path(g, out.path);
    out.valid = report.ok && out.path.vertex_count() == n;
    if (!report.ok) out.log.push_back("validation: " + report.message);
    return out;
}

}  // namespace hamlab
