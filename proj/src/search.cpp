#include "hamlab/search.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

#include "hamlab/extremal.hpp"

namespace hamlab {

namespace {

using Clock = std::chrono::steady_clock;

/// Shared node/time accounting for one search call; thread-safe.
class Governor {
public:
    explicit Governor(const SearchBudget& b)
        : cap_(b.node_cap),
          deadline_(Clock::now() + std::chrono::duration_cast<Clock::duration>(std::chrono::duration<double>(b.time_cap_seconds))) {}

    /// Count one node; false once a cap has been reached.
    auto tick() -> bool {
        if (stopped_.load(std::memory_order_relaxed)) return false;
        const auto n = nodes_.fetch_add(1, std::memory_order_relaxed) + 1;
        if (n > cap_ || ((n & 0xFFFU) == 0 && Clock::now() > deadline_)) {
            stopped_.store(true, std::memory_order_relaxed);
            return false;
        }
        return true;
    }

    [[nodiscard]] auto stopped() const -> bool { return stopped_.load(std::memory_order_relaxed); }
    [[nodiscard]] auto nodes() const -> std::uint64_t { return std::min(nodes_.load(), cap_); }

private:
    std::uint64_t cap_;
    Clock::time_point deadline_;
    std::atomic<std::uint64_t> nodes_{0};
    std::atomic<bool> stopped_{false};
};

template <typename W>
struct Branch {
    SearchStatus status = SearchStatus::none;
    std::optional<W> witness;
};

/// Run independent top-level branches. The reported witness is always the
/// one from the lowest-index successful branch, so the answer does not depend
/// on the thread count.
template <typename W, typename F>
auto run_branches(std::size_t count, int threads, Governor& gov, F&& branch) -> Branch<W> {
    if (threads <= 1 || count < 2) {
        for (std::size_t i = 0; i < count; ++i) {
            auto r = branch(i);
            if (r.status != SearchStatus::none) return r;
        }
        return {};
    }
    std::vector<Branch<W>> results(count);
    std::vector<char> done(count, 0);
    std::atomic<std::size_t> next{0};
    std::atomic<std::size_t> best{count};
    auto worker = [&] {
        while (true) {
            const auto i = next.fetch_add(1);
            if (i >= count || i > best.load()) return;
            results[i] = branch(i);
            done[i] = 1;
            if (results[i].status == SearchStatus::found) {
                auto cur = best.load();
                while (i < cur && !best.compare_exchange_weak(cur, i)) {
                }
            }
            if (gov.stopped()) return;
        }
    };
    std::vector<std::thread> pool;
    const auto workers = static_cast<std::size_t>(threads);
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
    for (std::size_t i = 0; i < count; ++i) {
        if (!done[i]) return {SearchStatus::unknown, std::nullopt};
        if (results[i].status != SearchStatus::none) return results[i];
    }
    return {};
}

template <typename W>
auto finish(Branch<W> b, const Governor& gov, std::string exhausted_reason) -> SearchResult<W> {
    SearchResult<W> out;
    out.nodes = gov.nodes();
    if (b.status == SearchStatus::found) {
        out.status = SearchStatus::found;
        out.witness = std::move(b.witness);
        out.reason = "witness found";
    } else if (b.status == SearchStatus::unknown || gov.stopped()) {
        out.status = SearchStatus::unknown;
        out.reason = "search budget exhausted";
    } else {
        out.status = SearchStatus::none;
        out.reason = std::move(exhausted_reason);
    }
    return out;
}

auto explicit_edges(const Hypergraph& h, int max_implicit_n) -> std::vector<VertexSet> {
    if (h.is_explicit()) return h.edges();
    require(h.n() <= max_implicit_n, "implicit backend too large for exhaustive search; materialize it first");
    return materialize(h).edges();
}

}  // namespace

auto status_name(SearchStatus s) -> std::string {
    switch (s) {
        case SearchStatus::found: return "found";
        case SearchStatus::none: return "none";
        case SearchStatus::unknown: return "unknown";
    }
    return "unknown";
}

auto parity_certificate(const ExtremalSpec& spec) -> bool { return f_parity(spec).in_hext; }

// ---------------------------------------------------------------- matchings

auto find_perfect_matching(const Hypergraph& h, const SearchBudget& budget) -> SearchResult<Matching> {
    const int n = h.n();
    const int k = h.k();
    require(k >= 1 && n % k == 0, "perfect matching needs k | n");
    Governor gov(budget);
    if (n == 0) return {SearchStatus::found, Matching{}, 0, "empty vertex set"};
    const auto edges = explicit_edges(h, 20);
    std::vector<std::vector<VertexSet>> by_min(static_cast<std::size_t>(n));
    for (const auto& e : edges) by_min[static_cast<std::size_t>(e.min())].push_back(e);

    struct Dfs {
        const std::vector<std::vector<VertexSet>>& by_min;
        Governor& gov;
        int n;
        Matching chosen;

        auto run(VertexSet& covered) -> SearchStatus {
            if (covered.size() == n) return SearchStatus::found;
            int u = 0;
            while (covered.contains(u)) ++u;
            for (const auto& e : by_min[static_cast<std::size_t>(u)]) {
                if (!gov.tick()) return SearchStatus::unknown;
                if (!covered.disjoint(e)) continue;
                covered |= e;
                chosen.push_back(e);
                const auto r = run(covered);
                if (r != SearchStatus::none) return r;
                chosen.pop_back();
                covered -= e;
            }
            return SearchStatus::none;
        }
    };

    const auto& top = by_min[0];
    auto b = run_branches<Matching>(top.size(), budget.threads, gov, [&](std::size_t i) -> Branch<Matching> {
        Dfs dfs{by_min, gov, n, {top[i]}};
        VertexSet covered = top[i];
        if (!gov.tick()) return {SearchStatus::unknown, std::nullopt};
        const auto r = dfs.run(covered);
        if (r == SearchStatus::found) return {r, dfs.chosen};
        return {r, std::nullopt};
    });
    return finish(std::move(b), gov, "search space exhausted");
}

// ------------------------------------------------------------------- cycles

namespace {

struct CycleDfs {
    const Hypergraph& h;
    Governor& gov;
    int n;
    int k;
    int ell;
    int t;
    std::vector<VertexSet> blocks;
    VertexSet used;
    Vertex m0 = 0;

    auto below_m0_uncovered() const -> int {
        int c = 0;
        for (Vertex v = 0; v < m0; ++v) {
            if (!used.contains(v)) ++c;
        }
        return c;
    }

    auto run() -> SearchStatus {
        const int pos = static_cast<int>(blocks.size());
        if (pos == 2 * t - 1) {
            // Final R block is forced.
            const auto last = VertexSet::prefix(n) - used;
            if (!gov.tick()) return SearchStatus::unknown;
            if (!(blocks[1] < last)) return SearchStatus::none;
            if (!h.contains(blocks.back() | last) || !h.contains(last | blocks[0])) return SearchStatus::none;
            blocks.push_back(last);
            return SearchStatus::found;
        }
        const bool left_block = pos % 2 == 0;
        const int size = left_block ? ell : k - ell;
        // Vertices below min(L_0) can only sit in R blocks.
        const int r_slots_left = (t - (pos + 1) / 2) * (k - ell);
        if (below_m0_uncovered() > r_slots_left) return SearchStatus::none;

        std::vector<Vertex> pool;
        for (Vertex v = 0; v < n; ++v) {
            if (used.contains(v)) continue;
            if (left_block && v <= m0) continue;
            pool.push_back(v);
        }
        SearchStatus outcome = SearchStatus::none;
        for_each_combination(std::span<const Vertex>(pool), size, [&](const VertexSet& b) {
            if (!gov.tick()) {
                outcome = SearchStatus::unknown;
                return false;
            }
            if (!h.contains(blocks.back() | b)) return true;
            blocks.push_back(b);
            used |= b;
            const auto r = run();
            if (r != SearchStatus::none) {
                outcome = r;
                return false;
            }
            used -= b;
            blocks.pop_back();
            return true;
        });
        return outcome;
    }
};

}  // namespace

auto find_ham_cycle(const Hypergraph& h, int ell, const SearchBudget& budget) -> SearchResult<SegCycle> {
    const int n = h.n();
    const int k = h.k();
    require(ell >= 1 && ell <= k - 1, "find_ham_cycle needs 1 <= ell <= k-1");
    require(n % k == 0, "find_ham_cycle needs k | n");
    const int t = n / k;
    require(t >= 2, "find_ham_cycle needs t = n/k >= 2");
    Governor gov(budget);

    std::vector<VertexSet> firsts;
    for_each_combination(std::span<const Vertex>(complement_members(n, {})), ell, [&](const VertexSet& l0) {
        firsts.push_back(l0);
        return true;
    });
    auto b = run_branches<SegCycle>(firsts.size(), budget.threads, gov, [&](std::size_t i) -> Branch<SegCycle> {
        CycleDfs dfs{h, gov, n, k, ell, t, {firsts[i]}, firsts[i], firsts[i].min()};
        if (!gov.tick()) return {SearchStatus::unknown, std::nullopt};
        const auto r = dfs.run();
        if (r == SearchStatus::found) return {r, SegCycle{dfs.blocks, ell}};
        return {r, std::nullopt};
    });
    return finish(std::move(b), gov, "search space exhausted");
}

// -------------------------------------------------------------------- paths

namespace {

struct PathDfs {
    const Hypergraph& h;
    Governor& gov;
    int k;
    int ell;
    VertexSet right;
    VertexSet free;  // vertices not yet placed, excluding `right`
    std::vector<VertexSet> segments;

    auto run() -> SearchStatus {
        if (free.empty()) {
            // Last placed block is an ℓ-block; close with R.
            if (!gov.tick()) return SearchStatus::unknown;
            if (!h.contains(segments.back() | right)) return SearchStatus::none;
            segments.push_back(right);
            return SearchStatus::found;
        }
        const bool r_block = segments.back().size() == ell && static_cast<int>(segments.size()) % 2 == 1;
        const int size = r_block ? k - ell : ell;
        const auto pool = free.members();
        SearchStatus outcome = SearchStatus::none;
        for_each_combination(std::span<const Vertex>(pool), size, [&](const VertexSet& b) {
            if (!gov.tick()) {
                outcome = SearchStatus::unknown;
                return false;
            }
            if (!h.contains(segments.back() | b)) return true;
            segments.push_back(b);
            free -= b;
            const auto r = run();
            if (r != SearchStatus::none) {
                outcome = r;
                return false;
            }
            free |= b;
            segments.pop_back();
            return true;
        });
        return outcome;
    }
};

constexpr std::int64_t degree_precheck_cap = 20'000'000;

}  // namespace

auto find_ham_path(const Hypergraph& h, int ell, const VertexSet& left, const VertexSet& right,
                   const SearchBudget& budget) -> SearchResult<SegPath> {
    const int n = h.n();
    const int k = h.k();
    require(ell >= 1 && ell <= k - 1, "find_ham_path needs 1 <= ell <= k-1");
    require(left.size() == ell && right.size() == k - ell, "ends must have sizes ell and k-ell");
    require(left.disjoint(right), "ends must be disjoint");
    require(left.max() < n && right.max() < n, "ends must lie in 0..n-1");
    require((n - k) % k == 0, "a Hamilton path with these ends needs k | n");
    Governor gov(budget);

    if (n == k) {
        SearchResult<SegPath> out;
        out.nodes = 1;
        if (h.contains(left | right)) {
            out.status = SearchStatus::found;
            out.witness = SegPath{{left, right}, ell};
            out.reason = "witness found";
        } else {
            out.status = SearchStatus::none;
            out.reason = "L ∪ R is not an edge";
        }
        return out;
    }

    // A vertex on no edge can never be covered.
    if (checked_mul(n, binomial(n - 1, k - 1)) <= degree_precheck_cap) {
        for (Vertex v = 0; v < n; ++v) {
            Budget b(static_cast<std::uint64_t>(degree_precheck_cap));
            if (degree(h, VertexSet{v}, b) == 0) {
                return {SearchStatus::none, std::nullopt, 0, "vertex " + std::to_string(v) + " lies on no edge"};
            }
        }
    }

    const auto free = VertexSet::prefix(n) - left - right;
    std::vector<VertexSet> firsts;
    for_each_subset(free, k - ell, [&](const VertexSet& r1) {
        if (h.contains(left | r1)) firsts.push_back(r1);
        return true;
    });
    auto b = run_branches<SegPath>(firsts.size(), budget.threads, gov, [&](std::size_t i) -> Branch<SegPath> {
        PathDfs dfs{h, gov, k, ell, right, free - firsts[i], {left, firsts[i]}};
        if (!gov.tick()) return {SearchStatus::unknown, std::nullopt};
        const auto r = dfs.run();
        if (r == SearchStatus::found) return {r, SegPath{dfs.segments, ell}};
        return {r, std::nullopt};
    });
    return finish(std::move(b), gov, "search space exhausted");
}

// --------------------------------------------------------------- connectors

auto connector_path(const Hypergraph& h, int ell, const VertexSet& left, const VertexSet& right, const VertexSet& c)
    -> std::optional<SegPath> {
    const int k = h.k();
    std::optional<SegPath> found;
    for_each_subset(c, k - ell, [&](const VertexSet& r1) {
        if (!h.contains(left | r1)) return true;
        const auto rest1 = c - r1;
        for_each_subset(rest1, ell, [&](const VertexSet& l1) {
            if (!h.contains(r1 | l1)) return true;
            const auto rest2 = rest1 - l1;
            for_each_subset(rest2, k - ell, [&](const VertexSet& r2) {
                if (!h.contains(l1 | r2)) return true;
                const auto l2 = rest2 - r2;
                if (h.contains(r2 | l2) && h.contains(l2 | right)) {
                    found = SegPath{{left, r1, l1, r2, l2, right}, ell};
                    return false;
                }
                return true;
            });
            return !found;
        });
        return !found;
    });
    return found;
}

auto count_connectors(const Hypergraph& h, int ell, const VertexSet& left, const VertexSet& right,
                      const SearchBudget& budget, std::size_t max_samples) -> ConnectorCount {
    const int k = h.k();
    require(ell >= 1 && ell <= k - 1, "count_connectors needs 1 <= ell <= k-1");
    require(left.size() == ell && right.size() == k - ell, "ends must have sizes ell and k-ell");
    require(left.disjoint(right), "ends must be disjoint");
    Governor gov(budget);
    ConnectorCount out;
    const auto pool = VertexSet::prefix(h.n()) - left - right;
    for_each_subset(pool, 2 * k, [&](const VertexSet& c) {
        if (!gov.tick()) {
            out.complete = false;
            return false;
        }
        ++out.candidates_examined;
        if (connector_path(h, ell, left, right, c)) {
            ++out.count;
            if (out.samples.size() < max_samples) out.samples.push_back(c);
        }
        return true;
    });
    return out;
}

auto is_absorber(const Hypergraph& h, const SegPath& p, const VertexSet& left, const VertexSet& right,
                 const SearchBudget& budget) -> SearchResult<SegPath> {
    const int k = h.k();
    const int ell = p.ell;
    const auto span = p.vertices();
    require(span.size() == 10 * k && p.vertex_count() == 10 * k, "an absorber path has exactly 10k vertices");
    require(left.size() == ell && right.size() == k - ell, "L and R must have sizes ell and k-ell");
    require(left.disjoint(right), "L and R must be disjoint");
    require(left.disjoint(span) && right.disjoint(span), "L and R must avoid V(P)");
    const auto report = validate_path(h, p);
    require(report.ok, "P is not a valid path in H: " + report.message);

    auto first = p.segments.front();
    auto last = p.segments.back();
    if (first.size() != ell) std::swap(first, last);
    const auto u = span | left | right;
    const auto sub = restrict_to(h, u);
    std::vector<Vertex> new_label(static_cast<std::size_t>(h.n()), -1);
    for (std::size_t i = 0; i < sub.labels.size(); ++i) new_label[static_cast<std::size_t>(sub.labels[i])] = static_cast<Vertex>(i);
    auto to_new = [&](const VertexSet& s) {
        VertexSet out;
        s.for_each([&](Vertex v) { out.insert(new_label[static_cast<std::size_t>(v)]); });
        return out;
    };
    auto r = find_ham_path(sub.graph, ell, to_new(first), to_new(last), budget);
    if (r.witness) {
        for (auto& s : r.witness->segments) s = sub.to_original(s);
    }
    return r;
}

// ------------------------------------------------------------- parity pairs

auto find_parity_pair(const Hypergraph& h, const ExtremalSpec& spec, int ell, const SearchBudget& budget)
    -> SearchResult<std::pair<VertexSet, VertexSet>> {
    require(spec.n == h.n() && spec.k == h.k(), "spec and hypergraph disagree on n or k");
    require(ell >= 1 && ell <= h.k() - 1, "find_parity_pair needs 1 <= ell <= k-1");
    Governor gov(budget);
    std::vector<VertexSet> wrong;
    bool capped = false;
    Budget enumeration(budget.node_cap);
    try {
        for_each_edge(h, enumeration, [&](const VertexSet& e) {
            if (spec.eta_of(e) != spec.eta) wrong.push_back(e);
            return true;
        });
    } catch (const BudgetExceeded&) {
        capped = true;
    }
    SearchResult<std::pair<VertexSet, VertexSet>> out;
    if (!capped) {
        for (std::size_t i = 0; i < wrong.size() && !out.witness; ++i) {
            for (std::size_t j = i + 1; j < wrong.size(); ++j) {
                if (!gov.tick()) {
                    capped = true;
                    break;
                }
                const int common = wrong[i].intersection_size(wrong[j]);
                if (common == 0 || common == ell) {
                    out.witness = std::make_pair(wrong[i], wrong[j]);
                    break;
                }
            }
            if (capped) break;
        }
    }
    out.nodes = gov.nodes();
    if (out.witness) {
        out.status = SearchStatus::found;
        out.reason = "witness found";
    } else if (capped) {
        out.status = SearchStatus::unknown;
        out.reason = "search budget exhausted";
    } else {
        out.status = SearchStatus::none;
        out.reason = wrong.empty() ? "H has no edge outside the spec's family" : "no pair meets in 0 or ell vertices";
    }
    return out;
}

}  // namespace hamlab
