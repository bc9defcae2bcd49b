#include "hamlab/extremal.hpp"

#include <algorithm>
#include <future>
#include <limits>

namespace hamlab {

auto prefix_spec(int n, int k, int a, int eta) -> ExtremalSpec {
    require(a >= 0 && a <= n, "need 0 <= a <= n");
    return ExtremalSpec{n, k, VertexSet::prefix(a), eta};
}

auto build_extremal(const ExtremalSpec& spec) -> Hypergraph { return Hypergraph::extremal(spec); }

auto eta_set(const ExtremalSpec& spec, const VertexSet& s) -> int { return spec.eta_of(s); }

auto f_parity(const ExtremalSpec& spec) -> ParityValue {
    require(spec.k > 0 && spec.n % spec.k == 0, "f parity needs k | n");
    const int f = (spec.eta * (spec.n / spec.k) + spec.a_size()) & 1;
    return {f, f == 1};
}

auto in_extremal_family(int n, int k, int a, int eta) -> bool {
    require(k > 0 && n % k == 0, "extremal family needs k | n");
    if (eta == 1) return ((n / k - a) % 2 + 2) % 2 == 1;
    return a % 2 == 1;
}

auto extremal_family(int n, int k) -> std::vector<ExtremalSpec> {
    std::vector<ExtremalSpec> out;
    for (int a = 0; a <= n; ++a) {
        for (int eta : {1, 0}) {
            if (in_extremal_family(n, k, a, eta)) out.push_back(prefix_spec(n, k, a, eta));
        }
    }
    return out;
}

auto delta_ell_extremal(int a, int n, int k, int ell, int eta) -> std::int64_t {
    require(a >= 0 && a <= n, "need 0 <= a <= n");
    require(ell >= 1 && ell <= k - 1, "need 1 <= ell <= k-1");
    require(k <= n, "need k <= n");
    require(eta == 0 || eta == 1, "eta must be 0 or 1");
    const int b = n - a;
    const int r = k - ell;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    // j = |S ∩ A| over every realizable ell-set type.
    for (int j = std::max(0, ell - b); j <= std::min(ell, a); ++j) {
        std::int64_t sum = 0;
        for (int i = 0; i <= r; ++i) {
            if ((i + j) % 2 != eta) continue;
            sum = checked_add(sum, checked_mul(binomial(a - j, i), binomial(b - (ell - j), r - i)));
        }
        best = std::min(best, sum);
    }
    return best;
}

auto method_name(ThresholdMethod m) -> std::string { return m == ThresholdMethod::formula ? "formula" : "enumeration"; }

auto codegree_formula(int n, int k) -> std::pair<std::string, Rational> {
    const Rational half_n(n, 2);
    if (k % 4 == 0 && (n / k) % 2 == 1) return {"k/2 even, n/k odd", half_n - k + 2};
    if (k % 2 == 1) {
        if (n % 2 == 0) {
            throw IllDefinedCase("codegree formula case is ill-defined: k is odd and n is even, so (n-1)/2 is not an integer");
        }
        if (((n - 1) / 2) % 2 == 1) return {"k odd, (n-1)/2 odd", half_n - k + Rational(3, 2)};
        return {"k odd, (n-1)/2 even", half_n - k + Rational(1, 2)};
    }
    return {"otherwise", half_n - k + 1};
}

auto delta_threshold(int n, int k, int ell, ThresholdMethod method, int threads) -> ThresholdReport {
    require(k >= 2 && k <= n, "need 2 <= k <= n");
    require(n % k == 0, "delta threshold needs k | n");
    require(ell >= 1 && ell <= k - 1, "need 1 <= ell <= k-1");
    ThresholdReport report{n, k, ell, Rational(0), {}, method, {}};

    if (method == ThresholdMethod::formula) {
        require(ell == k - 1, "formula mode is only available for ell = k-1; use enumeration");
        auto [label, value] = codegree_formula(n, k);
        report.formula_case = std::move(label);
        report.value = value;
        return report;
    }

    struct Cell {
        int a;
        int eta;
        std::int64_t value;
    };
    std::vector<Cell> cells;
    for (int a = 0; a <= n; ++a) {
        for (int eta : {1, 0}) {
            if (in_extremal_family(n, k, a, eta)) cells.push_back({a, eta, 0});
        }
    }
    const auto evaluate = [&](std::size_t begin, std::size_t end) {
        for (std::size_t i = begin; i < end; ++i) cells[i].value = delta_ell_extremal(cells[i].a, n, k, ell, cells[i].eta);
    };
    const auto workers = static_cast<std::size_t>(std::max(1, threads));
    if (workers == 1 || cells.size() < 2 * workers) {
        evaluate(0, cells.size());
    } else {
        std::vector<std::future<void>> jobs;
        const auto chunk = (cells.size() + workers - 1) / workers;
        for (std::size_t start = 0; start < cells.size(); start += chunk) {
            jobs.push_back(std::async(std::launch::async, evaluate, start, std::min(cells.size(), start + chunk)));
        }
        for (auto& j : jobs) j.get();
    }

    std::int64_t best = -1;
    for (const auto& c : cells) best = std::max(best, c.value);
    report.value = Rational(best);
    for (const auto& c : cells) {
        if (c.value == best) report.argmax.emplace_back(c.a, c.eta);
    }
    return report;
}

}  // namespace hamlab
