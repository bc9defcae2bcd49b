#include <doctest.h>

#include "hamlab/extremal.hpp"
#include "oracles.hpp"

using namespace hamlab;

namespace {

auto vs(std::initializer_list<Vertex> xs) -> VertexSet {
    VertexSet s;
    for (auto v : xs) s.insert(v);
    return s;
}

// Parity-family membership straight from the definition of the family.
auto oracle_in_family(int n, int k, int a, int eta) -> bool {
    if (eta == 1) return (n / k - a) % 2 != 0;
    return a % 2 != 0;
}

}  // namespace

TEST_SUITE("extremal") {

TEST_CASE("membership by intersection parity") {
    const auto odd = build_extremal(prefix_spec(6, 3, 3, 1));
    CHECK(odd.contains(vs({0, 3, 4})));
    CHECK_FALSE(odd.contains(vs({0, 1, 3})));
    const auto even = build_extremal(prefix_spec(6, 3, 3, 0));
    CHECK_FALSE(even.contains(vs({0, 3, 4})));
    CHECK(even.contains(vs({0, 1, 3})));
    Budget b;
    CHECK(edge_count(odd, b) == 10);
}

TEST_CASE("eta of a set") {
    const auto spec = prefix_spec(6, 3, 3, 1);
    CHECK(eta_set(spec, VertexSet{}) == 0);
    CHECK(eta_set(spec, spec.a) == 1);
    CHECK(eta_set(spec, vs({1, 2, 4})) == 0);
}

TEST_CASE("f parity") {
    CHECK(f_parity(prefix_spec(6, 3, 3, 1)).f == 1);
    CHECK(f_parity(prefix_spec(6, 3, 3, 1)).in_hext);
    CHECK(f_parity(prefix_spec(6, 3, 2, 1)).f == 0);
    CHECK_THROWS_AS(f_parity(prefix_spec(7, 3, 2, 1)), PreconditionError);
}

TEST_CASE("f is unchanged by removing an edge of the family") {
    for (int a = 0; a <= 9; ++a) {
        for (int eta = 0; eta <= 1; ++eta) {
            const auto spec = prefix_spec(9, 3, a, eta);
            const int f = f_parity(spec).f;
            for (auto e : oracle::masks_of_size(9, 3)) {
                if ((oracle::pop(e & oracle::prefix(a)) & 1) != eta) continue;
                // Residual: 6 vertices, |A'| = a - |e ∩ A|, same eta.
                const int a_left = a - oracle::pop(e & oracle::prefix(a));
                CHECK((eta * 2 + a_left) % 2 == f);
            }
        }
    }
}

TEST_CASE("family membership agrees with f") {
    for (int k : {3, 4, 6, 8}) {
        for (int n = k; n <= 24; n += k) {
            for (int a = 0; a <= n; ++a) {
                for (int eta = 0; eta <= 1; ++eta) {
                    CHECK(in_extremal_family(n, k, a, eta) == oracle_in_family(n, k, a, eta));
                    CHECK(f_parity(prefix_spec(n, k, a, eta)).in_hext == oracle_in_family(n, k, a, eta));
                }
            }
        }
    }
}

TEST_CASE("closed-form ell-degree matches enumeration") {
    CHECK(delta_ell_extremal(3, 6, 3, 2, 1) == 1);
    CHECK(delta_ell_extremal(5, 6, 3, 2, 1) == 0);
    CHECK(delta_ell_extremal(0, 9, 4, 2, 0) == oracle::binom(7, 2));
    for (int n = 4; n <= 10; ++n) {
        for (int k : {3, 4}) {
            if (k > n) continue;
            for (int ell = 1; ell < k; ++ell) {
                for (int a = 0; a <= n; ++a) {
                    for (int eta = 0; eta <= 1; ++eta) {
                        const auto want = oracle::min_degree(n, k, ell, oracle::parity_pred(oracle::prefix(a), eta));
                        CHECK(delta_ell_extremal(a, n, k, ell, eta) == want);
                    }
                }
            }
        }
    }
}

TEST_CASE("codegree formula values") {
    auto r = delta_threshold(56, 8, 7, ThresholdMethod::formula);
    CHECK(r.value == Rational(22));
    r = delta_threshold(21, 7, 6, ThresholdMethod::formula);
    CHECK(r.value == Rational(4));
    CHECK(r.formula_case == "k odd, (n-1)/2 even");
    CHECK_THROWS_AS(delta_threshold(6, 3, 2, ThresholdMethod::formula), IllDefinedCase);
    CHECK_THROWS_AS(delta_threshold(12, 4, 2, ThresholdMethod::formula), PreconditionError);
}

TEST_CASE("threshold by enumeration") {
    const auto r = delta_threshold(6, 3, 2, ThresholdMethod::enumeration);
    CHECK(r.value == Rational(1));
    for (auto [a, eta] : r.argmax) CHECK(oracle_in_family(6, 3, a, eta));
    // Oracle: scan the family with direct min-degree enumeration.
    long long best = -1;
    for (int a = 0; a <= 6; ++a) {
        for (int eta = 0; eta <= 1; ++eta) {
            if (!oracle_in_family(6, 3, a, eta)) continue;
            best = std::max(best, oracle::min_degree(6, 3, 2, oracle::parity_pred(oracle::prefix(a), eta)));
        }
    }
    CHECK(r.value == Rational(best));
    const auto par = delta_threshold(48, 8, 7, ThresholdMethod::enumeration, 4);
    const auto seq = delta_threshold(48, 8, 7, ThresholdMethod::enumeration, 1);
    CHECK(par.value == seq.value);
    CHECK(par.argmax == seq.argmax);
}

TEST_CASE("balanced parity graphs have about half the possible degree") {
    for (int n = 40; n <= 48; n += 4) {
        for (int ell = 1; ell <= 3; ++ell) {
            const double ratio = static_cast<double>(delta_ell_extremal(n / 2, n, 4, ell, 1)) /
                                 static_cast<double>(oracle::binom(n - ell, 4 - ell));
            CHECK(ratio >= 0.4);
            CHECK(ratio <= 0.6);
        }
    }
}

}
