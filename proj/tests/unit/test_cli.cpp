#include <doctest.h>

#include "hamlab/extremal.hpp"
#include "hamlab/report.hpp"
#include "hamlab/verify.hpp"

using namespace hamlab;

TEST_SUITE("cli") {

TEST_CASE("rationals serialize as integer pairs") {
    const auto j = rational_json(Rational(21, 2));
    CHECK(j.dump() == R"({"num":21,"den":2})");
    CHECK(rational_json(Rational(4)).dump() == R"({"num":4,"den":1})");
}

TEST_CASE("threshold report fields") {
    const auto j = threshold_json(delta_threshold(56, 8, 7, ThresholdMethod::formula));
    CHECK(j["value_num"] == 22);
    CHECK(j["value_den"] == 1);
    CHECK(j["method"] == "formula");
    const auto e = threshold_json(delta_threshold(21, 7, 6, ThresholdMethod::enumeration));
    CHECK(e["value_num"] == 4);
    CHECK(e["argmax"].size() >= 1);
}

TEST_CASE("paths and specs") {
    SegPath p;
    p.ell = 1;
    p.segments = {VertexSet{0}, VertexSet{1, 2}, VertexSet{3}};
    CHECK(path_json(p).dump() == R"({"ell":1,"vertex_count":4,"segments":[[0],[1,2],[3]]})");
    const auto s = spec_json(prefix_spec(6, 3, 3, 1));
    CHECK(s["f"] == 1);
    CHECK(s["a"].dump() == "[0,1,2]");
}

TEST_CASE("canonical form drops metadata only") {
    Json a = {{"x", 1}, {"metadata", {{"elapsed_seconds", 0.5}}}};
    Json b = {{"x", 1}, {"metadata", {{"elapsed_seconds", 9.0}}}};
    CHECK(canonical_report(a) == canonical_report(b));
    b["x"] = 2;
    CHECK(canonical_report(a) != canonical_report(b));
    CHECK(dump_report(a).back() == '\n');
}

TEST_CASE("verify suite registry") {
    CHECK(verify_suite_names().size() == 5);
    CHECK(is_verify_suite("engine"));
    CHECK_FALSE(is_verify_suite("nosuch"));
    CHECK_THROWS_AS(run_verify_suite("nosuch"), PreconditionError);
}

TEST_CASE("thresholds suite matrix") {
    const auto m = run_verify_suite("thresholds");
    CHECK(m["suite"] == "thresholds");
    CHECK(m["failed"] == 0);
    CHECK(m["reported"] == 2);  // two ill-defined probes
    CHECK(m["cells"].size() == 7);
    CHECK(m["metadata"]["cell_seconds"].size() == 7);
}

TEST_CASE("seeded suites repeat exactly") {
    VerifyOptions o;
    o.seed = 5;
    const auto a = run_verify_suite("parity", o);
    const auto b = run_verify_suite("parity", o);
    CHECK(a["failed"] == 0);
    CHECK(canonical_report(a) == canonical_report(b));
}

}  // TEST_SUITE
