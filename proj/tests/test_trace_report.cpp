#include <sstream>

#include "doctest.h"
#include "slassure/engine.hpp"
#include "slassure/trace_io.hpp"
#include "test_util.hpp"

using namespace slassure;
using slassure::testing::forced_log;
using doctest::Approx;

namespace {

SpiSpec spec_with(double theta) {
    SpiSpec spec;
    spec.id = "spi";
    spec.claim_id = "G2";
    spec.threshold = theta;
    return spec;
}

ArgumentGraph claim_graph() {
    ArgumentNode goal;
    goal.id = "G2";
    goal.kind = NodeKind::goal;
    goal.opinion = Opinion::make(0.625, 0.125, 0.25, 0.5);
    return ArgumentGraph({goal}, {}, {});
}

ConfidenceTrace sample_trace(double theta = 0.5) {
    std::vector<bool> violations(30, false);
    for (int i = 10; i < 15; ++i) violations[i] = true;
    return run_replay(claim_graph(), "G2", forced_log(violations), spec_with(theta)).trace;
}

}  // namespace

TEST_CASE("trace CSV layout") {
    const ConfidenceTrace trace = sample_trace();
    std::ostringstream out;
    write_trace_csv(out, trace);

    std::istringstream lines(out.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header ==
          "window_index,frame_start,frame_end,partial,r,s,spi_b,spi_d,spi_u,"
          "claim_b,claim_d,claim_u,projected_p,first_order,beta_alpha,beta_beta,"
          "beta_variance");

    std::string row;
    int rows = 0;
    while (std::getline(lines, row)) ++rows;
    CHECK(rows == 3);
}

TEST_CASE("trace JSON round-trip") {
    const ConfidenceTrace trace = sample_trace();
    std::ostringstream out;
    write_trace_json(out, trace);

    std::istringstream in(out.str());
    const ConfidenceTrace parsed = read_trace_json(in);

    CHECK(parsed.claim_id == trace.claim_id);
    CHECK(parsed.config.threshold == trace.config.threshold);
    CHECK(parsed.final_opinion == trace.final_opinion);
    REQUIRE(parsed.points.size() == trace.points.size());
    for (std::size_t i = 0; i < parsed.points.size(); ++i) {
        CHECK(parsed.points[i].claim_after == trace.points[i].claim_after);
        CHECK(parsed.points[i].r == trace.points[i].r);
        CHECK(parsed.points[i].s == trace.points[i].s);
    }

    std::ostringstream again;
    write_trace_json(again, parsed);
    CHECK(again.str() == out.str());
}

TEST_CASE("trace JSON rejects wrong versions") {
    std::istringstream in(R"({"format": "sl-assure-trace/2"})");
    CHECK_THROWS_AS(read_trace_json(in), SchemaError);
}

TEST_CASE("report aggregates violation windows and min belief") {
    const auto reports = build_report({sample_trace()});
    REQUIRE(reports.size() == 1);
    REQUIRE(reports[0].runs.size() == 1);
    const auto& run = reports[0].runs[0];
    CHECK(run.total_windows == 3);
    CHECK(run.violation_windows == 1);
    CHECK(run.min_belief_window == 1);  // belief bottoms out at the burst window
    CHECK_FALSE(reports[0].differing_thresholds);
}

TEST_CASE("clean trace reports zero violation windows") {
    const auto trace =
        run_replay(claim_graph(), "G2", forced_log(std::vector<bool>(30, false)),
                   spec_with(0.5)).trace;
    const auto reports = build_report({trace});
    CHECK(reports[0].runs[0].violation_windows == 0);
}

TEST_CASE("report flags differing thresholds for the same claim") {
    const auto reports = build_report({sample_trace(0.5), sample_trace(0.3)});
    REQUIRE(reports.size() == 1);
    REQUIRE(reports[0].runs.size() == 2);
    CHECK(reports[0].differing_thresholds);
    // ordered by config snapshot: lower threshold first
    CHECK(reports[0].runs[0].config.threshold == Approx(0.3));

    std::ostringstream text;
    write_report_text(text, reports);
    CHECK(text.str().find("differing thresholds") != std::string::npos);

    std::ostringstream json_out;
    write_report_json(json_out, reports);
    CHECK(json_out.str().find("sl-assure-report/1") != std::string::npos);
}

TEST_CASE("format_float is stable at 9 significant digits") {
    CHECK(format_float(1.0 / 3.0) == "0.333333333");
    CHECK(format_float(0.0) == "0");
    CHECK(format_float(2335.0) == "2335");
}
