#include <sstream>

#include "doctest.h"
#include "slassure/monitor.hpp"
#include "test_util.hpp"

using namespace slassure;
using slassure::testing::forced_frame;
using slassure::testing::forced_log;
using doctest::Approx;

namespace {

FrameRecord mixed_frame(std::int64_t id, int matched, int unmatched, double distance) {
    FrameRecord frame;
    frame.frame_id = id;
    frame.timestamp = static_cast<double>(id) * 0.1;
    int n = 0;
    for (int i = 0; i < matched; ++i, ++n) {
        GtObject gt{"g" + std::to_string(id) + "_" + std::to_string(n), "cone", distance};
        frame.detections.push_back({gt.gt_id, "cone", 0.9});
        frame.ground_truth.push_back(gt);
    }
    for (int i = 0; i < unmatched; ++i, ++n) {
        frame.ground_truth.push_back(
            {"g" + std::to_string(id) + "_" + std::to_string(n), "cone", distance});
    }
    return frame;
}

SpiSpec default_spec() {
    SpiSpec spec;
    spec.id = "spi";
    spec.claim_id = "G2";
    return spec;  // k=10, theta=0.5, d=50, W=2, a=0.5
}

}  // namespace

TEST_CASE("evaluate_frame applies the FN/GT threshold rule") {
    // 4 in range, 2 unmatched, theta 0.5 -> ratio 0.5 >= 0.5 -> violation
    CHECK(evaluate_frame(mixed_frame(0, 2, 2, 10.0), 50.0, 0.5));
    // GT = 0 in range -> ratio 0 -> no violation
    CHECK_FALSE(evaluate_frame(FrameRecord{1, 0.1, {}, {}}, 50.0, 0.5));
    // perfect detection
    CHECK_FALSE(evaluate_frame(mixed_frame(2, 3, 0, 10.0), 50.0, 0.5));
}

TEST_CASE("evaluate_frame distance filter is inclusive") {
    // unmatched object exactly at d counts
    CHECK(evaluate_frame(mixed_frame(0, 0, 1, 50.0), 50.0, 0.5));
    // beyond d it is out of scope -> GT = 0 -> no violation
    CHECK_FALSE(evaluate_frame(mixed_frame(0, 0, 1, 50.001), 50.0, 0.5));
}

TEST_CASE("evaluate_frame class filter") {
    FrameRecord frame = mixed_frame(0, 0, 1, 10.0);
    frame.ground_truth[0].object_class = "pedestrian";
    CHECK_FALSE(evaluate_frame(frame, 50.0, 0.5, "cone"));
    CHECK(evaluate_frame(frame, 50.0, 0.5, "pedestrian"));
    CHECK(evaluate_frame(frame, 50.0, 0.5));  // empty = all classes
}

TEST_CASE("evaluate_window aggregates evidence into an SPI opinion") {
    const SpiSpec spec = default_spec();

    auto clean = forced_log(std::vector<bool>(10, false));
    WindowResult w = evaluate_window(clean, spec);
    CHECK(w.r == 10);
    CHECK(w.s == 0);
    CHECK(w.spi_opinion.b == Approx(0.8333).epsilon(1e-4));
    CHECK(w.spi_opinion.d == Approx(0.0));
    CHECK(w.spi_opinion.u == Approx(0.1667).epsilon(1e-4));

    std::vector<bool> three(10, false);
    three[2] = three[5] = three[9] = true;
    w = evaluate_window(forced_log(three), spec);
    CHECK(w.r == 7);
    CHECK(w.s == 3);
    CHECK(w.spi_opinion.b == Approx(0.5833).epsilon(1e-4));
    CHECK(w.spi_opinion.d == Approx(0.25).epsilon(1e-4));
    CHECK(w.spi_opinion.u == Approx(0.1667).epsilon(1e-4));

    w = evaluate_window(forced_log(std::vector<bool>(10, true)), spec);
    CHECK(w.spi_opinion.b == Approx(0.0));
    CHECK(w.spi_opinion.d == Approx(0.8333).epsilon(1e-4));
    CHECK(w.spi_opinion.u == Approx(0.1667).epsilon(1e-4));

    CHECK_THROWS_AS(evaluate_window(forced_log(std::vector<bool>(9, false)), spec),
                    WindowSizeMismatch);
}

TEST_CASE("windowed_stream partitions the log") {
    const SpiSpec spec = default_spec();

    auto windows = windowed_stream(forced_log(std::vector<bool>(25, false)), spec);
    REQUIRE(windows.size() == 3);
    CHECK_FALSE(windows[0].partial);
    CHECK_FALSE(windows[1].partial);
    CHECK(windows[2].partial);
    CHECK(windows[2].r + windows[2].s == 5);
    CHECK(windows[1].frame_start == 10);
    CHECK(windows[1].frame_end == 19);

    CHECK(windowed_stream({}, spec).empty());

    std::vector<bool> late(20, false);
    for (int i = 10; i < 20; ++i) late[i] = true;
    windows = windowed_stream(forced_log(late), spec);
    CHECK(windows[0].s == 0);
    CHECK(windows[1].s == 10);
}

TEST_CASE("windowed_stream rejects non-monotone frame ids") {
    auto log = forced_log({false, false, false});
    log[2].frame_id = 1;
    CHECK_THROWS_AS(windowed_stream(log, default_spec()), OrderingError);
}

TEST_CASE("window partition covers every frame exactly once") {
    std::mt19937_64 rng(201);
    for (int trial = 0; trial < 50; ++trial) {
        const auto n = static_cast<std::size_t>(slassure::testing::uniform(rng, 0, 60));
        std::vector<bool> violations(n);
        for (std::size_t i = 0; i < n; ++i) {
            violations[i] = slassure::testing::uniform(rng) < 0.3;
        }
        SpiSpec spec = default_spec();
        spec.window_size = 1 + static_cast<std::int64_t>(slassure::testing::uniform(rng, 0, 12));
        double total = 0.0;
        for (const auto& w : windowed_stream(forced_log(violations), spec)) {
            total += w.r + w.s;
        }
        CHECK(total == static_cast<double>(n));
    }
}

TEST_CASE("label symmetry swaps r/s and b/d") {
    std::vector<bool> violations = {true, false, false, true, true, false, false,
                                    false, true, false};
    std::vector<bool> flipped(violations.size());
    for (std::size_t i = 0; i < violations.size(); ++i) flipped[i] = !violations[i];

    const SpiSpec spec = default_spec();
    const WindowResult w = evaluate_window(forced_log(violations), spec);
    const WindowResult f = evaluate_window(forced_log(flipped), spec);
    CHECK(w.r == f.s);
    CHECK(w.s == f.r);
    CHECK(w.spi_opinion.b == Approx(f.spi_opinion.d));
    CHECK(w.spi_opinion.d == Approx(f.spi_opinion.b));
    CHECK(w.spi_opinion.u == Approx(f.spi_opinion.u));
}

TEST_CASE("raising theta never adds violations") {
    std::mt19937_64 rng(202);
    for (int trial = 0; trial < 100; ++trial) {
        const int matched = static_cast<int>(slassure::testing::uniform(rng, 0, 5));
        const int unmatched = static_cast<int>(slassure::testing::uniform(rng, 0, 5));
        const FrameRecord frame = mixed_frame(0, matched, unmatched, 10.0);
        const double lo = slassure::testing::uniform(rng);
        const double hi = slassure::testing::uniform(rng, lo, 1.0);
        if (evaluate_frame(frame, 50.0, hi)) {
            CHECK(evaluate_frame(frame, 50.0, lo));
        }
    }
}

TEST_CASE("raising d with unmatched far objects is non-decreasing in ratio") {
    FrameRecord frame = mixed_frame(0, 2, 1, 10.0);
    frame.ground_truth.push_back({"far", "cone", 80.0});  // unmatched, out of range
    CHECK_FALSE(evaluate_frame(frame, 50.0, 0.5));  // ratio 1/3
    CHECK(evaluate_frame(frame, 100.0, 0.5));       // ratio 2/4
}

TEST_CASE("exclude_empty_frames drops GT-empty frames from evidence") {
    std::vector<FrameRecord> log;
    for (int i = 0; i < 10; ++i) {
        log.push_back(i < 4 ? FrameRecord{i, i * 0.1, {}, {}}
                            : forced_frame(i, false));
    }
    const SpiSpec spec = default_spec();

    WindowResult all = evaluate_window(log, spec);
    CHECK(all.r == 10);  // paper-literal default: empty frames are successes

    MonitorConfig config;
    config.exclude_empty_frames = true;
    WindowResult filtered = evaluate_window(log, spec, config);
    CHECK(filtered.r == 6);
    CHECK(filtered.s == 0);
}

TEST_CASE("frame log JSON-lines round-trip") {
    auto log = forced_log({false, true, false});
    log[0].detections.push_back({std::nullopt, "cone", 0.4});  // false positive

    std::ostringstream out;
    write_frame_log(out, log);
    std::istringstream in(out.str());
    const auto parsed = read_frame_log(in);

    REQUIRE(parsed.size() == log.size());
    std::ostringstream out2;
    write_frame_log(out2, parsed);
    CHECK(out.str() == out2.str());
}

TEST_CASE("frame log parse errors") {
    std::istringstream bad("{\"frame_id\": 0}");
    CHECK_THROWS_AS(read_frame_log(bad), SchemaError);

    // detection referencing an unknown gt id
    std::istringstream dangling(
        R"({"frame_id": 0, "timestamp": 0.0, "ground_truth": [], )"
        R"("detections": [{"matched_gt_id": "nope", "class": "cone", "score": 0.5}]})");
    CHECK_THROWS_AS(read_frame_log(dangling), SchemaError);
}
