#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slassure/monitor.hpp"

namespace slassure {

/// Temporary miss-probability override inside a segment, modeling an
/// occlusion burst. Frame offsets are relative to the segment start.
struct BurstSpec {
    std::int64_t start_frame = 0;
    std::int64_t length = 0;
    double miss_probability = 1.0;
};

struct SegmentSpec {
    std::int64_t n_frames = 0;
    int cones_min = 1;
    int cones_max = 1;
    double per_cone_miss_probability = 0.0;
    double out_of_range_fraction = 0.0;  // cones placed beyond max_distance
    std::optional<BurstSpec> burst;

    void validate() const;
};

struct ScenarioSpec {
    std::uint64_t seed = 0;
    double frame_rate = 10.0;
    double max_distance = 50.0;  // in-range cones are drawn within this range
    std::vector<SegmentSpec> segments;

    void validate() const;
    std::int64_t total_frames() const;
};

/// Deterministic synthetic frame log; byte-identical for a fixed spec.
std::vector<FrameRecord> generate_log(const ScenarioSpec& spec);

struct NamedScenario {
    std::string name;
    std::string description;
    ScenarioSpec spec;
};

/// Bundled scenario presets: violation-burst, clean-run, short-night.
const std::vector<NamedScenario>& preset_scenarios();
const ScenarioSpec* find_preset(const std::string& name);

// Scenario spec file I/O (sl-assure-scenario/1).
ScenarioSpec read_scenario_file(const std::string& path);
std::string serialize_scenario(const ScenarioSpec& spec);

}  // namespace slassure
