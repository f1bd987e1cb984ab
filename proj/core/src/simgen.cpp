#include "slassure/simgen.hpp"

#include <cmath>
#include <fstream>
#include <random>

#include "json.hpp"

namespace slassure {

using nlohmann::ordered_json;

void SegmentSpec::validate() const {
    if (n_frames < 1) throw SchemaError("segment n_frames must be >= 1");
    if (cones_min < 0 || cones_max < cones_min) {
        throw SchemaError("segment cone count range invalid");
    }
    if (per_cone_miss_probability < 0.0 || per_cone_miss_probability > 1.0) {
        throw SchemaError("per_cone_miss_probability must be in [0,1]");
    }
    if (out_of_range_fraction < 0.0 || out_of_range_fraction > 1.0) {
        throw SchemaError("out_of_range_fraction must be in [0,1]");
    }
    if (burst) {
        if (burst->miss_probability < 0.0 || burst->miss_probability > 1.0) {
            throw SchemaError("burst miss_probability must be in [0,1]");
        }
        if (burst->start_frame < 0 || burst->length < 0 ||
            burst->start_frame + burst->length > n_frames) {
            throw SchemaError("burst window must lie inside its segment");
        }
    }
}

void ScenarioSpec::validate() const {
    if (segments.empty()) throw SchemaError("scenario needs at least one segment");
    if (!(frame_rate > 0.0)) throw SchemaError("frame_rate must be > 0");
    if (!(max_distance > 0.0)) throw SchemaError("max_distance must be > 0");
    for (const auto& seg : segments) seg.validate();
}

std::int64_t ScenarioSpec::total_frames() const {
    std::int64_t total = 0;
    for (const auto& seg : segments) total += seg.n_frames;
    return total;
}

namespace {

// Draws are derived from raw mt19937_64 output so the byte stream does not
// depend on the standard library's distribution implementations.
double next_double(std::mt19937_64& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

int next_int(std::mt19937_64& rng, int lo, int hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<int>(rng() % span);
}

// Distances serialized with limited precision keep log bytes stable.
double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

}  // namespace

std::vector<FrameRecord> generate_log(const ScenarioSpec& spec) {
    spec.validate();
    std::mt19937_64 rng(spec.seed);
    std::vector<FrameRecord> log;
    log.reserve(static_cast<std::size_t>(spec.total_frames()));

    std::int64_t frame_id = 0;
    for (const auto& seg : spec.segments) {
        for (std::int64_t i = 0; i < seg.n_frames; ++i, ++frame_id) {
            double miss_p = seg.per_cone_miss_probability;
            if (seg.burst && i >= seg.burst->start_frame &&
                i < seg.burst->start_frame + seg.burst->length) {
                miss_p = seg.burst->miss_probability;
            }

            FrameRecord frame;
            frame.frame_id = frame_id;
            frame.timestamp = static_cast<double>(frame_id) / spec.frame_rate;

            const int n_cones = next_int(rng, seg.cones_min, seg.cones_max);
            for (int c = 0; c < n_cones; ++c) {
                GtObject gt;
                gt.gt_id = "c" + std::to_string(frame_id) + "_" + std::to_string(c);
                gt.object_class = "cone";
                const bool out_of_range = next_double(rng) < seg.out_of_range_fraction;
                if (out_of_range) {
                    gt.distance = round3(spec.max_distance *
                                         (1.0 + next_double(rng)) + 0.001);
                } else {
                    gt.distance = round3(0.5 + next_double(rng) *
                                         (spec.max_distance - 0.5));
                }
                const bool missed = next_double(rng) < miss_p;
                if (!missed) {
                    Detection det;
                    det.matched_gt_id = gt.gt_id;
                    det.object_class = "cone";
                    det.score = round3(0.5 + 0.5 * next_double(rng));
                    frame.detections.push_back(std::move(det));
                }
                frame.ground_truth.push_back(std::move(gt));
            }
            log.push_back(std::move(frame));
        }
    }
    return log;
}

const std::vector<NamedScenario>& preset_scenarios() {
    static const std::vector<NamedScenario> presets = [] {
        std::vector<NamedScenario> v;

        // Occlusion burst in the middle of an otherwise clean run: claim
        // belief drops sharply at the burst windows and recovers slowly.
        ScenarioSpec burst;
        burst.seed = 42;
        burst.frame_rate = 10.0;
        burst.max_distance = 50.0;
        SegmentSpec seg;
        seg.n_frames = 600;
        seg.cones_min = 2;
        seg.cones_max = 5;
        seg.per_cone_miss_probability = 0.0;
        seg.out_of_range_fraction = 0.1;
        seg.burst = BurstSpec{200, 30, 0.9};
        burst.segments = {seg};
        v.push_back({"violation-burst",
                     "clean run with a 30-frame occlusion burst at frame 200",
                     burst});

        // No misses at all: uncertainty steadily shrinks, belief strengthens.
        ScenarioSpec clean;
        clean.seed = 7;
        clean.frame_rate = 10.0;
        clean.max_distance = 50.0;
        SegmentSpec clean_seg;
        clean_seg.n_frames = 600;
        clean_seg.cones_min = 2;
        clean_seg.cones_max = 5;
        clean_seg.per_cone_miss_probability = 0.0;
        clean_seg.out_of_range_fraction = 0.1;
        clean.segments = {clean_seg};
        v.push_back({"clean-run", "violation-free run of 600 frames", clean});

        // Short nighttime stretch with degraded detection: too few windows
        // for uncertainty to shrink much.
        ScenarioSpec night;
        night.seed = 11;
        night.frame_rate = 10.0;
        night.max_distance = 50.0;
        SegmentSpec night_seg;
        night_seg.n_frames = 25;
        night_seg.cones_min = 1;
        night_seg.cones_max = 3;
        night_seg.per_cone_miss_probability = 0.35;
        night_seg.out_of_range_fraction = 0.1;
        night.segments = {night_seg};
        v.push_back({"short-night",
                     "25-frame nighttime segment with elevated miss rate", night});
        return v;
    }();
    return presets;
}

const ScenarioSpec* find_preset(const std::string& name) {
    for (const auto& preset : preset_scenarios()) {
        if (preset.name == name) return &preset.spec;
    }
    return nullptr;
}

namespace {

SegmentSpec segment_from_json(const ordered_json& j) {
    SegmentSpec seg;
    seg.n_frames = j.at("n_frames").get<std::int64_t>();
    seg.cones_min = j.at("cones_min").get<int>();
    seg.cones_max = j.at("cones_max").get<int>();
    seg.per_cone_miss_probability = j.at("miss_probability").get<double>();
    seg.out_of_range_fraction = j.value("out_of_range_fraction", 0.0);
    if (j.contains("burst")) {
        const auto& jb = j.at("burst");
        seg.burst = BurstSpec{jb.at("start_frame").get<std::int64_t>(),
                              jb.at("length").get<std::int64_t>(),
                              jb.at("miss_probability").get<double>()};
    }
    return seg;
}

}  // namespace

ScenarioSpec read_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open scenario file " + path);
    ordered_json doc;
    try {
        doc = ordered_json::parse(in);
    } catch (const ordered_json::exception& e) {
        throw SchemaError(std::string("malformed scenario JSON: ") + e.what());
    }
    try {
        if (doc.value("format", "") != "sl-assure-scenario/1") {
            throw SchemaError("missing or unsupported scenario format "
                              "(expected sl-assure-scenario/1)");
        }
        ScenarioSpec spec;
        spec.seed = doc.value("seed", std::uint64_t{0});
        spec.frame_rate = doc.value("frame_rate", 10.0);
        spec.max_distance = doc.value("max_distance", 50.0);
        for (const auto& js : doc.at("segments")) {
            spec.segments.push_back(segment_from_json(js));
        }
        spec.validate();
        return spec;
    } catch (const ordered_json::exception& e) {
        throw SchemaError(std::string("scenario schema violation: ") + e.what());
    }
}

std::string serialize_scenario(const ScenarioSpec& spec) {
    ordered_json doc;
    doc["format"] = "sl-assure-scenario/1";
    doc["seed"] = spec.seed;
    doc["frame_rate"] = spec.frame_rate;
    doc["max_distance"] = spec.max_distance;
    auto segments = ordered_json::array();
    for (const auto& seg : spec.segments) {
        ordered_json js;
        js["n_frames"] = seg.n_frames;
        js["cones_min"] = seg.cones_min;
        js["cones_max"] = seg.cones_max;
        js["miss_probability"] = seg.per_cone_miss_probability;
        js["out_of_range_fraction"] = seg.out_of_range_fraction;
        if (seg.burst) {
            js["burst"] = {{"start_frame", seg.burst->start_frame},
                           {"length", seg.burst->length},
                           {"miss_probability", seg.burst->miss_probability}};
        }
        segments.push_back(std::move(js));
    }
    doc["segments"] = std::move(segments);
    return doc.dump(2) + "\n";
}

}  // namespace slassure
