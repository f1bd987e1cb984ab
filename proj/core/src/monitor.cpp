#include "slassure/monitor.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_set>

#include "json.hpp"

namespace slassure {

void SpiSpec::validate() const {
    if (window_size < 1) throw SchemaError("spi " + id + ": window_size must be >= 1");
    if (threshold < 0.0 || threshold > 1.0)
        throw SchemaError("spi " + id + ": threshold must be in [0,1]");
    if (!(max_distance > 0.0)) throw SchemaError("spi " + id + ": max_distance must be > 0");
    if (!(prior_weight > 0.0)) throw SchemaError("spi " + id + ": prior_weight must be > 0");
    if (base_rate < 0.0 || base_rate > 1.0)
        throw SchemaError("spi " + id + ": base_rate must be in [0,1]");
}

namespace {

bool in_scope(const GtObject& gt, double max_distance, const std::string& object_class) {
    if (gt.distance > max_distance) return false;
    return object_class.empty() || gt.object_class == object_class;
}

// GT count and FN count over in-range objects of the class.
std::pair<int, int> frame_counts(const FrameRecord& frame, double max_distance,
                                 const std::string& object_class) {
    std::unordered_set<std::string> matched;
    for (const auto& det : frame.detections) {
        if (det.matched_gt_id) matched.insert(*det.matched_gt_id);
    }
    int gt_count = 0;
    int fn_count = 0;
    for (const auto& gt : frame.ground_truth) {
        if (!in_scope(gt, max_distance, object_class)) continue;
        ++gt_count;
        if (!matched.contains(gt.gt_id)) ++fn_count;
    }
    return {gt_count, fn_count};
}

}  // namespace

bool evaluate_frame(const FrameRecord& frame, double max_distance, double threshold,
                    const std::string& object_class) {
    const auto [gt_count, fn_count] = frame_counts(frame, max_distance, object_class);
    const double ratio =
        gt_count > 0 ? static_cast<double>(fn_count) / static_cast<double>(gt_count) : 0.0;
    return ratio >= threshold;
}

namespace {

WindowResult make_window(const FrameRecord* frames, std::size_t count, std::size_t index,
                         const SpiSpec& spec, const MonitorConfig& config, bool partial) {
    WindowResult w;
    w.window_index = index;
    w.frame_start = frames[0].frame_id;
    w.frame_end = frames[count - 1].frame_id;
    w.partial = partial;
    for (std::size_t i = 0; i < count; ++i) {
        const auto& frame = frames[i];
        if (config.exclude_empty_frames) {
            const auto [gt_count, fn_count] =
                frame_counts(frame, spec.max_distance, config.object_class);
            if (gt_count == 0) continue;
        }
        if (evaluate_frame(frame, spec.max_distance, spec.threshold, config.object_class)) {
            w.s += 1.0;
        } else {
            w.r += 1.0;
        }
    }
    w.spi_opinion = opinion_from_evidence(EvidenceCounts{w.r, w.s, spec.prior_weight},
                                          spec.base_rate);
    return w;
}

}  // namespace

WindowResult evaluate_window(const std::vector<FrameRecord>& frames, const SpiSpec& spec,
                             const MonitorConfig& config) {
    spec.validate();
    if (static_cast<std::int64_t>(frames.size()) != spec.window_size) {
        throw WindowSizeMismatch("expected " + std::to_string(spec.window_size) +
                                 " frames, got " + std::to_string(frames.size()));
    }
    return make_window(frames.data(), frames.size(), 0, spec, config, false);
}

std::vector<WindowResult> windowed_stream(const std::vector<FrameRecord>& log,
                                          const SpiSpec& spec, const MonitorConfig& config) {
    spec.validate();
    for (std::size_t i = 1; i < log.size(); ++i) {
        if (log[i].frame_id <= log[i - 1].frame_id) {
            throw OrderingError("frame ids not strictly increasing at frame " +
                                std::to_string(log[i].frame_id));
        }
    }
    std::vector<WindowResult> windows;
    const auto k = static_cast<std::size_t>(spec.window_size);
    for (std::size_t start = 0, index = 0; start < log.size(); start += k, ++index) {
        const std::size_t count = std::min(k, log.size() - start);
        windows.push_back(
            make_window(log.data() + start, count, index, spec, config, count < k));
    }
    return windows;
}

namespace {

using nlohmann::ordered_json;

FrameRecord frame_from_json(const ordered_json& j) {
    FrameRecord frame;
    frame.frame_id = j.at("frame_id").get<std::int64_t>();
    frame.timestamp = j.at("timestamp").get<double>();
    std::unordered_set<std::string> gt_ids;
    for (const auto& g : j.at("ground_truth")) {
        GtObject gt;
        gt.gt_id = g.at("gt_id").get<std::string>();
        gt.object_class = g.at("class").get<std::string>();
        gt.distance = g.at("distance").get<double>();
        if (gt.distance < 0.0) throw SchemaError("negative ground-truth distance");
        gt_ids.insert(gt.gt_id);
        frame.ground_truth.push_back(std::move(gt));
    }
    for (const auto& d : j.at("detections")) {
        Detection det;
        if (!d.at("matched_gt_id").is_null()) {
            det.matched_gt_id = d.at("matched_gt_id").get<std::string>();
            if (!gt_ids.contains(*det.matched_gt_id)) {
                throw SchemaError("detection references unknown gt_id " +
                                  *det.matched_gt_id);
            }
        }
        det.object_class = d.at("class").get<std::string>();
        det.score = d.at("score").get<double>();
        frame.detections.push_back(std::move(det));
    }
    return frame;
}

ordered_json frame_to_json(const FrameRecord& frame) {
    ordered_json j;
    j["frame_id"] = frame.frame_id;
    j["timestamp"] = frame.timestamp;
    auto gts = ordered_json::array();
    for (const auto& gt : frame.ground_truth) {
        gts.push_back({{"gt_id", gt.gt_id}, {"class", gt.object_class},
                       {"distance", gt.distance}});
    }
    j["ground_truth"] = std::move(gts);
    auto dets = ordered_json::array();
    for (const auto& det : frame.detections) {
        ordered_json dj;
        if (det.matched_gt_id) {
            dj["matched_gt_id"] = *det.matched_gt_id;
        } else {
            dj["matched_gt_id"] = nullptr;
        }
        dj["class"] = det.object_class;
        dj["score"] = det.score;
        dets.push_back(std::move(dj));
    }
    j["detections"] = std::move(dets);
    return j;
}

}  // namespace

std::vector<FrameRecord> read_frame_log(std::istream& in) {
    std::vector<FrameRecord> log;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        try {
            log.push_back(frame_from_json(ordered_json::parse(line)));
        } catch (const ordered_json::exception& e) {
            throw SchemaError("frame log line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return log;
}

std::vector<FrameRecord> read_frame_log_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw SchemaError("cannot open frame log " + path);
    return read_frame_log(in);
}

void write_frame_log(std::ostream& out, const std::vector<FrameRecord>& log) {
    for (const auto& frame : log) {
        out << frame_to_json(frame).dump() << '\n';
    }
}

}  // namespace slassure
