#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "slassure/opinion.hpp"

namespace slassure {

/// Parameters of a windowed SPI monitor attached to a claim.
struct SpiSpec {
    std::string id;
    std::string claim_id;
    std::int64_t window_size = 10;  // k, frames per window
    double threshold = 0.5;         // theta, violation when FN/GT >= theta
    double max_distance = 50.0;     // d, meters
    double prior_weight = 2.0;      // W
    double base_rate = 0.5;         // a

    void validate() const;
};

struct GtObject {
    std::string gt_id;
    std::string object_class;
    double distance = 0.0;  // meters from ego, >= 0
};

struct Detection {
    std::optional<std::string> matched_gt_id;  // absent = false positive
    std::string object_class;
    double score = 0.0;
};

/// One timestamped perception frame with pre-resolved GT matching.
struct FrameRecord {
    std::int64_t frame_id = 0;
    double timestamp = 0.0;
    std::vector<GtObject> ground_truth;
    std::vector<Detection> detections;
};

struct WindowResult {
    std::size_t window_index = 0;
    std::int64_t frame_start = 0;
    std::int64_t frame_end = 0;
    bool partial = false;
    double r = 0.0;  // non-violation count
    double s = 0.0;  // violation count
    Opinion spi_opinion;
};

struct MonitorConfig {
    std::string object_class;          // empty = all classes
    bool exclude_empty_frames = false; // when set, GT-empty frames add no evidence
};

/// Per-frame SPI rule: ratio = FN/GT over in-range objects of the class,
/// 0 when GT = 0; violation iff ratio >= threshold.
bool evaluate_frame(const FrameRecord& frame, double max_distance, double threshold,
                    const std::string& object_class = {});

/// Aggregates exactly spec.window_size frames into evidence counts and an
/// SPI opinion. Throws WindowSizeMismatch otherwise.
WindowResult evaluate_window(const std::vector<FrameRecord>& frames, const SpiSpec& spec,
                             const MonitorConfig& config = {});

/// Partitions an ordered log into consecutive non-overlapping windows of
/// spec.window_size frames; a trailing partial window is flagged partial.
/// Throws OrderingError on non-monotone frame ids.
std::vector<WindowResult> windowed_stream(const std::vector<FrameRecord>& log,
                                          const SpiSpec& spec,
                                          const MonitorConfig& config = {});

// JSON-lines frame-log I/O.
std::vector<FrameRecord> read_frame_log(std::istream& in);
std::vector<FrameRecord> read_frame_log_file(const std::string& path);
void write_frame_log(std::ostream& out, const std::vector<FrameRecord>& log);

}  // namespace slassure
