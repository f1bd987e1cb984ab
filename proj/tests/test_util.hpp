#pragma once

#include <random>

#include "slassure/monitor.hpp"
#include "slassure/opinion.hpp"

namespace slassure::testing {

inline double uniform(std::mt19937_64& rng, double lo = 0.0, double hi = 1.0) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

/// Random valid opinion with u bounded away from 0.
inline Opinion random_opinion(std::mt19937_64& rng, double base_rate = 0.5,
                              double min_u = 1e-6) {
    double b = uniform(rng);
    double d = uniform(rng);
    double u = uniform(rng, min_u, 1.0);
    const double sum = b + d + u;
    b /= sum;
    d /= sum;
    u /= sum;
    return Opinion::make(b, d, 1.0 - b - d, base_rate);
}

/// Frame whose SPI outcome is forced: violating frames have all objects
/// unmatched, non-violating frames have all matched.
inline FrameRecord forced_frame(std::int64_t frame_id, bool violating,
                                int n_objects = 2, double distance = 10.0) {
    FrameRecord frame;
    frame.frame_id = frame_id;
    frame.timestamp = static_cast<double>(frame_id) * 0.1;
    for (int i = 0; i < n_objects; ++i) {
        GtObject gt;
        gt.gt_id = "g" + std::to_string(frame_id) + "_" + std::to_string(i);
        gt.object_class = "cone";
        gt.distance = distance;
        if (!violating) {
            Detection det;
            det.matched_gt_id = gt.gt_id;
            det.object_class = "cone";
            det.score = 0.9;
            frame.detections.push_back(det);
        }
        frame.ground_truth.push_back(gt);
    }
    return frame;
}

/// Log of forced frames; `violations[i]` decides frame i's outcome.
inline std::vector<FrameRecord> forced_log(const std::vector<bool>& violations) {
    std::vector<FrameRecord> log;
    for (std::size_t i = 0; i < violations.size(); ++i) {
        log.push_back(forced_frame(static_cast<std::int64_t>(i), violations[i]));
    }
    return log;
}

}  // namespace slassure::testing
