#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slassure/argument.hpp"
#include "slassure/monitor.hpp"
#include "slassure/opinion.hpp"

namespace slassure {

struct TracePoint {
    std::size_t window_index = 0;
    std::int64_t frame_start = 0;
    std::int64_t frame_end = 0;
    bool partial = false;
    double r = 0.0;
    double s = 0.0;
    Opinion spi_opinion;
    Opinion claim_before;
    Opinion claim_after;
    ConfidenceMetrics metrics_after;
    std::optional<BetaParams> beta_after;  // absent for dogmatic opinions
};

struct ConfidenceTrace {
    std::string claim_id;
    std::string spi_id;
    SpiSpec config;
    Opinion initial;
    Opinion final_opinion;
    std::vector<TracePoint> points;
};

struct ReplayResult {
    ConfidenceTrace trace;
    ArgumentGraph graph;  // input graph with the final opinion written back
    std::vector<std::string> warnings;
};

/// Repeated fusion drives u toward 0; below this floor b, d are rescaled so
/// the Beta mapping stays finite.
inline constexpr double kUncertaintyFloor = 1e-12;

/// One confidence-update step: fuse the window's SPI opinion into the claim,
/// then challenge with the negated SPI opinion.
Opinion apply_update(const Opinion& claim_op, const Opinion& spi_op);

/// Folds apply_update over the log's windows, recording every step.
ReplayResult run_replay(const ArgumentGraph& graph, const std::string& claim_id,
                        const std::vector<FrameRecord>& log, const SpiSpec& spec,
                        const MonitorConfig& config = {});

}  // namespace slassure
