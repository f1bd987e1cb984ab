#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "slassure/engine.hpp"

namespace slassure {

/// Stable float formatting used in all emitted files: 9 significant digits.
std::string format_float(double v);

void write_trace_csv(std::ostream& out, const ConfidenceTrace& trace);
void write_trace_json(std::ostream& out, const ConfidenceTrace& trace);
ConfidenceTrace read_trace_json(std::istream& in);
ConfidenceTrace read_trace_json_file(const std::string& path);

/// (x, density) rows for Beta pdf plot data.
void write_beta_samples_csv(std::ostream& out, const BetaParams& params,
                            std::size_t n_points);

/// Audit summary of one claim across one or more traces.
struct ClaimReport {
    std::string claim_id;
    struct Run {
        std::string spi_id;
        SpiSpec config;
        Opinion initial;
        Opinion final_opinion;
        double min_belief = 1.0;
        std::size_t min_belief_window = 0;
        std::size_t violation_windows = 0;
        std::size_t total_windows = 0;
        ConfidenceMetrics final_metrics;
    };
    std::vector<Run> runs;
    bool differing_thresholds = false;
};

std::vector<ClaimReport> build_report(const std::vector<ConfidenceTrace>& traces);
void write_report_text(std::ostream& out, const std::vector<ClaimReport>& reports);
void write_report_json(std::ostream& out, const std::vector<ClaimReport>& reports);

}  // namespace slassure
