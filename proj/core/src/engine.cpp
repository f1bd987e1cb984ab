#include "slassure/engine.hpp"

namespace slassure {

Opinion apply_update(const Opinion& claim_op, const Opinion& spi_op) {
    Opinion fused = cbf_fuse(claim_op, spi_op);
    Opinion updated = refuting_challenge(negate(spi_op), fused);
    if (updated.u < kUncertaintyFloor && updated.u > 0.0) {
        const double committed = updated.b + updated.d;
        const double scale = (1.0 - kUncertaintyFloor) / committed;
        updated = Opinion{updated.b * scale, updated.d * scale, kUncertaintyFloor,
                          updated.a};
    }
    return updated;
}

ReplayResult run_replay(const ArgumentGraph& graph, const std::string& claim_id,
                        const std::vector<FrameRecord>& log, const SpiSpec& spec,
                        const MonitorConfig& config) {
    ReplayResult result;
    Opinion claim = graph.claim_opinion(claim_id);
    if (claim.is_dogmatic()) {
        result.warnings.push_back("claim " + claim_id +
                                  " has a dogmatic initial opinion (u = 0); "
                                  "fusion will ignore runtime evidence");
    }

    result.trace.claim_id = claim_id;
    result.trace.spi_id = spec.id;
    result.trace.config = spec;
    result.trace.initial = claim;

    for (const auto& window : windowed_stream(log, spec, config)) {
        TracePoint point;
        point.window_index = window.window_index;
        point.frame_start = window.frame_start;
        point.frame_end = window.frame_end;
        point.partial = window.partial;
        point.r = window.r;
        point.s = window.s;
        point.spi_opinion = window.spi_opinion;
        point.claim_before = claim;
        claim = apply_update(claim, window.spi_opinion);
        point.claim_after = claim;
        point.metrics_after = confidence_metrics(claim, spec.prior_weight);
        if (!claim.is_dogmatic()) {
            point.beta_after = opinion_to_beta(claim, spec.prior_weight);
        }
        result.trace.points.push_back(std::move(point));
    }

    result.trace.final_opinion = claim;
    result.graph = graph.with_claim_opinion(claim_id, claim);
    return result;
}

}  // namespace slassure
