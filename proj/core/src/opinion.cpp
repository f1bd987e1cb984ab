#include "slassure/opinion.hpp"

#include <cmath>
#include <cstddef>
#include <string>

namespace slassure {

namespace {

void check_unit(double v, const char* name) {
    if (!(v >= -kMassTolerance) || !(v <= 1.0 + kMassTolerance) || std::isnan(v)) {
        throw InvalidOpinion(std::string(name) + " out of [0,1]: " + std::to_string(v));
    }
}

double clamp01(double v) {
    if (v < 0.0) return 0.0;
    if (v > 1.0) return 1.0;
    return v;
}

}  // namespace

Opinion Opinion::make(double b, double d, double u, double a) {
    check_unit(b, "belief");
    check_unit(d, "disbelief");
    check_unit(u, "uncertainty");
    check_unit(a, "base_rate");
    const double sum = b + d + u;
    if (std::abs(sum - 1.0) > kMassTolerance) {
        throw InvalidOpinion("mass sum b+d+u = " + std::to_string(sum) + " != 1");
    }
    // Components are preserved bit-for-bit (apart from clamping sub-tolerance
    // negatives) so serialization round-trips are stable.
    return Opinion{clamp01(b), clamp01(d), clamp01(u), clamp01(a)};
}

Opinion opinion_from_evidence(const EvidenceCounts& counts, double base_rate) {
    if (!(counts.W > 0.0)) {
        throw InvalidOpinion("prior weight W must be > 0");
    }
    if (counts.r < 0.0 || counts.s < 0.0) {
        throw InvalidOpinion("evidence counts must be non-negative");
    }
    check_unit(base_rate, "base_rate");
    const double denom = counts.r + counts.s + counts.W;
    return Opinion{counts.r / denom, counts.s / denom, counts.W / denom, base_rate};
}

BetaParams opinion_to_beta(const Opinion& op, double prior_weight) {
    if (op.is_dogmatic()) {
        throw DogmaticOpinion("dogmatic opinion (u = 0) has no finite Beta mapping");
    }
    const double r = prior_weight * op.b / op.u;
    const double s = prior_weight * op.d / op.u;
    return BetaParams{r + op.a * prior_weight, s + (1.0 - op.a) * prior_weight};
}

double projected_probability(const Opinion& op) {
    return op.b + op.a * op.u;
}

Opinion negate(const Opinion& op) {
    return Opinion{op.d, op.b, op.u, 1.0 - op.a};
}

Opinion cbf_fuse(const Opinion& lhs, const Opinion& rhs) {
    if (std::abs(lhs.a - rhs.a) > kBaseRateTolerance) {
        throw BaseRateMismatch("base rates differ: " + std::to_string(lhs.a) + " vs " +
                               std::to_string(rhs.a));
    }
    const double kappa = lhs.u + rhs.u - lhs.u * rhs.u;
    if (kappa <= 0.0) {
        // Dogmatic limit with equal source weights.
        return Opinion{(lhs.b + rhs.b) / 2.0, (lhs.d + rhs.d) / 2.0, 0.0, lhs.a};
    }
    const double b = (lhs.b * rhs.u + rhs.b * lhs.u) / kappa;
    const double d = (lhs.d * rhs.u + rhs.d * lhs.u) / kappa;
    const double u = (lhs.u * rhs.u) / kappa;
    return Opinion::make(b, d, u, lhs.a);
}

Opinion refuting_challenge(const Opinion& challenger, const Opinion& target) {
    const double bc = challenger.b;
    return Opinion{target.b * (1.0 - bc), target.d + target.b * bc, target.u, target.a};
}

Opinion inject_uncertainty(const Opinion& op, double target_u) {
    check_unit(target_u, "target_u");
    if (target_u < op.u - kMassTolerance) {
        throw InvalidTarget("target uncertainty " + std::to_string(target_u) +
                            " below current " + std::to_string(op.u));
    }
    if (target_u <= op.u) return op;
    const double lambda = op.u >= 1.0 ? 0.0 : (1.0 - target_u) / (1.0 - op.u);
    return Opinion{lambda * op.b, lambda * op.d, target_u, op.a};
}

double beta_variance(const BetaParams& p) {
    const double n = p.alpha + p.beta;
    return p.alpha * p.beta / (n * n * (n + 1.0));
}

ConfidenceMetrics confidence_metrics(const Opinion& op, double prior_weight) {
    ConfidenceMetrics m;
    m.first_order = 1.0 - op.u;
    m.projected_probability = projected_probability(op);
    m.beta_variance = op.is_dogmatic() ? 0.0 : beta_variance(opinion_to_beta(op, prior_weight));
    return m;
}

double beta_pdf(const BetaParams& p, double x) {
    if (x <= 0.0 || x >= 1.0) return 0.0;
    const double log_norm =
        std::lgamma(p.alpha + p.beta) - std::lgamma(p.alpha) - std::lgamma(p.beta);
    return std::exp(log_norm + (p.alpha - 1.0) * std::log(x) +
                    (p.beta - 1.0) * std::log1p(-x));
}

std::vector<std::pair<double, double>> beta_pdf_samples(const BetaParams& p,
                                                        std::size_t n_points) {
    // Grid stays strictly inside (0, 1); the pdf is unbounded at the
    // endpoints for alpha < 1 or beta < 1.
    constexpr double kEdge = 1e-6;
    std::vector<std::pair<double, double>> out;
    out.reserve(n_points);
    const double step = (1.0 - 2.0 * kEdge) / static_cast<double>(n_points - 1);
    for (std::size_t i = 0; i < n_points; ++i) {
        const double x = kEdge + step * static_cast<double>(i);
        out.emplace_back(x, beta_pdf(p, x));
    }
    return out;
}

}  // namespace slassure
