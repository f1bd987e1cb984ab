#pragma once

#include <utility>
#include <vector>

#include "slassure/errors.hpp"

namespace slassure {

inline constexpr double kMassTolerance = 1e-9;
inline constexpr double kBaseRateTolerance = 1e-9;

/// Binomial subjective opinion (b, d, u, a) over a binary proposition.
/// b + d + u = 1; all components in [0, 1].
struct Opinion {
    double b = 0.0;  // belief mass for "claim true"
    double d = 0.0;  // disbelief mass
    double u = 1.0;  // uncommitted mass
    double a = 0.5;  // base rate (prior probability)

    /// Validating constructor. Mass sums off by at most kMassTolerance are
    /// renormalized; larger discrepancies throw InvalidOpinion.
    static Opinion make(double b, double d, double u, double a);

    /// (0, 0, 1, a) — total uncertainty, neutral element of fusion.
    static Opinion vacuous(double a = 0.5) { return Opinion{0.0, 0.0, 1.0, a}; }

    bool is_dogmatic() const { return u <= 0.0; }

    friend bool operator==(const Opinion&, const Opinion&) = default;
};

/// Positive/negative observation tallies with non-informative prior weight.
/// Counts may be fractional (discounted evidence); W must be positive.
struct EvidenceCounts {
    double r = 0.0;
    double s = 0.0;
    double W = 2.0;
};

struct BetaParams {
    double alpha = 1.0;
    double beta = 1.0;
};

struct ConfidenceMetrics {
    double first_order = 0.0;            // committed mass 1 - u
    double projected_probability = 0.0;  // E = b + a*u
    double beta_variance = 0.0;          // variance of the mapped Beta
};

/// b = r/(r+s+W), d = s/(r+s+W), u = W/(r+s+W).
Opinion opinion_from_evidence(const EvidenceCounts& counts, double base_rate);

/// Recovers evidence counts from the opinion, then alpha = r + aW,
/// beta = s + (1-a)W. Throws DogmaticOpinion when u = 0.
BetaParams opinion_to_beta(const Opinion& op, double prior_weight);

/// E = b + a*u.
double projected_probability(const Opinion& op);

/// (d, b, u, 1-a).
Opinion negate(const Opinion& op);

/// Cumulative belief fusion of two independent opinions on the same claim.
/// Requires matching base rates (within kBaseRateTolerance); the dogmatic
/// limit u_A = u_B = 0 averages the committed masses.
Opinion cbf_fuse(const Opinion& lhs, const Opinion& rhs);

/// Refuting challenge: reallocates target belief to disbelief in proportion
/// to the challenger's belief mass, leaving uncertainty unchanged.
Opinion refuting_challenge(const Opinion& challenger, const Opinion& target);

/// Proportional discount of committed mass up to target_u. Preserves the
/// belief/disbelief ratio. Throws InvalidTarget when target_u < current u.
Opinion inject_uncertainty(const Opinion& op, double target_u);

ConfidenceMetrics confidence_metrics(const Opinion& op, double prior_weight);

double beta_variance(const BetaParams& p);

double beta_pdf(const BetaParams& p, double x);

/// Density sampled on a uniform grid over the open interval (0, 1).
std::vector<std::pair<double, double>> beta_pdf_samples(const BetaParams& p,
                                                        std::size_t n_points);

}  // namespace slassure
