#pragma once

#include "adaptbound/core.hpp"

#include <span>

namespace adaptbound {

// Expected cost/accuracy of the adaptive oracle given the nested error
// probabilities P(e_i). Fills selection_freq with P(x_1)..P(x_N), P(x_f).
OracleOutcome oracle_from_cascade(const StateSpace& space, const ErrorCascade& cascade);

// Converts alpha to a cascade: p_1 = 1 - A_1, p_i = alpha_i (1 - A_i).
// Throws InconsistencyError naming the first rank where p increases.
ErrorCascade cascade_from_alpha(const StateSpace& space, const AlphaProfile& profile);

// Closed form in alpha_i; agrees with the cascade route to 1e-12.
OracleOutcome oracle_from_alpha_profile(const StateSpace& space, const AlphaProfile& profile);

// Closed form with alpha_i = alpha for every i. alpha = 0 gives the
// optimistic endpoint, alpha = 1 the conservative bound.
OracleOutcome oracle_constant_alpha(const StateSpace& space, double alpha);

// alpha = 1: R_1 + sum_{i>=2} (R_i - R_1)(A_i - A_{i-1}), A_oracle = A_N.
OracleOutcome oracle_conservative(const StateSpace& space);

// The alpha = 1 resource in its two algebraic forms over raw columns.
// Neither validates; callers pass matching, non-empty spans.
double conservative_resource(std::span<const double> resources,
                             std::span<const double> accuracies);
// R_1 + (A_N - A_1)(R_N - R_1) - sum_{i>=2} (A_i - A_{i-1})(R_N - R_i)
double conservative_resource_by_range(std::span<const double> resources,
                                      std::span<const double> accuracies);

struct GainMetrics {
    double delta_r = 0.0;
    double delta_a = 0.0;
    double r_ratio = 0.0;
};

GainMetrics gain_metrics(const StateSpace& space, const OracleOutcome& outcome);

} // namespace adaptbound
