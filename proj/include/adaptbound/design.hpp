#pragma once

#include "adaptbound/core.hpp"

#include <optional>
#include <string>
#include <vector>

namespace adaptbound {

// Result of the smallest-state admissibility test. The boolean follows
// the R_2-coefficient threshold; the R_N-coefficient variant is reported
// alongside because the two forms differ for N > 2.
struct R1Criterion {
    double threshold = 0.0;           // (A_1 - 1/C) / (1 - A_N + A_1) * R_2
    double threshold_r_largest = 0.0; // same coefficient times R_N
    bool admissible = false;          // R_1 < threshold
    // Direct check: alpha = 1 resource with S_1 versus a zero-cost random
    // guesser (R = 0, A = 1/C) in its place.
    double r_oracle = 0.0;
    double r_oracle_random_first = 0.0;
    bool direct_admissible = false;
    bool consistent() const noexcept { return admissible == direct_admissible; }
};

// Requires N >= 2, num_classes set, and A_1 >= 1/C (within kTolerance).
R1Criterion r1_admissible(const StateSpace& space);

struct SubsetPlan {
    std::size_t k = 0;
    std::vector<std::size_t> chosen_ranks; // 1-based, increasing, ends at N
    double r_oracle = 0.0;                 // alpha = 1 resource of the subset
    double r_ratio = 0.0;                  // R_N / r_oracle
    std::optional<double> marginal_utility; // greedy: drop in r_oracle at this step
};

// Minimum alpha = 1 resource over subsets of size k that contain S_N.
SubsetPlan optimal_subset(const StateSpace& space, std::size_t k);
// Optimal plans for k = 1..k_max from a single DP pass.
std::vector<SubsetPlan> optimal_subsets(const StateSpace& space, std::size_t k_max);

// Nested plans for k = 1..k_max, each adding the state with the largest
// resource reduction (ties: lower resource, then model_id).
std::vector<SubsetPlan> greedy_growth(const StateSpace& space, std::size_t k_max);

// alpha = 1 resource of the subset given by 1-based ranks (any order).
double subset_resource(const StateSpace& space, const std::vector<std::size_t>& ranks);

// Continuous-limit bound: R_1 + A_h (R_h - R_1) - integral of A(R) over
// [R_1, R_h], integrated exactly per linear segment.
OracleOutcome continuous_bound(const Envelope& envelope);

} // namespace adaptbound
