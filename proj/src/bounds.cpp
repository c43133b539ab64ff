#include "adaptbound/bounds.hpp"

#include "adaptbound/error.hpp"
#include "adaptbound/numeric.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <cassert>
#include <cmath>

namespace adaptbound {

namespace {

void require_accuracies(const StateSpace& space) {
    if (space.size() == 0) {
        throw ValidationError("state space is empty");
    }
    if (!space.has_accuracies()) {
        throw ValidationError("state space is missing accuracies");
    }
}

[[maybe_unused]] bool close(double a, double b, double scale) {
    return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(scale));
}

// P(x_1)..P(x_N), P(x_f) from the nested error probabilities.
std::vector<double> selection_from_cascade(const ErrorCascade& cascade) {
    const std::size_t n = cascade.size();
    std::vector<double> freq(n + 1);
    freq[0] = 1.0 - cascade[0];
    for (std::size_t i = 1; i < n; ++i) freq[i] = cascade[i - 1] - cascade[i];
    freq[n] = cascade[n - 1];
    return freq;
}

void fill_gains(const StateSpace& space, OracleOutcome& out) {
    const GainMetrics g = gain_metrics(space, out);
    out.delta_r = g.delta_r;
    out.delta_a = g.delta_a;
    out.r_ratio = g.r_ratio;
}

void require_ordered(const StateSpace& space) {
    require_accuracies(space);
    if (!space.accuracies_ordered()) {
        throw ValidationError("closed-form bounds require accuracies non-decreasing in resource");
    }
}

} // namespace

GainMetrics gain_metrics(const StateSpace& space, const OracleOutcome& outcome) {
    if (!(outcome.r_oracle > 0.0)) {
        throw ValidationError(fmt::format("r_oracle must be positive, got {}", outcome.r_oracle));
    }
    GainMetrics g;
    g.delta_r = space.largest_resource() - outcome.r_oracle;
    g.delta_a = outcome.a_oracle - space.largest_accuracy();
    g.r_ratio = space.largest_resource() / outcome.r_oracle;
    return g;
}

OracleOutcome oracle_from_cascade(const StateSpace& space, const ErrorCascade& cascade) {
    require_accuracies(space);
    if (cascade.size() != space.size()) {
        throw ValidationError(fmt::format("cascade has {} entries but the space has {} states",
                                          cascade.size(), space.size()));
    }
    OracleOutcome out;
    out.selection_freq = selection_from_cascade(cascade);
    const std::size_t n = space.size();

    // The all-wrong fallback runs S_1, so it is charged R_1.
    CompensatedSum r;
    r += space.resource(0) * out.selection_freq[0];
    r += space.resource(0) * out.selection_freq[n];
    for (std::size_t i = 1; i < n; ++i) r += space.resource(i) * out.selection_freq[i];
    out.r_oracle = r.value();
    out.a_oracle = 1.0 - cascade[n - 1];
    fill_gains(space, out);
    return out;
}

ErrorCascade cascade_from_alpha(const StateSpace& space, const AlphaProfile& profile) {
    require_accuracies(space);
    if (profile.num_states() != space.size()) {
        throw ValidationError(fmt::format("alpha profile covers {} states but the space has {}",
                                          profile.num_states(), space.size()));
    }
    std::vector<std::size_t> undefined;
    for (std::size_t rank = 2; rank <= space.size(); ++rank) {
        if (!profile.at_rank(rank)) undefined.push_back(rank);
    }
    if (!undefined.empty()) {
        throw ValidationError(
            fmt::format("alpha undefined at rank(s) {}", fmt::join(undefined, ", ")));
    }

    std::vector<double> p(space.size());
    p[0] = 1.0 - space.accuracy(0);
    for (std::size_t i = 1; i < space.size(); ++i) {
        p[i] = *profile.at_rank(i + 1) * (1.0 - space.accuracy(i));
        if (p[i] > p[i - 1] + kTolerance) {
            throw InconsistencyError(
                fmt::format("alpha profile is inconsistent with the accuracies at rank {}: "
                            "alpha_{} (1 - A_{}) = {} exceeds P(e_{}) = {}",
                            i + 1, i + 1, i + 1, p[i], i, p[i - 1]),
                i + 1);
        }
    }
    return ErrorCascade(std::move(p));
}

OracleOutcome oracle_from_alpha_profile(const StateSpace& space, const AlphaProfile& profile) {
    const ErrorCascade cascade = cascade_from_alpha(space, profile);
    const std::size_t n = space.size();

    OracleOutcome out;
    out.selection_freq = selection_from_cascade(cascade);
    if (n == 1) {
        out.r_oracle = space.resource(0);
        out.a_oracle = space.accuracy(0);
        fill_gains(space, out);
        return out;
    }

    const double r1 = space.resource(0);
    const double alpha_n = *profile.at_rank(n);
    CompensatedSum r;
    r += r1;
    r += (space.resource(1) - r1) * (1.0 - space.accuracy(0));
    for (std::size_t i = 2; i < n; ++i) {
        // alpha_{i-1} (R_i - R_{i-1}) (1 - A_{i-1}) in 1-based ranks.
        r += *profile.at_rank(i) * (space.resource(i) - space.resource(i - 1)) *
             (1.0 - space.accuracy(i - 1));
    }
    r -= alpha_n * (space.largest_resource() - r1) * (1.0 - space.largest_accuracy());
    out.r_oracle = r.value();
    out.a_oracle = 1.0 - alpha_n * (1.0 - space.largest_accuracy());
    fill_gains(space, out);

    assert(close(out.r_oracle, oracle_from_cascade(space, cascade).r_oracle,
                 space.largest_resource()));
    return out;
}

OracleOutcome oracle_constant_alpha(const StateSpace& space, double alpha) {
    require_ordered(space);
    if (!(alpha >= 0.0 && alpha <= 1.0)) {
        throw ValidationError(fmt::format("alpha must lie in [0,1], got {}", alpha));
    }
    if (alpha == 1.0) return oracle_conservative(space);

    const std::size_t n = space.size();
    OracleOutcome out;
    out.selection_freq =
        selection_from_cascade(cascade_from_alpha(space, AlphaProfile::constant(n, alpha)));
    if (n == 1) {
        out.r_oracle = space.resource(0);
        out.a_oracle = space.accuracy(0);
        fill_gains(space, out);
        return out;
    }

    const double r1 = space.resource(0);
    CompensatedSum bracket;
    for (std::size_t i = 2; i < n; ++i) {
        bracket += (space.resource(i) - space.resource(i - 1)) * (1.0 - space.accuracy(i - 1));
    }
    bracket -= (space.largest_resource() - r1) * (1.0 - space.largest_accuracy());

    CompensatedSum r;
    r += r1;
    r += (space.resource(1) - r1) * (1.0 - space.accuracy(0));
    r += alpha * bracket.value();
    out.r_oracle = r.value();
    out.a_oracle = 1.0 - alpha * (1.0 - space.largest_accuracy());
    fill_gains(space, out);
    return out;
}

double conservative_resource(std::span<const double> resources,
                             std::span<const double> accuracies) {
    const double r1 = resources[0];
    CompensatedSum r;
    r += r1;
    for (std::size_t i = 1; i < resources.size(); ++i) {
        r += (resources[i] - r1) * (accuracies[i] - accuracies[i - 1]);
    }
    return r.value();
}

double conservative_resource_by_range(std::span<const double> resources,
                                      std::span<const double> accuracies) {
    const std::size_t n = resources.size();
    const double r1 = resources[0];
    const double rn = resources[n - 1];
    CompensatedSum r;
    r += r1;
    r += (accuracies[n - 1] - accuracies[0]) * (rn - r1);
    for (std::size_t i = 1; i < n; ++i) {
        r -= (accuracies[i] - accuracies[i - 1]) * (rn - resources[i]);
    }
    return r.value();
}

OracleOutcome oracle_conservative(const StateSpace& space) {
    require_ordered(space);
    const std::vector<double> resources = space.resources();
    const std::vector<double> accuracies = space.accuracies();

    OracleOutcome out;
    out.r_oracle = conservative_resource(resources, accuracies);
    assert(close(out.r_oracle, conservative_resource_by_range(resources, accuracies),
                 space.largest_resource()));
    out.a_oracle = space.largest_accuracy();

    std::vector<double> p(space.size());
    for (std::size_t i = 0; i < p.size(); ++i) p[i] = 1.0 - accuracies[i];
    out.selection_freq = selection_from_cascade(ErrorCascade(std::move(p)));
    fill_gains(space, out);
    return out;
}

} // namespace adaptbound
