#include "adaptbound/design.hpp"

#include "adaptbound/bounds.hpp"
#include "adaptbound/error.hpp"
#include "adaptbound/numeric.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace adaptbound {

namespace {

void require_design_space(const StateSpace& space) {
    if (space.size() == 0) throw ValidationError("state space is empty");
    if (!space.has_accuracies()) throw ValidationError("state space is missing accuracies");
}

SubsetPlan make_plan(const StateSpace& space, std::vector<std::size_t> ranks) {
    SubsetPlan plan;
    plan.k = ranks.size();
    plan.r_oracle = subset_resource(space, ranks);
    plan.r_ratio = space.largest_resource() / plan.r_oracle;
    plan.chosen_ranks = std::move(ranks);
    return plan;
}

} // namespace

R1Criterion r1_admissible(const StateSpace& space) {
    require_design_space(space);
    if (space.size() < 2) {
        throw ValidationError("the R_1 criterion needs at least 2 states");
    }
    if (!space.num_classes()) {
        throw ValidationError("the R_1 criterion needs the number of classes C");
    }
    const double chance = 1.0 / static_cast<double>(*space.num_classes());
    const double a1 = space.accuracy(0);
    const double an = space.largest_accuracy();
    if (a1 < chance - kTolerance) {
        throw ValidationError(fmt::format(
            "smallest state accuracy {} is below chance level 1/C = {}", a1, chance));
    }

    const double coefficient = std::max(0.0, (a1 - chance) / (1.0 - an + a1));
    R1Criterion out;
    out.threshold = coefficient * space.resource(1);
    out.threshold_r_largest = coefficient * space.largest_resource();
    out.admissible = space.resource(0) < out.threshold;

    std::vector<double> resources = space.resources();
    std::vector<double> accuracies = space.accuracies();
    out.r_oracle = conservative_resource(resources, accuracies);
    resources[0] = 0.0;
    accuracies[0] = chance;
    out.r_oracle_random_first = conservative_resource(resources, accuracies);
    out.direct_admissible = out.r_oracle < out.r_oracle_random_first;
    return out;
}

double subset_resource(const StateSpace& space, const std::vector<std::size_t>& ranks) {
    if (ranks.empty()) throw ValidationError("subset is empty");
    std::vector<std::size_t> sorted = ranks;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) {
        throw ValidationError("subset repeats a rank");
    }
    if (sorted.front() < 1 || sorted.back() > space.size()) {
        throw ValidationError(fmt::format("subset rank outside [1, {}]", space.size()));
    }
    std::vector<double> resources;
    std::vector<double> accuracies;
    for (std::size_t rank : sorted) {
        resources.push_back(space.resource(rank - 1));
        accuracies.push_back(space.accuracy(rank - 1));
    }
    return conservative_resource(resources, accuracies);
}

std::vector<SubsetPlan> optimal_subsets(const StateSpace& space, std::size_t k_max) {
    require_design_space(space);
    const std::size_t n = space.size();
    if (k_max < 1 || k_max > n) {
        throw ValidationError(fmt::format("k must lie in [1, {}], got {}", n, k_max));
    }
    const std::vector<double> r = space.resources();
    const std::vector<double> a = space.accuracies();
    const double rn = r[n - 1];
    const double an = a[n - 1];
    constexpr double kInf = std::numeric_limits<double>::infinity();
    constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

    // Subset objective = start(s) - sum over consecutive pairs of
    // (A_cur - A_prev)(R_N - R_cur). The pair weights do not depend on the
    // first member, so best[c][j] (c members, last one j) is a shortest
    // path over (count, state).
    std::vector<std::vector<double>> best(k_max, std::vector<double>(n, kInf));
    std::vector<std::vector<std::size_t>> parent(k_max, std::vector<std::size_t>(n, kNone));
    for (std::size_t j = 0; j < n; ++j) best[0][j] = r[j] + (an - a[j]) * (rn - r[j]);
    for (std::size_t c = 1; c < k_max; ++c) {
        for (std::size_t j = c; j < n; ++j) {
            for (std::size_t i = c - 1; i < j; ++i) {
                if (best[c - 1][i] == kInf) continue;
                const double v = best[c - 1][i] - (a[j] - a[i]) * (rn - r[j]);
                if (v < best[c][j]) {
                    best[c][j] = v;
                    parent[c][j] = i;
                }
            }
        }
    }

    std::vector<SubsetPlan> plans;
    plans.reserve(k_max);
    for (std::size_t c = 0; c < k_max; ++c) {
        std::vector<std::size_t> ranks(c + 1);
        std::size_t j = n - 1;
        for (std::size_t level = c + 1; level-- > 0;) {
            ranks[level] = j + 1;
            if (level > 0) j = parent[level][j];
        }
        plans.push_back(make_plan(space, std::move(ranks)));
    }
    return plans;
}

SubsetPlan optimal_subset(const StateSpace& space, std::size_t k) {
    require_design_space(space);
    if (k < 1 || k > space.size()) {
        throw ValidationError(fmt::format("k must lie in [1, {}], got {}", space.size(), k));
    }
    return optimal_subsets(space, k).back();
}

std::vector<SubsetPlan> greedy_growth(const StateSpace& space, std::size_t k_max) {
    require_design_space(space);
    const std::size_t n = space.size();
    if (k_max < 1 || k_max > n) {
        throw ValidationError(fmt::format("k_max must lie in [1, {}], got {}", n, k_max));
    }
    const double tie = 1e-12 * std::max(1.0, space.largest_resource());

    std::vector<SubsetPlan> plans;
    std::vector<std::size_t> current{n};
    std::vector<bool> used(n + 1, false);
    used[n] = true;
    plans.push_back(make_plan(space, current));

    while (plans.size() < k_max) {
        const double previous = plans.back().r_oracle;
        std::size_t best_rank = 0;
        double best_gain = -std::numeric_limits<double>::infinity();
        for (std::size_t rank = 1; rank <= n; ++rank) {
            if (used[rank]) continue;
            std::vector<std::size_t> trial = current;
            trial.push_back(rank);
            const double gain = previous - subset_resource(space, trial);
            bool take = gain > best_gain + tie;
            if (!take && std::abs(gain - best_gain) <= tie) {
                const auto& cand = space[rank - 1];
                const auto& held = space[best_rank - 1];
                take = cand.resource < held.resource ||
                       (cand.resource == held.resource && cand.model_id < held.model_id);
            }
            if (take) {
                best_gain = gain;
                best_rank = rank;
            }
        }
        used[best_rank] = true;
        current.insert(std::upper_bound(current.begin(), current.end(), best_rank), best_rank);
        SubsetPlan plan = make_plan(space, current);
        plan.marginal_utility = previous - plan.r_oracle;
        plans.push_back(std::move(plan));
    }
    return plans;
}

OracleOutcome continuous_bound(const Envelope& envelope) {
    const auto points = envelope.points();
    if (points.size() < 2) {
        throw ValidationError("envelope needs at least 2 points");
    }
    const double r1 = points.front().resource;
    const double rh = points.back().resource;
    const double ah = points.back().accuracy;

    CompensatedSum area;
    for (std::size_t j = 1; j < points.size(); ++j) {
        area += 0.5 * (points[j].resource - points[j - 1].resource) *
                (points[j].accuracy + points[j - 1].accuracy);
    }
    CompensatedSum r;
    r += r1;
    r += ah * (rh - r1);
    r -= area.value();

    OracleOutcome out;
    out.r_oracle = r.value();
    out.a_oracle = ah;
    out.delta_r = rh - out.r_oracle;
    out.delta_a = 0.0;
    out.r_ratio = rh / out.r_oracle;
    return out;
}

} // namespace adaptbound
