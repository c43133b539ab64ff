#include "adaptbound/synth.hpp"

#include "adaptbound/empirical.hpp"
#include "adaptbound/error.hpp"

#include <fmt/format.h>

#include <cmath>

namespace adaptbound {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr int kBisectionSteps = 40;

// Stream ids; holdout draws use the same layout offset by kHoldout.
constexpr std::uint64_t kHardness = 0;
constexpr std::uint64_t kIndependent = 1;
constexpr std::uint64_t kSelector = 2;
constexpr std::uint64_t kHoldout = 16;

void check_spec(const SynthSpec& spec) {
    if (spec.accuracies.empty()) throw ValidationError("synth: no accuracies given");
    if (spec.n_instances < 1) throw ValidationError("synth: n_instances must be >= 1");
    for (std::size_t i = 0; i < spec.accuracies.size(); ++i) {
        const double a = spec.accuracies[i];
        if (!(a >= 0.0 && a <= 1.0)) {
            throw ValidationError(fmt::format("synth: accuracy {} = {} outside [0,1]", i + 1, a));
        }
        if (i > 0 && a < spec.accuracies[i - 1]) {
            throw ValidationError(
                fmt::format("synth: accuracies must be non-decreasing (index {})", i + 1));
        }
    }
    if (!spec.model_ids.empty() && spec.model_ids.size() != spec.accuracies.size()) {
        throw ValidationError("synth: model_ids and accuracies differ in length");
    }
    if (spec.mode == SynthMode::alpha_target) {
        if (!spec.alpha_target) throw ValidationError("synth: alpha_target mode needs a target");
        if (!(*spec.alpha_target >= 0.0 && *spec.alpha_target <= 1.0)) {
            throw ValidationError("synth: alpha_target outside [0,1]");
        }
    }
}

std::vector<std::string> model_ids_for(const SynthSpec& spec) {
    if (!spec.model_ids.empty()) return spec.model_ids;
    std::vector<std::string> ids;
    for (std::size_t i = 0; i < spec.accuracies.size(); ++i) ids.push_back(fmt::format("m{}", i + 1));
    return ids;
}

std::vector<std::string> instance_ids_for(std::size_t n) {
    const std::size_t width = fmt::format("{}", n).size();
    std::vector<std::string> ids;
    ids.reserve(n);
    for (std::size_t x = 0; x < n; ++x) ids.push_back(fmt::format("x{:0{}}", x + 1, width));
    return ids;
}

// Cells for the given mixing rate: each cell reads the shared hardness
// with probability 1 - dilution and an independent uniform otherwise.
std::vector<std::uint8_t> draw_cells(const SynthSpec& spec, double dilution,
                                     std::uint64_t stream_offset) {
    const std::size_t n_models = spec.accuracies.size();
    const CounterRng hardness(spec.seed, kHardness + stream_offset);
    const CounterRng independent(spec.seed, kIndependent + stream_offset);
    const CounterRng selector(spec.seed, kSelector + stream_offset);

    std::vector<std::uint8_t> cells(spec.n_instances * n_models);
    for (std::size_t x = 0; x < spec.n_instances; ++x) {
        const double h = hardness.uniform(x);
        for (std::size_t i = 0; i < n_models; ++i) {
            const std::uint64_t cell = x * n_models + i;
            double u = h;
            if (dilution >= 1.0 || (dilution > 0.0 && selector.uniform(cell) < dilution)) {
                u = independent.uniform(cell);
            }
            cells[cell] = u < spec.accuracies[i] ? 1 : 0;
        }
    }
    return cells;
}

CorrectnessMatrix assemble(const SynthSpec& spec, std::vector<std::uint8_t> cells) {
    return CorrectnessMatrix(instance_ids_for(spec.n_instances), model_ids_for(spec),
                             std::move(cells));
}

std::optional<double> holdout_alpha_min(const SynthSpec& spec, double dilution) {
    return measure_alpha(assemble(spec, draw_cells(spec, dilution, kHoldout))).alpha_min();
}

} // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix(seed + kGolden * (stream + 1))) {}

std::uint64_t CounterRng::mix(std::uint64_t z) noexcept {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t CounterRng::bits(std::uint64_t counter) const noexcept {
    return mix(key_ + kGolden * (counter + 1));
}

double CounterRng::uniform(std::uint64_t counter) const noexcept {
    return static_cast<double>(bits(counter) >> 11) * 0x1.0p-53;
}

SynthResult generate(const SynthSpec& spec) {
    check_spec(spec);
    SynthResult result;

    double dilution = 0.0;
    switch (spec.mode) {
    case SynthMode::nested: dilution = 0.0; break;
    case SynthMode::independent: dilution = 1.0; break;
    case SynthMode::alpha_target: {
        const double target = *spec.alpha_target;
        // alpha_min falls from 1 (nested) towards the independent value
        // as the dilution grows.
        double lo = 0.0;
        double hi = 1.0;
        std::optional<double> best_alpha;
        double best_dilution = 0.0;
        auto consider = [&](double d) {
            const auto a = holdout_alpha_min(spec, d);
            if (a && (!best_alpha || std::abs(*a - target) < std::abs(*best_alpha - target))) {
                best_alpha = a;
                best_dilution = d;
            }
            return a;
        };
        consider(lo);
        consider(hi);
        for (int step = 0; step < kBisectionSteps; ++step) {
            const double mid = 0.5 * (lo + hi);
            const auto a = consider(mid);
            if (a && *a > target) {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        if (!best_alpha || std::abs(*best_alpha - target) > kAlphaTargetTolerance) {
            throw UnreachableTargetError(
                best_alpha ? fmt::format("synth: alpha_min target {} unreachable; closest "
                                         "achieved on the holdout draw is {} (dilution {})",
                                         target, *best_alpha, best_dilution)
                           : fmt::format("synth: alpha_min target {} unreachable; alpha is "
                                         "undefined on every holdout draw",
                                         target),
                best_alpha);
        }
        dilution = best_dilution;
        result.dilution = dilution;
        result.holdout_alpha_min = best_alpha;
        break;
    }
    }

    result.matrix = assemble(spec, draw_cells(spec, dilution, 0));
    result.achieved_accuracies = measured_accuracies(result.matrix);
    result.achieved_alpha = measure_alpha(result.matrix);
    return result;
}

std::string_view to_string(SynthMode mode) noexcept {
    switch (mode) {
    case SynthMode::nested: return "nested";
    case SynthMode::independent: return "independent";
    case SynthMode::alpha_target: return "alpha_target";
    }
    return "unknown";
}

std::optional<SynthMode> parse_synth_mode(std::string_view text) noexcept {
    if (text == "nested") return SynthMode::nested;
    if (text == "independent") return SynthMode::independent;
    if (text == "alpha_target" || text == "alpha-target") return SynthMode::alpha_target;
    return std::nullopt;
}

} // namespace adaptbound
