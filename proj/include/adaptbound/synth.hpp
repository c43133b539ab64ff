#pragma once

#include "adaptbound/core.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace adaptbound {

// Stateless counter-based generator: the value for (seed, stream, counter)
// is the SplitMix64 output at position counter + 1 of a sequence whose
// starting state is splitmix64_mix(seed + golden * (stream + 1)).
// Uniforms take the top 53 bits. Identical on every platform.
class CounterRng {
public:
    static constexpr std::string_view kAlgorithm =
        "splitmix64-counter: key=mix(seed+0x9E3779B97F4A7C15*(stream+1)); "
        "u64=mix(key+0x9E3779B97F4A7C15*(counter+1)); uniform=(u64>>11)*2^-53";

    CounterRng(std::uint64_t seed, std::uint64_t stream);

    std::uint64_t bits(std::uint64_t counter) const noexcept;
    // Uniform in [0, 1).
    double uniform(std::uint64_t counter) const noexcept;

    static std::uint64_t mix(std::uint64_t z) noexcept;

private:
    std::uint64_t key_;
};

enum class SynthMode {
    nested,       // shared per-instance hardness: error sets are nested
    independent,  // every cell an independent Bernoulli(A_i)
    alpha_target, // nested core diluted towards independence
};

struct SynthSpec {
    std::vector<double> accuracies;     // non-decreasing targets in [0,1]
    std::vector<std::string> model_ids; // empty: m1..mN
    std::size_t n_instances = 0;
    SynthMode mode = SynthMode::nested;
    std::optional<double> alpha_target; // required for alpha_target mode
    std::uint64_t seed = 0;
};

struct SynthResult {
    CorrectnessMatrix matrix;
    std::vector<double> achieved_accuracies;
    AlphaProfile achieved_alpha;
    // Fraction of cells drawn independently (alpha_target mode only).
    std::optional<double> dilution;
    // alpha_min measured on the holdout draw used for tuning.
    std::optional<double> holdout_alpha_min;
};

// Accepted distance between the holdout alpha_min and the target.
inline constexpr double kAlphaTargetTolerance = 0.05;

// Deterministic in the spec. Throws ValidationError for an invalid spec
// and UnreachableTargetError when the dilution search cannot bring the
// holdout alpha_min within kAlphaTargetTolerance of the target.
SynthResult generate(const SynthSpec& spec);

std::string_view to_string(SynthMode mode) noexcept;
std::optional<SynthMode> parse_synth_mode(std::string_view text) noexcept;

} // namespace adaptbound
