#pragma once

#include "adaptbound/core.hpp"

#include <map>
#include <string>
#include <vector>

namespace adaptbound {

struct PredictionRecord {
    std::string instance_id;
    std::string model_id;
    std::string label;
};

struct CorrectnessRecord {
    std::string instance_id;
    std::string model_id;
    bool correct = false;
};

// NFC-normalised, whitespace-trimmed form used for label comparison.
std::string canonical_label(std::string_view label);

// Correctness from raw predictions. Instances keep first-appearance order,
// columns follow the space. Raises IngestError on missing or duplicate
// pairs, unknown models and instances without ground truth.
CorrectnessMatrix build_correctness(const std::vector<PredictionRecord>& predictions,
                                    const std::map<std::string, std::string>& ground_truth,
                                    const StateSpace& space);

// Same contract, from already-scored records.
CorrectnessMatrix build_correctness(const std::vector<CorrectnessRecord>& records,
                                    const StateSpace& space);

ErrorCascade estimate_cascade(const CorrectnessMatrix& matrix);

// Entries for models that never err are undefined. Throws
// UndefinedAlphaError when no entry is defined and N >= 2.
AlphaProfile estimate_alpha(const CorrectnessMatrix& matrix);
// Non-throwing variant; may return an all-undefined profile.
AlphaProfile measure_alpha(const CorrectnessMatrix& matrix);

std::vector<double> measured_accuracies(const CorrectnessMatrix& matrix);

struct SimulationResult {
    OracleOutcome outcome;
    std::vector<AdaptationLabel> labels;
};

// Runs the adaptive oracle per instance: the cheapest correct model, or
// rank 1 when every model is wrong. The space needs accuracies for the
// gain metrics.
SimulationResult simulate_oracle(const CorrectnessMatrix& matrix, const StateSpace& space);

} // namespace adaptbound
