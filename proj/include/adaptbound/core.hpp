#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace adaptbound {

// One backbone classifier: its resource cost (caller-defined units, e.g.
// GFLOPs) and, once known, its top-1 accuracy.
struct ModelState {
    std::string model_id;
    double resource = 0.0;
    std::optional<double> accuracy;

    friend bool operator==(const ModelState&, const ModelState&) = default;
};

enum class OrderingPolicy {
    reject,          // any accuracy inversion is a ValidationError
    prune_dominated, // drop states beaten by a cheaper-or-equal state
};

// Ordered adaptation state space. States are sorted by resource; ranks
// are 1-based in every public field named *rank*, vectors are 0-based.
class StateSpace {
public:
    StateSpace() = default;

    std::size_t size() const noexcept { return states_.size(); }
    const ModelState& operator[](std::size_t i) const { return states_[i]; }
    std::span<const ModelState> states() const noexcept { return states_; }
    const std::optional<int>& num_classes() const noexcept { return num_classes_; }

    double resource(std::size_t i) const { return states_[i].resource; }
    // Throws ValidationError when the accuracy of state i is missing.
    double accuracy(std::size_t i) const;

    bool has_accuracies() const noexcept;
    // A_1 <= ... <= A_N within kTolerance.
    bool accuracies_ordered() const noexcept;

    std::vector<double> resources() const;
    std::vector<double> accuracies() const;
    std::vector<std::string> model_ids() const;

    double smallest_resource() const { return states_.front().resource; }
    double largest_resource() const { return states_.back().resource; }
    double largest_accuracy() const { return accuracy(size() - 1); }

    // Copy with accuracies replaced; the resource order is unchanged.
    StateSpace with_accuracies(std::span<const double> accuracies) const;
    StateSpace with_num_classes(std::optional<int> num_classes) const;

    // Sorts by resource only; accuracies may be absent and unordered.
    // Used by workflows that measure accuracies from a correctness matrix.
    static StateSpace ordered_by_resource(std::vector<ModelState> raw,
                                          std::optional<int> num_classes = std::nullopt);

    friend StateSpace validate_state_space(std::vector<ModelState> raw, OrderingPolicy policy,
                                           std::optional<int> num_classes);
    friend bool operator==(const StateSpace&, const StateSpace&) = default;

private:
    std::vector<ModelState> states_;
    std::optional<int> num_classes_;
};

// Sorts by resource and enforces both orderings. Under reject, accuracy
// inversions raise a ValidationError listing each offending pair; under
// prune_dominated, dominated states are removed.
StateSpace validate_state_space(std::vector<ModelState> raw,
                                OrderingPolicy policy = OrderingPolicy::reject,
                                std::optional<int> num_classes = std::nullopt);

// p[i] = probability that the i+1 cheapest models are all wrong.
class ErrorCascade {
public:
    ErrorCascade() = default;
    // Throws ValidationError unless 1 >= p[0] >= p[1] >= ... >= 0.
    explicit ErrorCascade(std::vector<double> p);

    std::size_t size() const noexcept { return p_.size(); }
    double operator[](std::size_t i) const { return p_[i]; }
    std::span<const double> values() const noexcept { return p_; }

private:
    std::vector<double> p_;
};

// Cross-model error dependency coefficients alpha_i for ranks 2..N.
// Entries are undefined where model i never errs.
class AlphaProfile {
public:
    AlphaProfile() = default;
    // entries[j] holds alpha for rank j + 2.
    explicit AlphaProfile(std::vector<std::optional<double>> entries);
    // Constant profile over a space of num_states states.
    static AlphaProfile constant(std::size_t num_states, double alpha);

    // Number of states N the profile describes (entries + 1).
    std::size_t num_states() const noexcept { return entries_.size() + 1; }
    const std::vector<std::optional<double>>& entries() const noexcept { return entries_; }
    // rank in [2, N]
    const std::optional<double>& at_rank(std::size_t rank) const;

    bool all_defined() const noexcept;
    bool any_defined() const noexcept;
    std::optional<double> alpha_min() const noexcept;
    std::optional<double> alpha_max() const noexcept;

private:
    std::vector<std::optional<double>> entries_;
};

struct OracleOutcome {
    double r_oracle = 0.0;
    double a_oracle = 0.0;
    double delta_r = 0.0; // R_N - r_oracle
    double delta_a = 0.0; // a_oracle - A_N
    double r_ratio = 0.0; // R_N / r_oracle
    // P(x_1) .. P(x_N), P(x_f); empty when not derived.
    std::vector<double> selection_freq;
};

struct AdaptationLabel {
    std::string instance_id;
    std::size_t selected_rank = 1;
    std::string selected_model_id;
    bool correct = false;

    friend bool operator==(const AdaptationLabel&, const AdaptationLabel&) = default;
};

// Per-instance x per-model correctness; row-major n x N.
class CorrectnessMatrix {
public:
    CorrectnessMatrix() = default;
    // cells.size() must equal instance_ids.size() * model_ids.size().
    CorrectnessMatrix(std::vector<std::string> instance_ids, std::vector<std::string> model_ids,
                      std::vector<std::uint8_t> cells);

    std::size_t num_instances() const noexcept { return instance_ids_.size(); }
    std::size_t num_models() const noexcept { return model_ids_.size(); }
    const std::vector<std::string>& instance_ids() const noexcept { return instance_ids_; }
    const std::vector<std::string>& model_ids() const noexcept { return model_ids_; }

    bool correct(std::size_t instance, std::size_t model) const {
        return cells_[instance * model_ids_.size() + model] != 0;
    }
    std::span<const std::uint8_t> row(std::size_t instance) const {
        return std::span<const std::uint8_t>(cells_).subspan(instance * model_ids_.size(),
                                                             model_ids_.size());
    }

    friend bool operator==(const CorrectnessMatrix&, const CorrectnessMatrix&) = default;

private:
    std::vector<std::string> instance_ids_;
    std::vector<std::string> model_ids_;
    std::vector<std::uint8_t> cells_;
};

struct EnvelopePoint {
    double resource = 0.0;
    double accuracy = 0.0;
};

// Piecewise-linear accuracy-vs-resource curve.
class Envelope {
public:
    Envelope() = default;
    // Requires >= 2 points, strictly increasing resource and
    // non-decreasing accuracy in [0,1].
    explicit Envelope(std::vector<EnvelopePoint> points);

    // Pareto staircase of scattered points (ties in resource keep the
    // best accuracy; points not improving accuracy are dropped).
    static Envelope from_points(std::vector<EnvelopePoint> points);
    static Envelope from_space(const StateSpace& space);

    std::span<const EnvelopePoint> points() const noexcept { return points_; }
    std::size_t size() const noexcept { return points_.size(); }

    // Linear interpolation; clamps outside [R_1, R_h].
    double accuracy_at(double resource) const;

private:
    std::vector<EnvelopePoint> points_;
};

} // namespace adaptbound
