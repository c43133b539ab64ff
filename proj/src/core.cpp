#include "adaptbound/core.hpp"

#include "adaptbound/error.hpp"
#include "adaptbound/numeric.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>

#include <algorithm>
#include <cmath>
#include <set>

namespace adaptbound {

namespace {

void check_state(const ModelState& s) {
    if (s.model_id.empty()) {
        throw ValidationError("state with empty model_id");
    }
    if (!std::isfinite(s.resource) || s.resource <= 0.0) {
        throw ValidationError(
            fmt::format("state '{}': resource must be positive and finite, got {}", s.model_id,
                        s.resource));
    }
    if (s.accuracy && !(*s.accuracy >= 0.0 && *s.accuracy <= 1.0)) {
        throw ValidationError(fmt::format("state '{}': accuracy must lie in [0,1], got {}",
                                          s.model_id, *s.accuracy));
    }
}

void check_unique_ids(const std::vector<ModelState>& states) {
    std::set<std::string_view> seen;
    for (const auto& s : states) {
        if (!seen.insert(s.model_id).second) {
            throw ValidationError(fmt::format("duplicate model_id '{}'", s.model_id));
        }
    }
}

void check_num_classes(const std::optional<int>& c) {
    if (c && *c < 2) {
        throw ValidationError(fmt::format("num_classes must be >= 2, got {}", *c));
    }
}

// Ascending resource, then ascending accuracy (missing first), then id.
bool ascending(const ModelState& a, const ModelState& b) {
    if (a.resource != b.resource) return a.resource < b.resource;
    if (a.accuracy != b.accuracy) return a.accuracy < b.accuracy;
    return a.model_id < b.model_id;
}

} // namespace

double StateSpace::accuracy(std::size_t i) const {
    const auto& s = states_.at(i);
    if (!s.accuracy) {
        throw ValidationError(fmt::format("state '{}' has no accuracy", s.model_id));
    }
    return *s.accuracy;
}

bool StateSpace::has_accuracies() const noexcept {
    return !states_.empty() && std::all_of(states_.begin(), states_.end(),
                                           [](const ModelState& s) { return s.accuracy.has_value(); });
}

bool StateSpace::accuracies_ordered() const noexcept {
    if (!has_accuracies()) return false;
    for (std::size_t i = 1; i < states_.size(); ++i) {
        if (*states_[i].accuracy < *states_[i - 1].accuracy - kTolerance) return false;
    }
    return true;
}

std::vector<double> StateSpace::resources() const {
    std::vector<double> out;
    out.reserve(states_.size());
    for (const auto& s : states_) out.push_back(s.resource);
    return out;
}

std::vector<double> StateSpace::accuracies() const {
    std::vector<double> out;
    out.reserve(states_.size());
    for (std::size_t i = 0; i < states_.size(); ++i) out.push_back(accuracy(i));
    return out;
}

std::vector<std::string> StateSpace::model_ids() const {
    std::vector<std::string> out;
    out.reserve(states_.size());
    for (const auto& s : states_) out.push_back(s.model_id);
    return out;
}

StateSpace StateSpace::with_accuracies(std::span<const double> accuracies) const {
    if (accuracies.size() != states_.size()) {
        throw ValidationError(fmt::format("expected {} accuracies, got {}", states_.size(),
                                          accuracies.size()));
    }
    StateSpace out = *this;
    for (std::size_t i = 0; i < accuracies.size(); ++i) {
        out.states_[i].accuracy = accuracies[i];
        check_state(out.states_[i]);
    }
    return out;
}

StateSpace StateSpace::with_num_classes(std::optional<int> num_classes) const {
    check_num_classes(num_classes);
    StateSpace out = *this;
    out.num_classes_ = num_classes;
    return out;
}

StateSpace StateSpace::ordered_by_resource(std::vector<ModelState> raw,
                                           std::optional<int> num_classes) {
    if (raw.empty()) {
        throw ValidationError("state space is empty");
    }
    for (const auto& s : raw) check_state(s);
    check_unique_ids(raw);
    check_num_classes(num_classes);
    std::sort(raw.begin(), raw.end(), ascending);
    StateSpace out;
    out.states_ = std::move(raw);
    out.num_classes_ = num_classes;
    return out;
}

StateSpace validate_state_space(std::vector<ModelState> raw, OrderingPolicy policy,
                                std::optional<int> num_classes) {
    if (raw.empty()) {
        throw ValidationError("state space is empty");
    }
    for (const auto& s : raw) {
        check_state(s);
        if (!s.accuracy) {
            throw ValidationError(fmt::format("state '{}' has no accuracy", s.model_id));
        }
    }
    check_unique_ids(raw);
    check_num_classes(num_classes);

    StateSpace out;
    out.num_classes_ = num_classes;

    if (policy == OrderingPolicy::reject) {
        std::sort(raw.begin(), raw.end(), ascending);
        std::vector<std::string> offending;
        std::size_t best = 0;
        for (std::size_t i = 1; i < raw.size(); ++i) {
            if (*raw[i].accuracy < *raw[best].accuracy - kTolerance) {
                offending.push_back(fmt::format("('{}' R={} A={}) > ('{}' R={} A={})",
                                                raw[best].model_id, raw[best].resource,
                                                *raw[best].accuracy, raw[i].model_id,
                                                raw[i].resource, *raw[i].accuracy));
            } else if (*raw[i].accuracy > *raw[best].accuracy) {
                best = i;
            }
        }
        if (!offending.empty()) {
            throw ValidationError(fmt::format(
                "accuracies are not non-decreasing in resource; offending pairs (cheaper state "
                "more accurate): {}",
                fmt::join(offending, ", ")));
        }
        out.states_ = std::move(raw);
        return out;
    }

    // Best-first within equal resource so the tie keeps the higher accuracy.
    std::sort(raw.begin(), raw.end(), [](const ModelState& a, const ModelState& b) {
        if (a.resource != b.resource) return a.resource < b.resource;
        if (*a.accuracy != *b.accuracy) return *a.accuracy > *b.accuracy;
        return a.model_id < b.model_id;
    });
    double best_accuracy = -1.0;
    for (auto& s : raw) {
        if (*s.accuracy < best_accuracy - kTolerance) continue;
        best_accuracy = std::max(best_accuracy, *s.accuracy);
        out.states_.push_back(std::move(s));
    }
    std::sort(out.states_.begin(), out.states_.end(), ascending);
    return out;
}

ErrorCascade::ErrorCascade(std::vector<double> p) : p_(std::move(p)) {
    if (p_.empty()) {
        throw ValidationError("error cascade is empty");
    }
    for (std::size_t i = 0; i < p_.size(); ++i) {
        if (!std::isfinite(p_[i]) || p_[i] < -kTolerance || p_[i] > 1.0 + kTolerance) {
            throw ValidationError(fmt::format("P(e_{}) = {} is outside [0,1]", i + 1, p_[i]));
        }
        if (i > 0 && p_[i] > p_[i - 1] + kTolerance) {
            throw ValidationError(fmt::format(
                "error cascade is not non-increasing: P(e_{}) = {} > P(e_{}) = {}", i + 1, p_[i],
                i, p_[i - 1]));
        }
    }
}

AlphaProfile::AlphaProfile(std::vector<std::optional<double>> entries)
    : entries_(std::move(entries)) {
    for (std::size_t j = 0; j < entries_.size(); ++j) {
        const auto& a = entries_[j];
        if (a && !(*a >= 0.0 && *a <= 1.0)) {
            throw ValidationError(fmt::format("alpha_{} = {} is outside [0,1]", j + 2, *a));
        }
    }
}

AlphaProfile AlphaProfile::constant(std::size_t num_states, double alpha) {
    if (num_states == 0) {
        throw ValidationError("alpha profile needs at least one state");
    }
    return AlphaProfile(std::vector<std::optional<double>>(num_states - 1, alpha));
}

const std::optional<double>& AlphaProfile::at_rank(std::size_t rank) const {
    if (rank < 2 || rank > num_states()) {
        throw ValidationError(
            fmt::format("alpha rank {} outside [2, {}]", rank, num_states()));
    }
    return entries_[rank - 2];
}

bool AlphaProfile::all_defined() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(),
                       [](const auto& a) { return a.has_value(); });
}

bool AlphaProfile::any_defined() const noexcept {
    return std::any_of(entries_.begin(), entries_.end(),
                       [](const auto& a) { return a.has_value(); });
}

std::optional<double> AlphaProfile::alpha_min() const noexcept {
    std::optional<double> out;
    for (const auto& a : entries_) {
        if (a && (!out || *a < *out)) out = a;
    }
    return out;
}

std::optional<double> AlphaProfile::alpha_max() const noexcept {
    std::optional<double> out;
    for (const auto& a : entries_) {
        if (a && (!out || *a > *out)) out = a;
    }
    return out;
}

CorrectnessMatrix::CorrectnessMatrix(std::vector<std::string> instance_ids,
                                     std::vector<std::string> model_ids,
                                     std::vector<std::uint8_t> cells)
    : instance_ids_(std::move(instance_ids)),
      model_ids_(std::move(model_ids)),
      cells_(std::move(cells)) {
    if (cells_.size() != instance_ids_.size() * model_ids_.size()) {
        throw ValidationError(fmt::format("correctness matrix has {} cells, expected {} x {}",
                                          cells_.size(), instance_ids_.size(),
                                          model_ids_.size()));
    }
    for (auto& c : cells_) c = c != 0 ? 1 : 0;
}

Envelope::Envelope(std::vector<EnvelopePoint> points) : points_(std::move(points)) {
    if (points_.size() < 2) {
        throw ValidationError(
            fmt::format("envelope needs at least 2 points, got {}", points_.size()));
    }
    for (std::size_t i = 0; i < points_.size(); ++i) {
        const auto& p = points_[i];
        if (!std::isfinite(p.resource) || p.resource <= 0.0) {
            throw ValidationError(fmt::format("envelope point {}: resource must be positive", i + 1));
        }
        if (!(p.accuracy >= 0.0 && p.accuracy <= 1.0)) {
            throw ValidationError(fmt::format("envelope point {}: accuracy outside [0,1]", i + 1));
        }
        if (i > 0 && !(p.resource > points_[i - 1].resource)) {
            throw ValidationError(
                fmt::format("envelope point {}: resource not strictly increasing", i + 1));
        }
        if (i > 0 && p.accuracy < points_[i - 1].accuracy) {
            throw ValidationError(fmt::format("envelope point {}: accuracy decreases", i + 1));
        }
    }
}

Envelope Envelope::from_points(std::vector<EnvelopePoint> points) {
    std::sort(points.begin(), points.end(), [](const EnvelopePoint& a, const EnvelopePoint& b) {
        if (a.resource != b.resource) return a.resource < b.resource;
        return a.accuracy > b.accuracy;
    });
    std::vector<EnvelopePoint> staircase;
    for (const auto& p : points) {
        if (staircase.empty() || p.accuracy > staircase.back().accuracy) {
            if (!staircase.empty() && staircase.back().resource == p.resource) continue;
            staircase.push_back(p);
        }
    }
    return Envelope(std::move(staircase));
}

Envelope Envelope::from_space(const StateSpace& space) {
    std::vector<EnvelopePoint> points;
    points.reserve(space.size());
    for (std::size_t i = 0; i < space.size(); ++i) {
        points.push_back({space.resource(i), space.accuracy(i)});
    }
    return from_points(std::move(points));
}

double Envelope::accuracy_at(double resource) const {
    if (resource <= points_.front().resource) return points_.front().accuracy;
    if (resource >= points_.back().resource) return points_.back().accuracy;
    auto hi = std::upper_bound(points_.begin(), points_.end(), resource,
                               [](double r, const EnvelopePoint& p) { return r < p.resource; });
    auto lo = hi - 1;
    const double t = (resource - lo->resource) / (hi->resource - lo->resource);
    return lo->accuracy + t * (hi->accuracy - lo->accuracy);
}

} // namespace adaptbound
