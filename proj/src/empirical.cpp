#include "adaptbound/empirical.hpp"

#include "adaptbound/bounds.hpp"
#include "adaptbound/error.hpp"
#include "adaptbound/numeric.hpp"

#include <fmt/format.h>
#include <fmt/ranges.h>
#include <unicode/normalizer2.h>
#include <unicode/unistr.h>

#include <unordered_map>

namespace adaptbound {

namespace {

constexpr std::uint8_t kMissing = 2;
constexpr std::size_t kMaxListed = 10;

// Shared skeleton for both record kinds: resolve ids to (row, column),
// reject unknown models and duplicates, then require full coverage.
class MatrixBuilder {
public:
    explicit MatrixBuilder(const StateSpace& space) : model_ids_(space.model_ids()) {
        for (std::size_t j = 0; j < model_ids_.size(); ++j) column_of_[model_ids_[j]] = j;
    }

    std::size_t row_for(const std::string& instance_id) {
        if (instance_id.empty()) throw IngestError("record with empty instance_id");
        auto [it, inserted] = row_of_.try_emplace(instance_id, instance_ids_.size());
        if (inserted) {
            instance_ids_.push_back(instance_id);
            cells_.resize(cells_.size() + model_ids_.size(), kMissing);
        }
        return it->second;
    }

    void set(const std::string& instance_id, const std::string& model_id, bool correct) {
        auto col = column_of_.find(model_id);
        if (col == column_of_.end()) {
            throw IngestError(fmt::format("instance '{}': unknown model_id '{}'", instance_id,
                                          model_id));
        }
        const std::size_t row = row_for(instance_id);
        std::uint8_t& cell = cells_[row * model_ids_.size() + col->second];
        if (cell != kMissing) {
            throw IngestError(fmt::format("duplicate record for instance '{}', model '{}'",
                                          instance_id, model_id));
        }
        cell = correct ? 1 : 0;
    }

    const std::vector<std::string>& instance_ids() const { return instance_ids_; }

    CorrectnessMatrix finish() && {
        if (instance_ids_.empty()) throw IngestError("no records");
        std::vector<std::string> missing;
        std::size_t missing_count = 0;
        for (std::size_t i = 0; i < instance_ids_.size(); ++i) {
            for (std::size_t j = 0; j < model_ids_.size(); ++j) {
                if (cells_[i * model_ids_.size() + j] != kMissing) continue;
                if (missing.size() < kMaxListed) {
                    missing.push_back(fmt::format("({}, {})", instance_ids_[i], model_ids_[j]));
                }
                ++missing_count;
            }
        }
        if (missing_count > 0) {
            throw IngestError(fmt::format("{} missing (instance, model) record(s): {}{}",
                                          missing_count, fmt::join(missing, ", "),
                                          missing_count > missing.size() ? ", ..." : ""));
        }
        return CorrectnessMatrix(std::move(instance_ids_), std::move(model_ids_),
                                 std::move(cells_));
    }

private:
    std::vector<std::string> model_ids_;
    std::unordered_map<std::string, std::size_t> column_of_;
    std::vector<std::string> instance_ids_;
    std::unordered_map<std::string, std::size_t> row_of_;
    std::vector<std::uint8_t> cells_;
};

// Instances with every model wrong through rank i + 1, and per-model errors.
struct ErrorCounts {
    std::vector<std::size_t> all_wrong_through;
    std::vector<std::size_t> wrong;
};

ErrorCounts count_errors(const CorrectnessMatrix& matrix) {
    const std::size_t n_models = matrix.num_models();
    ErrorCounts c{std::vector<std::size_t>(n_models, 0), std::vector<std::size_t>(n_models, 0)};
    for (std::size_t x = 0; x < matrix.num_instances(); ++x) {
        const auto row = matrix.row(x);
        bool prefix_wrong = true;
        for (std::size_t i = 0; i < n_models; ++i) {
            const bool wrong = row[i] == 0;
            prefix_wrong = prefix_wrong && wrong;
            if (wrong) ++c.wrong[i];
            if (prefix_wrong) ++c.all_wrong_through[i];
        }
    }
    return c;
}

void require_instances(const CorrectnessMatrix& matrix) {
    if (matrix.num_instances() == 0 || matrix.num_models() == 0) {
        throw ValidationError("correctness matrix is empty");
    }
}

} // namespace

std::string canonical_label(std::string_view label) {
    UErrorCode status = U_ZERO_ERROR;
    const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
    if (U_FAILURE(status)) {
        throw Error(fmt::format("ICU NFC normaliser unavailable: {}", u_errorName(status)));
    }
    icu::UnicodeString text = icu::UnicodeString::fromUTF8(
        icu::StringPiece(label.data(), static_cast<int32_t>(label.size())));
    icu::UnicodeString normalised = nfc->normalize(text, status);
    if (U_FAILURE(status)) {
        throw IngestError(fmt::format("label '{}' could not be normalised: {}", label,
                                      u_errorName(status)));
    }
    normalised.trim();
    std::string out;
    normalised.toUTF8String(out);
    return out;
}

CorrectnessMatrix build_correctness(const std::vector<PredictionRecord>& predictions,
                                    const std::map<std::string, std::string>& ground_truth,
                                    const StateSpace& space) {
    if (predictions.empty()) throw IngestError("no prediction records");
    std::map<std::string, std::string, std::less<>> truth;
    for (const auto& [id, label] : ground_truth) truth.emplace(id, canonical_label(label));

    MatrixBuilder builder(space);
    for (const auto& p : predictions) {
        if (p.model_id.empty()) throw IngestError("prediction with empty model_id");
        auto t = truth.find(p.instance_id);
        if (t == truth.end()) {
            throw IngestError(fmt::format("instance '{}' has no ground truth", p.instance_id));
        }
        builder.set(p.instance_id, p.model_id, canonical_label(p.label) == t->second);
    }
    return std::move(builder).finish();
}

CorrectnessMatrix build_correctness(const std::vector<CorrectnessRecord>& records,
                                    const StateSpace& space) {
    if (records.empty()) throw IngestError("no correctness records");
    MatrixBuilder builder(space);
    for (const auto& r : records) {
        if (r.model_id.empty()) throw IngestError("record with empty model_id");
        builder.set(r.instance_id, r.model_id, r.correct);
    }
    return std::move(builder).finish();
}

ErrorCascade estimate_cascade(const CorrectnessMatrix& matrix) {
    require_instances(matrix);
    const ErrorCounts c = count_errors(matrix);
    const double n = static_cast<double>(matrix.num_instances());
    std::vector<double> p(matrix.num_models());
    for (std::size_t i = 0; i < p.size(); ++i) {
        p[i] = static_cast<double>(c.all_wrong_through[i]) / n;
    }
    return ErrorCascade(std::move(p));
}

AlphaProfile measure_alpha(const CorrectnessMatrix& matrix) {
    require_instances(matrix);
    const ErrorCounts c = count_errors(matrix);
    std::vector<std::optional<double>> entries;
    for (std::size_t i = 1; i < matrix.num_models(); ++i) {
        if (c.wrong[i] == 0) {
            entries.emplace_back();
        } else {
            entries.emplace_back(static_cast<double>(c.all_wrong_through[i]) /
                                 static_cast<double>(c.wrong[i]));
        }
    }
    return AlphaProfile(std::move(entries));
}

AlphaProfile estimate_alpha(const CorrectnessMatrix& matrix) {
    AlphaProfile profile = measure_alpha(matrix);
    if (matrix.num_models() >= 2 && !profile.any_defined()) {
        throw UndefinedAlphaError(
            "alpha is undefined for every rank: models 2..N make no errors on this matrix");
    }
    return profile;
}

std::vector<double> measured_accuracies(const CorrectnessMatrix& matrix) {
    require_instances(matrix);
    const ErrorCounts c = count_errors(matrix);
    const double n = static_cast<double>(matrix.num_instances());
    std::vector<double> acc(matrix.num_models());
    for (std::size_t i = 0; i < acc.size(); ++i) {
        acc[i] = static_cast<double>(matrix.num_instances() - c.wrong[i]) / n;
    }
    return acc;
}

SimulationResult simulate_oracle(const CorrectnessMatrix& matrix, const StateSpace& space) {
    require_instances(matrix);
    if (matrix.model_ids() != space.model_ids()) {
        throw ValidationError(fmt::format(
            "correctness columns [{}] do not match the state space order [{}]",
            fmt::join(matrix.model_ids(), ", "), fmt::join(space.model_ids(), ", ")));
    }
    const std::size_t n_models = matrix.num_models();
    const std::size_t n = matrix.num_instances();

    SimulationResult result;
    result.labels.reserve(n);
    std::vector<std::size_t> picks(n_models, 0);
    std::size_t fallback = 0;
    CompensatedSum total_resource;

    for (std::size_t x = 0; x < n; ++x) {
        const auto row = matrix.row(x);
        std::size_t rank = 0;
        while (rank < n_models && row[rank] == 0) ++rank;
        const bool correct = rank < n_models;
        if (correct) {
            ++picks[rank];
        } else {
            ++fallback;
            rank = 0;
        }
        total_resource += space.resource(rank);
        result.labels.push_back(
            {matrix.instance_ids()[x], rank + 1, space[rank].model_id, correct});
    }

    const double dn = static_cast<double>(n);
    OracleOutcome& out = result.outcome;
    out.r_oracle = total_resource.value() / dn;
    out.a_oracle = 1.0 - static_cast<double>(fallback) / dn;
    out.selection_freq.resize(n_models + 1);
    for (std::size_t i = 0; i < n_models; ++i) {
        out.selection_freq[i] = static_cast<double>(picks[i]) / dn;
    }
    out.selection_freq[n_models] = static_cast<double>(fallback) / dn;

    const GainMetrics g = gain_metrics(space, out);
    out.delta_r = g.delta_r;
    out.delta_a = g.delta_a;
    out.r_ratio = g.r_ratio;
    return result;
}

} // namespace adaptbound
