#include "adaptbound/cli.hpp"

#include "adaptbound/bounds.hpp"
#include "adaptbound/design.hpp"
#include "adaptbound/empirical.hpp"
#include "adaptbound/error.hpp"
#include "adaptbound/io.hpp"
#include "adaptbound/report.hpp"
#include "adaptbound/synth.hpp"

#include <CLI11.hpp>
#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>

#ifndef ADAPTBOUND_VERSION
#define ADAPTBOUND_VERSION "0.0.0"
#endif

namespace adaptbound::cli {

namespace {

namespace fs = std::filesystem;
using report::Json;

constexpr double kAccuracyMismatch = 1e-6;

struct Options {
    std::string states;
    std::string correctness;
    std::string predictions;
    std::string truth;
    std::string envelope;
    std::string alpha_profile;
    std::string labels_out;
    std::string out;
    std::string plot_dir;
    std::optional<double> alpha;
    std::optional<int> classes;
    std::optional<std::size_t> k;
    bool greedy = false;
    bool prune_dominated = false;
    bool keep_supplied = false;
    // synth
    std::string accuracies;
    std::size_t instances = 0;
    std::string mode;
    std::uint64_t seed = 0;
};

// Per-invocation state: hashed inputs and accumulated warnings.
class Context {
public:
    Context(std::string command, std::ostream& err) : command_(std::move(command)), err_(err) {}

    std::string load(std::string_view role, const std::string& path) {
        std::string content = io::read_file(path);
        inputs_.push_back(
            {{"role", role}, {"path", path}, {"sha256", io::sha256_hex(content)}});
        return content;
    }

    void warn(std::string message) {
        err_ << "warning: " << message << '\n';
        warnings_.push_back(std::move(message));
    }

    Json document(const Json& state_space, std::optional<std::string> unit, Json results) const {
        Json doc;
        doc["tool"] = "adaptbound";
        doc["tool_version"] = version();
        doc["command"] = command_;
        doc["inputs"] = inputs_;
        doc["resource_unit"] = unit ? Json(*unit) : Json(nullptr);
        doc["state_space"] = state_space;
        doc["results"] = std::move(results);
        doc["warnings"] = warnings_;
        return doc;
    }

private:
    std::string command_;
    std::ostream& err_;
    Json inputs_ = Json::array();
    std::vector<std::string> warnings_;
};

void emit(const Json& doc, const Options& opt, std::ostream& out) {
    const std::string text = report::render(doc);
    if (opt.out.empty()) {
        out << text;
    } else {
        io::write_file_atomic(opt.out, text);
    }
}

template <typename Reader>
auto parse_input(Context& ctx, std::string_view role, const std::string& path, Reader reader) {
    std::istringstream in(ctx.load(role, path));
    try {
        return reader(in);
    } catch (const ParseError& e) {
        throw ParseError(fmt::format("{}: {}", path, e.what()), e.line());
    }
}

struct LoadedStates {
    StateSpace space;
    std::optional<std::string> unit;
};

LoadedStates load_validated_states(Context& ctx, const Options& opt) {
    auto file = parse_input(ctx, "states", opt.states,
                            [](std::istream& in) { return io::read_states(in, false); });
    const std::size_t before = file.states.size();
    std::vector<std::string> ids;
    for (const auto& s : file.states) ids.push_back(s.model_id);
    StateSpace space = validate_state_space(
        std::move(file.states),
        opt.prune_dominated ? OrderingPolicy::prune_dominated : OrderingPolicy::reject,
        opt.classes);
    if (space.size() != before) {
        const auto kept = space.model_ids();
        for (const auto& id : ids) {
            if (std::find(kept.begin(), kept.end(), id) == kept.end()) {
                ctx.warn(fmt::format("pruned dominated state '{}'", id));
            }
        }
    }
    return {std::move(space), file.unit};
}

struct EmpiricalData {
    StateSpace space; // accuracies as used downstream
    std::optional<std::string> unit;
    CorrectnessMatrix matrix;
    std::vector<double> measured;
    std::string accuracy_source;
};

EmpiricalData load_empirical(Context& ctx, const Options& opt) {
    auto file = parse_input(ctx, "states", opt.states,
                            [](std::istream& in) { return io::read_states(in, true); });
    const StateSpace supplied = StateSpace::ordered_by_resource(std::move(file.states), opt.classes);

    CorrectnessMatrix matrix;
    if (!opt.correctness.empty()) {
        auto records = parse_input(ctx, "correctness", opt.correctness,
                                   [](std::istream& in) { return io::read_correctness(in); });
        matrix = build_correctness(records, supplied);
    } else {
        auto predictions = parse_input(ctx, "predictions", opt.predictions,
                                       [](std::istream& in) { return io::read_predictions(in); });
        auto truth = parse_input(ctx, "truth", opt.truth,
                                 [](std::istream& in) { return io::read_truth(in); });
        matrix = build_correctness(predictions, truth, supplied);
    }

    EmpiricalData data{supplied, file.unit, std::move(matrix), {}, "measured"};
    data.measured = measured_accuracies(data.matrix);
    for (std::size_t i = 0; i < supplied.size(); ++i) {
        const auto& given = supplied[i].accuracy;
        if (given && std::abs(*given - data.measured[i]) > kAccuracyMismatch) {
            ctx.warn(fmt::format("model '{}': supplied accuracy {} differs from measured {}",
                                 supplied[i].model_id, io::format_number(*given),
                                 io::format_number(data.measured[i])));
        }
    }
    if (opt.keep_supplied && supplied.has_accuracies()) {
        data.accuracy_source = "supplied";
    } else {
        if (opt.keep_supplied) {
            ctx.warn("some supplied accuracies are blank; using measured accuracies");
        }
        data.space = supplied.with_accuracies(data.measured);
    }
    if (!data.space.accuracies_ordered()) {
        ctx.warn("accuracies are not non-decreasing in resource; closed-form bounds skipped");
    }
    return data;
}

Json closed_form_bounds(Context& ctx, const StateSpace& space, const AlphaProfile& profile) {
    Json out = Json::object();
    if (!space.accuracies_ordered()) return out;
    out["conservative"] = report::to_json(oracle_conservative(space), space);
    if (const auto amin = profile.alpha_min()) {
        out["constant_alpha_min"] = {{"alpha", report::number(*amin)},
                                     {"outcome", report::to_json(
                                                     oracle_constant_alpha(space, *amin), space)}};
    }
    if (space.size() >= 2 && profile.all_defined()) {
        try {
            out["alpha_profile"] = report::to_json(oracle_from_alpha_profile(space, profile), space);
        } catch (const InconsistencyError& e) {
            ctx.warn(e.what());
        }
    }
    return out;
}

AlphaProfile profile_with_warning(Context& ctx, const CorrectnessMatrix& matrix) {
    try {
        return estimate_alpha(matrix);
    } catch (const UndefinedAlphaError& e) {
        ctx.warn(e.what());
        return measure_alpha(matrix);
    }
}

int cmd_bounds(const Options& opt, std::ostream& out, std::ostream& err) {
    Context ctx("bounds", err);
    const auto [space, unit] = load_validated_states(ctx, opt);

    Json results;
    results["conservative"] = report::to_json(oracle_conservative(space), space);
    if (opt.alpha) {
        results["constant_alpha"] = {
            {"alpha", report::number(*opt.alpha)},
            {"outcome", report::to_json(oracle_constant_alpha(space, *opt.alpha), space)}};
    }
    if (!opt.alpha_profile.empty()) {
        const std::size_t n = space.size();
        const AlphaProfile profile = parse_input(
            ctx, "alpha_profile", opt.alpha_profile,
            [n](std::istream& in) { return io::read_alpha_profile(in, n); });
        results["alpha_profile"] = {
            {"profile", report::to_json(profile)},
            {"outcome", report::to_json(oracle_from_alpha_profile(space, profile), space)}};
    }
    if (opt.classes) {
        if (space.size() >= 2) {
            results["r1_criterion"] = report::to_json(r1_admissible(space));
        } else {
            ctx.warn("R_1 criterion needs at least 2 states; skipped");
        }
    }
    emit(ctx.document(report::to_json(space), unit, std::move(results)), opt, out);
    return kExitOk;
}

int cmd_empirical(const Options& opt, std::ostream& out, std::ostream& err) {
    Context ctx("empirical", err);
    const EmpiricalData data = load_empirical(ctx, opt);
    const ErrorCascade cascade = estimate_cascade(data.matrix);
    const AlphaProfile profile = profile_with_warning(ctx, data.matrix);
    const SimulationResult sim = simulate_oracle(data.matrix, data.space);
    const OracleOutcome formula = oracle_from_cascade(data.space, cascade);

    Json measured = Json::array();
    for (std::size_t i = 0; i < data.measured.size(); ++i) {
        measured.push_back({{"rank", i + 1},
                            {"model_id", data.space[i].model_id},
                            {"accuracy", report::number(data.measured[i])}});
    }

    Json results;
    results["n_instances"] = data.matrix.num_instances();
    results["accuracy_source"] = data.accuracy_source;
    results["measured_accuracies"] = std::move(measured);
    results["error_cascade"] = report::to_json(cascade);
    results["alpha_profile"] = report::to_json(profile);
    results["oracle"] = report::to_json(sim.outcome, data.space);
    results["oracle_from_cascade"] = report::to_json(formula, data.space);
    results["bounds"] = closed_form_bounds(ctx, data.space, profile);

    if (!opt.labels_out.empty()) {
        std::ostringstream labels;
        io::write_labels(labels, sim.labels);
        io::write_file_atomic(opt.labels_out, labels.str());
        results["labels"] = {{"path", opt.labels_out},
                             {"count", sim.labels.size()},
                             {"sha256", io::sha256_hex(labels.str())}};
    }
    emit(ctx.document(report::to_json(data.space), data.unit, std::move(results)), opt, out);
    return kExitOk;
}

Json plan_series(const std::vector<SubsetPlan>& plans, const StateSpace& space) {
    Json out = Json::array();
    for (const auto& p : plans) out.push_back(report::to_json(p, space));
    return out;
}

int cmd_design_subset(const Options& opt, std::ostream& out, std::ostream& err) {
    Context ctx("design subset", err);
    const auto [space, unit] = load_validated_states(ctx, opt);
    const std::size_t k = opt.k.value_or(space.size());
    Json results;
    results["k_max"] = k;
    results["optimal"] = plan_series(optimal_subsets(space, k), space);
    if (opt.greedy) results["greedy"] = plan_series(greedy_growth(space, k), space);
    emit(ctx.document(report::to_json(space), unit, std::move(results)), opt, out);
    return kExitOk;
}

int cmd_design_r1(const Options& opt, std::ostream& out, std::ostream& err) {
    Context ctx("design r1", err);
    const auto [space, unit] = load_validated_states(ctx, opt);
    Json results;
    results["num_classes"] = *opt.classes;
    results["r1_criterion"] = report::to_json(r1_admissible(space));
    emit(ctx.document(report::to_json(space), unit, std::move(results)), opt, out);
    return kExitOk;
}

int cmd_design_continuous(const Options& opt, std::ostream& out, std::ostream& err) {
    Context ctx("design continuous", err);
    Json state_json = Json::array();
    std::optional<std::string> unit;
    Json results;
    Envelope envelope;
    if (!opt.envelope.empty()) {
        auto points = parse_input(ctx, "envelope", opt.envelope,
                                  [](std::istream& in) { return io::read_envelope(in); });
        envelope = Envelope::from_points(std::move(points));
    } else {
        auto loaded = load_validated_states(ctx, opt);
        envelope = Envelope::from_space(loaded.space);
        unit = loaded.unit;
        state_json = report::to_json(loaded.space);
        results["discrete_conservative"] =
            report::to_json(oracle_conservative(loaded.space), loaded.space);
    }
    results["envelope"] = report::to_json(envelope);
    results["continuous"] = report::to_json(continuous_bound(envelope));
    emit(ctx.document(state_json, unit, std::move(results)), opt, out);
    return kExitOk;
}

std::vector<double> parse_accuracy_list(const std::string& text) {
    std::vector<double> out;
    std::size_t line = 0;
    for (const auto& field : io::split_csv_line(text, line)) {
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(field, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used == 0 || used != field.size()) {
            throw ValidationError(fmt::format("--accuracies: '{}' is not a number", field));
        }
        out.push_back(v);
    }
    return out;
}

int cmd_synth(const Options& opt, std::ostream& /*out*/, std::ostream& err) {
    Context ctx("synth", err);
    SynthSpec spec;
    spec.n_instances = opt.instances;
    spec.seed = opt.seed;
    spec.alpha_target = opt.alpha;
    if (!opt.states.empty()) {
        const auto [space, unit] = load_validated_states(ctx, opt);
        spec.accuracies = space.accuracies();
        spec.model_ids = space.model_ids();
    } else {
        spec.accuracies = parse_accuracy_list(opt.accuracies);
    }
    if (opt.mode.empty()) {
        spec.mode = opt.alpha ? SynthMode::alpha_target : SynthMode::nested;
    } else {
        spec.mode = *parse_synth_mode(opt.mode);
    }

    SynthResult result;
    try {
        result = generate(spec);
    } catch (const UnreachableTargetError& e) {
        err << "error: " << e.what() << '\n';
        if (e.closest()) {
            err << "closest achieved alpha_min: " << io::format_number(*e.closest()) << '\n';
        }
        return kExitError;
    }

    std::ostringstream csv;
    io::write_correctness(csv, result.matrix,
                          fmt::format("adaptbound synth; rng {}; seed {}",
                                      CounterRng::kAlgorithm, spec.seed));
    io::write_file_atomic(opt.out, csv.str());

    Json accuracies = Json::array();
    for (double a : spec.accuracies) accuracies.push_back(report::number(a));
    Json achieved_acc = Json::array();
    for (double a : result.achieved_accuracies) achieved_acc.push_back(report::number(a));
    Json meta;
    meta["tool"] = "adaptbound";
    meta["tool_version"] = version();
    meta["rng"] = CounterRng::kAlgorithm;
    meta["spec"] = {{"mode", to_string(spec.mode)},
                    {"model_ids", result.matrix.model_ids()},
                    {"accuracies", std::move(accuracies)},
                    {"n_instances", spec.n_instances},
                    {"alpha_target", report::optional_number(spec.alpha_target)},
                    {"seed", spec.seed}};
    meta["achieved"] = {{"accuracies", std::move(achieved_acc)},
                        {"alpha_profile", report::to_json(result.achieved_alpha)},
                        {"dilution", report::optional_number(result.dilution)},
                        {"holdout_alpha_min", report::optional_number(result.holdout_alpha_min)}};
    meta["output"] = {{"path", opt.out}, {"sha256", io::sha256_hex(csv.str())}};
    const std::string meta_text = report::render(meta);
    io::write_file_atomic(opt.out + ".meta.json", meta_text);
    if (spec.mode == SynthMode::alpha_target && result.achieved_alpha.alpha_min()) {
        const double achieved = *result.achieved_alpha.alpha_min();
        if (std::abs(achieved - *spec.alpha_target) > kAlphaTargetTolerance) {
            ctx.warn(fmt::format("achieved alpha_min {} is more than {} from the target",
                                 io::format_number(achieved), kAlphaTargetTolerance));
        }
    }
    return kExitOk;
}

void write_series(const fs::path& dir, const std::string& name, const std::string& content,
                  Json& files) {
    io::write_file_atomic(dir / name, content);
    files.push_back({{"name", name}, {"sha256", io::sha256_hex(content)}});
}

int cmd_report(const Options& opt, std::ostream& out, std::ostream& err) {
    Context ctx("report", err);
    StateSpace space;
    std::optional<std::string> unit;
    std::optional<AlphaProfile> profile;
    if (!opt.correctness.empty() || !opt.predictions.empty()) {
        EmpiricalData data = load_empirical(ctx, opt);
        profile = profile_with_warning(ctx, data.matrix);
        space = std::move(data.space);
        unit = data.unit;
    } else {
        auto loaded = load_validated_states(ctx, opt);
        space = std::move(loaded.space);
        unit = loaded.unit;
    }

    const fs::path dir = opt.plot_dir;
    fs::create_directories(dir);
    Json files = Json::array();
    Json results;

    std::string states_csv = "rank,model_id,resource,accuracy\n";
    for (std::size_t i = 0; i < space.size(); ++i) {
        states_csv += fmt::format("{},{},{},{}\n", i + 1, io::csv_field(space[i].model_id),
                                  io::format_number(space[i].resource),
                                  io::format_number(space.accuracy(i)));
    }
    write_series(dir, "states.csv", states_csv, files);

    if (space.accuracies_ordered()) {
        std::vector<double> alphas{0.0, 1.0};
        if (opt.alpha) alphas.push_back(*opt.alpha);
        if (profile && profile->alpha_min()) alphas.push_back(*profile->alpha_min());
        std::sort(alphas.begin(), alphas.end());
        alphas.erase(std::unique(alphas.begin(), alphas.end()), alphas.end());
        std::string line = "alpha,r_oracle,a_oracle\n";
        Json points = Json::array();
        for (double a : alphas) {
            const OracleOutcome o = oracle_constant_alpha(space, a);
            line += fmt::format("{},{},{}\n", io::format_number(a), io::format_number(o.r_oracle),
                                io::format_number(o.a_oracle));
            points.push_back({{"alpha", report::number(a)},
                              {"r_oracle", report::number(o.r_oracle)},
                              {"a_oracle", report::number(o.a_oracle)}});
        }
        write_series(dir, "bound_line.csv", line, files);
        results["bound_line"] = std::move(points);

        const std::size_t k = std::min(opt.k.value_or(space.size()), space.size());
        const auto optimal = optimal_subsets(space, k);
        const auto greedy = greedy_growth(space, k);
        std::string ratio = "k,optimal_r_oracle,optimal_r_ratio,greedy_r_oracle,greedy_r_ratio\n";
        for (std::size_t i = 0; i < k; ++i) {
            ratio += fmt::format("{},{},{},{},{}\n", i + 1, io::format_number(optimal[i].r_oracle),
                                 io::format_number(optimal[i].r_ratio),
                                 io::format_number(greedy[i].r_oracle),
                                 io::format_number(greedy[i].r_ratio));
        }
        write_series(dir, "ratio_vs_k.csv", ratio, files);
    } else {
        ctx.warn("bound_line.csv and ratio_vs_k.csv need ordered accuracies; skipped");
    }

    if (profile) {
        std::string alpha_csv = "rank,alpha\n";
        for (std::size_t rank = 2; rank <= profile->num_states(); ++rank) {
            const auto& a = profile->at_rank(rank);
            alpha_csv += fmt::format("{},{}\n", rank, a ? io::format_number(*a) : "");
        }
        write_series(dir, "alpha_profile.csv", alpha_csv, files);
        results["alpha_profile"] = report::to_json(*profile);
    }

    results["plot_dir"] = opt.plot_dir;
    results["files"] = std::move(files);
    emit(ctx.document(report::to_json(space), unit, std::move(results)), opt, out);
    return kExitOk;
}

} // namespace

const char* version() noexcept { return ADAPTBOUND_VERSION; }

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Adaptive-inference opportunity bounds over a backbone state space",
                 "adaptbound"};
    app.set_version_flag("--version", std::string(version()));
    app.require_subcommand(1);
    Options opt;

    const auto add_states = [&](CLI::App* cmd) {
        return cmd->add_option("--states", opt.states, "states CSV: model_id,resource,accuracy")
            ->check(CLI::ExistingFile);
    };
    const auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", opt.out, "write the JSON report here instead of stdout");
        cmd->add_flag("--prune-dominated", opt.prune_dominated,
                      "drop states beaten by a cheaper-or-equal state instead of rejecting");
    };
    const auto add_matrix = [&](CLI::App* cmd) {
        auto* corr = cmd->add_option("--correctness", opt.correctness,
                                     "correctness CSV: instance_id,model_id,correct")
                         ->check(CLI::ExistingFile);
        auto* pred = cmd->add_option("--predictions", opt.predictions,
                                     "predictions CSV: instance_id,model_id,label")
                         ->check(CLI::ExistingFile)
                         ->excludes(corr);
        cmd->add_option("--truth", opt.truth, "ground truth CSV: instance_id,label")
            ->check(CLI::ExistingFile)
            ->needs(pred);
        pred->needs(cmd->get_option("--truth"));
        cmd->add_flag("--keep-supplied-accuracies", opt.keep_supplied,
                      "use accuracies from the states file instead of measured ones");
        return corr;
    };

    auto* bounds = app.add_subcommand("bounds", "closed-form oracle bounds");
    add_states(bounds)->required();
    add_common(bounds);
    bounds->add_option("--alpha", opt.alpha, "constant alpha in [0,1]")
        ->check(CLI::Range(0.0, 1.0));
    bounds->add_option("--alpha-profile", opt.alpha_profile, "alpha profile CSV: rank,alpha")
        ->check(CLI::ExistingFile);
    bounds->add_option("--classes", opt.classes, "number of classes C (adds the R_1 criterion)")
        ->check(CLI::Range(2, std::numeric_limits<int>::max()));

    auto* empirical =
        app.add_subcommand("empirical", "measure accuracies, P(e_i), alpha and the exact oracle");
    add_states(empirical)->required();
    empirical->add_option("--out", opt.out, "write the JSON report here instead of stdout");
    empirical->add_option("--labels-out", opt.labels_out, "write per-instance oracle labels CSV");
    empirical->add_option("--classes", opt.classes, "number of classes C")
        ->check(CLI::Range(2, std::numeric_limits<int>::max()));
    add_matrix(empirical);

    auto* design = app.add_subcommand("design", "state-space design tools");
    design->require_subcommand(1);
    auto* subset = design->add_subcommand("subset", "optimal k-state subsets (alpha = 1)");
    add_states(subset)->required();
    add_common(subset);
    subset->add_option("--k", opt.k, "largest subset size (default N)")
        ->check(CLI::PositiveNumber);
    subset->add_flag("--greedy", opt.greedy, "also report greedy nested growth");
    auto* r1 = design->add_subcommand("r1", "smallest-state admissibility criterion");
    add_states(r1)->required();
    add_common(r1);
    r1->add_option("--classes", opt.classes, "number of classes C")
        ->required()
        ->check(CLI::Range(2, std::numeric_limits<int>::max()));
    auto* continuous = design->add_subcommand("continuous", "continuous-limit alpha = 1 bound");
    auto* cont_states = add_states(continuous);
    add_common(continuous);
    continuous->add_option("--envelope", opt.envelope, "envelope CSV: resource,accuracy")
        ->check(CLI::ExistingFile)
        ->excludes(cont_states);
    continuous->require_option(1, 0);

    auto* synth = app.add_subcommand("synth", "generate a synthetic correctness matrix");
    auto* synth_states = add_states(synth);
    synth->add_option("--accuracies", opt.accuracies, "comma-separated target accuracies")
        ->excludes(synth_states);
    synth->add_option("--instances,-n", opt.instances, "number of instances")
        ->required()
        ->check(CLI::PositiveNumber);
    synth->add_option("--mode", opt.mode, "nested | independent | alpha_target")
        ->check(CLI::IsMember({"nested", "independent", "alpha_target", "alpha-target"}));
    synth->add_option("--alpha", opt.alpha, "alpha_min target (implies alpha_target mode)")
        ->check(CLI::Range(0.0, 1.0));
    synth->add_option("--seed", opt.seed, "64-bit seed")->required();
    synth->add_option("--out", opt.out, "correctness CSV path; metadata goes to <out>.meta.json")
        ->required();

    auto* plot = app.add_subcommand("report", "emit plot series CSVs plus a JSON summary");
    add_states(plot)->required();
    add_common(plot);
    add_matrix(plot);
    plot->add_option("--plot-dir", opt.plot_dir, "directory for the series files")->required();
    plot->add_option("--alpha", opt.alpha, "extra constant alpha on the bound line")
        ->check(CLI::Range(0.0, 1.0));
    plot->add_option("--classes", opt.classes, "number of classes C")
        ->check(CLI::Range(2, std::numeric_limits<int>::max()));
    plot->add_option("--k", opt.k, "largest subset size for ratio_vs_k.csv")
        ->check(CLI::PositiveNumber);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
        if (*synth && opt.states.empty() && opt.accuracies.empty()) {
            throw CLI::RequiredError("synth needs --accuracies or --states");
        }
        if (*empirical && opt.correctness.empty() &&
            opt.predictions.empty()) {
            throw CLI::RequiredError("empirical needs --correctness or --predictions/--truth");
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (*bounds) return cmd_bounds(opt, out, err);
        if (*empirical) return cmd_empirical(opt, out, err);
        if (*subset) return cmd_design_subset(opt, out, err);
        if (*r1) return cmd_design_r1(opt, out, err);
        if (*continuous) return cmd_design_continuous(opt, out, err);
        if (*synth) return cmd_synth(opt, out, err);
        if (*plot) return cmd_report(opt, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    return kExitUsage;
}

} // namespace adaptbound::cli
