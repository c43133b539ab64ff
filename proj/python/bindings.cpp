#include "adaptbound/bounds.hpp"
#include "adaptbound/cli.hpp"
#include "adaptbound/design.hpp"
#include "adaptbound/empirical.hpp"
#include "adaptbound/error.hpp"
#include "adaptbound/synth.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace adaptbound;

namespace {

using StateTuple = std::tuple<std::string, double, std::optional<double>>;

std::vector<ModelState> to_states(const std::vector<StateTuple>& rows) {
    std::vector<ModelState> out;
    for (const auto& [id, r, a] : rows) out.push_back({id, r, a});
    return out;
}

CorrectnessMatrix make_matrix(std::vector<std::string> instance_ids, std::vector<std::string> model_ids,
                              const std::vector<std::vector<bool>>& rows) {
    std::vector<std::uint8_t> cells;
    for (const auto& row : rows) {
        if (row.size() != model_ids.size()) {
            throw ValidationError("every row needs one cell per model");
        }
        for (bool c : row) cells.push_back(c ? 1 : 0);
    }
    return CorrectnessMatrix(std::move(instance_ids), std::move(model_ids), std::move(cells));
}

std::vector<std::vector<bool>> matrix_rows(const CorrectnessMatrix& m) {
    std::vector<std::vector<bool>> rows(m.num_instances(), std::vector<bool>(m.num_models()));
    for (std::size_t x = 0; x < m.num_instances(); ++x) {
        for (std::size_t i = 0; i < m.num_models(); ++i) rows[x][i] = m.correct(x, i);
    }
    return rows;
}

} // namespace

PYBIND11_MODULE(_adaptbound, m) {
    m.doc() = "Oracle bounds for adaptive inference over model state spaces";

    auto base = py::register_exception<Error>(m, "Error", PyExc_ValueError);
    py::register_exception<ValidationError>(m, "ValidationError", base.ptr());
    py::register_exception<InconsistencyError>(m, "InconsistencyError", base.ptr());
    py::register_exception<IngestError>(m, "IngestError", base.ptr());
    py::register_exception<UndefinedAlphaError>(m, "UndefinedAlphaError", base.ptr());
    py::register_exception<ParseError>(m, "ParseError", base.ptr());
    py::register_exception<UnreachableTargetError>(m, "UnreachableTargetError", base.ptr());

    py::class_<StateSpace>(m, "StateSpace")
        .def("__len__", &StateSpace::size)
        .def_property_readonly("model_ids", &StateSpace::model_ids)
        .def_property_readonly("resources", &StateSpace::resources)
        .def_property_readonly("accuracies", &StateSpace::accuracies)
        .def_property_readonly("num_classes", [](const StateSpace& s) { return s.num_classes(); });

    m.def(
        "validate_state_space",
        [](const std::vector<StateTuple>& states, bool prune_dominated, std::optional<int> num_classes) {
            return validate_state_space(to_states(states),
                                        prune_dominated ? OrderingPolicy::prune_dominated
                                                        : OrderingPolicy::reject,
                                        num_classes);
        },
        py::arg("states"), py::arg("prune_dominated") = false, py::arg("num_classes") = py::none(),
        "states: iterable of (model_id, resource, accuracy)");

    py::class_<OracleOutcome>(m, "OracleOutcome")
        .def_readonly("r_oracle", &OracleOutcome::r_oracle)
        .def_readonly("a_oracle", &OracleOutcome::a_oracle)
        .def_readonly("delta_r", &OracleOutcome::delta_r)
        .def_readonly("delta_a", &OracleOutcome::delta_a)
        .def_readonly("r_ratio", &OracleOutcome::r_ratio)
        .def_readonly("selection_freq", &OracleOutcome::selection_freq)
        .def("__repr__", [](const OracleOutcome& o) {
            std::ostringstream s;
            s << "OracleOutcome(r_oracle=" << o.r_oracle << ", a_oracle=" << o.a_oracle << ")";
            return s.str();
        });

    m.def("oracle_conservative", &oracle_conservative, py::arg("space"));
    m.def("oracle_constant_alpha", &oracle_constant_alpha, py::arg("space"), py::arg("alpha"));
    m.def(
        "oracle_from_alpha_profile",
        [](const StateSpace& s, std::vector<std::optional<double>> alpha) {
            return oracle_from_alpha_profile(s, AlphaProfile(std::move(alpha)));
        },
        py::arg("space"), py::arg("alpha"), "alpha: values for ranks 2..N");
    m.def(
        "oracle_from_cascade",
        [](const StateSpace& s, std::vector<double> p) { return oracle_from_cascade(s, ErrorCascade(std::move(p))); },
        py::arg("space"), py::arg("p"));

    py::class_<CorrectnessMatrix>(m, "CorrectnessMatrix")
        .def(py::init(&make_matrix), py::arg("instance_ids"), py::arg("model_ids"), py::arg("rows"))
        .def_property_readonly("instance_ids", &CorrectnessMatrix::instance_ids)
        .def_property_readonly("model_ids", &CorrectnessMatrix::model_ids)
        .def_property_readonly("rows", &matrix_rows);

    m.def("measured_accuracies", &measured_accuracies, py::arg("matrix"));
    m.def(
        "estimate_cascade", [](const CorrectnessMatrix& x) {
            const auto c = estimate_cascade(x);
            return std::vector<double>(c.values().begin(), c.values().end());
        },
        py::arg("matrix"));
    m.def(
        "estimate_alpha", [](const CorrectnessMatrix& x) { return measure_alpha(x).entries(); },
        py::arg("matrix"), "alpha for ranks 2..N; None where undefined");
    m.def(
        "simulate_oracle",
        [](const CorrectnessMatrix& x, const StateSpace& s) {
            auto sim = simulate_oracle(x, s);
            py::list labels;
            for (const auto& l : sim.labels) {
                labels.append(py::make_tuple(l.instance_id, l.selected_model_id, l.selected_rank, l.correct));
            }
            return py::make_tuple(sim.outcome, labels);
        },
        py::arg("matrix"), py::arg("space"),
        "returns (outcome, [(instance_id, model_id, rank, correct), ...])");

    py::class_<SubsetPlan>(m, "SubsetPlan")
        .def_readonly("k", &SubsetPlan::k)
        .def_readonly("chosen_ranks", &SubsetPlan::chosen_ranks)
        .def_readonly("r_oracle", &SubsetPlan::r_oracle)
        .def_readonly("r_ratio", &SubsetPlan::r_ratio)
        .def_readonly("marginal_utility", &SubsetPlan::marginal_utility);

    m.def("optimal_subset", &optimal_subset, py::arg("space"), py::arg("k"));
    m.def("greedy_growth", &greedy_growth, py::arg("space"), py::arg("k_max"));

    py::class_<R1Criterion>(m, "R1Criterion")
        .def_readonly("threshold", &R1Criterion::threshold)
        .def_readonly("threshold_r_largest", &R1Criterion::threshold_r_largest)
        .def_readonly("admissible", &R1Criterion::admissible)
        .def_readonly("r_oracle", &R1Criterion::r_oracle)
        .def_readonly("r_oracle_random_first", &R1Criterion::r_oracle_random_first)
        .def_readonly("direct_admissible", &R1Criterion::direct_admissible);
    m.def("r1_admissible", &r1_admissible, py::arg("space"));

    m.def(
        "continuous_bound",
        [](const std::vector<std::pair<double, double>>& points) {
            std::vector<EnvelopePoint> env;
            for (const auto& [r, a] : points) env.push_back({r, a});
            return continuous_bound(Envelope(std::move(env)));
        },
        py::arg("points"), "points: (resource, accuracy) pairs of the envelope");

    m.def(
        "synth",
        [](std::vector<double> accuracies, std::size_t n_instances, const std::string& mode,
           std::uint64_t seed, std::optional<double> alpha) {
            SynthSpec spec;
            spec.accuracies = std::move(accuracies);
            spec.n_instances = n_instances;
            const auto parsed = parse_synth_mode(mode);
            if (!parsed) throw ValidationError("unknown synth mode '" + mode + "'");
            spec.mode = *parsed;
            spec.alpha_target = alpha;
            spec.seed = seed;
            return generate(spec).matrix;
        },
        py::arg("accuracies"), py::arg("n_instances"), py::arg("mode") = "nested", py::arg("seed") = 0,
        py::arg("alpha") = py::none());

    m.def(
        "run_cli",
        [](const std::vector<std::string>& args) {
            std::ostringstream out;
            std::ostringstream err;
            const int code = cli::run(args, out, err);
            return py::make_tuple(code, out.str(), err.str());
        },
        py::arg("args"), "returns (exit_code, stdout, stderr)");

    m.attr("__version__") = cli::version();
}
