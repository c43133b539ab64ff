#include "adaptbound/report.hpp"

#include "adaptbound/error.hpp"
#include "adaptbound/io.hpp"

#include <cmath>

namespace adaptbound::report {

namespace {

void render_value(const Json& value, std::string& out, int depth) {
    const auto indent = [&](int d) { out.append(static_cast<std::size_t>(2 * d), ' '); };
    switch (value.type()) {
    case Json::value_t::object: {
        if (value.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (const auto& [key, item] : value.items()) {
            if (!first) out += ",\n";
            first = false;
            indent(depth + 1);
            out += Json(key).dump();
            out += ": ";
            render_value(item, out, depth + 1);
        }
        out += '\n';
        indent(depth);
        out += '}';
        return;
    }
    case Json::value_t::array: {
        if (value.empty()) {
            out += "[]";
            return;
        }
        out += "[\n";
        bool first = true;
        for (const auto& item : value) {
            if (!first) out += ",\n";
            first = false;
            indent(depth + 1);
            render_value(item, out, depth + 1);
        }
        out += '\n';
        indent(depth);
        out += ']';
        return;
    }
    case Json::value_t::number_float:
        out += io::format_number(value.get<double>());
        return;
    default:
        out += value.dump();
        return;
    }
}

} // namespace

Json number(double value) {
    if (!std::isfinite(value)) {
        throw Error("report contains a non-finite number");
    }
    return Json(value);
}

Json optional_number(const std::optional<double>& value) {
    return value ? number(*value) : Json(nullptr);
}

Json to_json(const StateSpace& space) {
    Json states = Json::array();
    for (std::size_t i = 0; i < space.size(); ++i) {
        states.push_back({{"rank", i + 1},
                          {"model_id", space[i].model_id},
                          {"resource", number(space[i].resource)},
                          {"accuracy", optional_number(space[i].accuracy)}});
    }
    return states;
}

Json to_json(const OracleOutcome& outcome) {
    return {{"r_oracle", number(outcome.r_oracle)},
            {"a_oracle", number(outcome.a_oracle)},
            {"delta_r", number(outcome.delta_r)},
            {"delta_a", number(outcome.delta_a)},
            {"r_ratio", number(outcome.r_ratio)}};
}

Json to_json(const OracleOutcome& outcome, const StateSpace& space) {
    Json out = to_json(outcome);
    if (outcome.selection_freq.size() == space.size() + 1) {
        Json states = Json::array();
        for (std::size_t i = 0; i < space.size(); ++i) {
            states.push_back({{"rank", i + 1},
                              {"model_id", space[i].model_id},
                              {"p", number(outcome.selection_freq[i])}});
        }
        out["selection_freq"] = {{"states", std::move(states)},
                                 {"fallback", number(outcome.selection_freq.back())}};
    }
    return out;
}

Json to_json(const AlphaProfile& profile) {
    Json entries = Json::array();
    for (std::size_t rank = 2; rank <= profile.num_states(); ++rank) {
        entries.push_back({{"rank", rank}, {"alpha", optional_number(profile.at_rank(rank))}});
    }
    return {{"entries", std::move(entries)},
            {"alpha_min", optional_number(profile.alpha_min())},
            {"alpha_max", optional_number(profile.alpha_max())}};
}

Json to_json(const ErrorCascade& cascade) {
    Json out = Json::array();
    for (std::size_t i = 0; i < cascade.size(); ++i) {
        out.push_back({{"rank", i + 1}, {"p", number(cascade[i])}});
    }
    return out;
}

Json to_json(const SubsetPlan& plan, const StateSpace& space) {
    Json ids = Json::array();
    for (std::size_t rank : plan.chosen_ranks) ids.push_back(space[rank - 1].model_id);
    Json out = {{"k", plan.k},
                {"chosen_ranks", plan.chosen_ranks},
                {"chosen_model_ids", std::move(ids)},
                {"r_oracle", number(plan.r_oracle)},
                {"r_ratio", number(plan.r_ratio)}};
    if (plan.marginal_utility) out["marginal_utility"] = number(*plan.marginal_utility);
    return out;
}

Json to_json(const R1Criterion& c) {
    return {{"threshold", number(c.threshold)},
            {"threshold_r_largest", number(c.threshold_r_largest)},
            {"admissible", c.admissible},
            {"r_oracle", number(c.r_oracle)},
            {"r_oracle_random_first", number(c.r_oracle_random_first)},
            {"direct_admissible", c.direct_admissible},
            {"consistent", c.consistent()}};
}

Json to_json(const Envelope& envelope) {
    Json out = Json::array();
    for (const auto& p : envelope.points()) {
        out.push_back({{"resource", number(p.resource)}, {"accuracy", number(p.accuracy)}});
    }
    return out;
}

std::string render(const Json& document) {
    std::string out;
    render_value(document, out, 0);
    out += '\n';
    return out;
}

} // namespace adaptbound::report
