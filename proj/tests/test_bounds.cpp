#include "adaptbound/bounds.hpp"
#include "adaptbound/error.hpp"

#include "oracles.hpp"

#include <doctest.h>

#include <random>

using namespace adaptbound;

namespace {

StateSpace space_of(std::initializer_list<ModelState> list) { return validate_state_space(list); }

double tol(const StateSpace& s) { return 1e-12 * std::max(1.0, s.largest_resource()); }

} // namespace

TEST_CASE("oracle_from_cascade worked examples") {
    SUBCASE("single state always runs S_1") {
        const auto out = oracle_from_cascade(space_of({{"a", 1, 0.8}}), ErrorCascade({0.2}));
        CHECK(out.r_oracle == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(out.a_oracle == doctest::Approx(0.8).epsilon(1e-15));
        CHECK(out.selection_freq.size() == 2);
    }
    SUBCASE("two states") {
        const auto space = space_of({{"a", 1, 0.8}, {"b", 10, 0.9}});
        const auto out = oracle_from_cascade(space, ErrorCascade({0.2, 0.1}));
        CHECK(std::abs(out.r_oracle - 1.9) < 1e-12);
        CHECK(std::abs(out.a_oracle - 0.9) < 1e-12);

        // Matrix realising the cascade: 8 rows S_1 right, 1 row only S_2
        // right, 1 row both wrong.
        oracle::Rows rows(8, {true, true});
        rows.push_back({false, true});
        rows.push_back({false, false});
        const auto sim = oracle::brute_force_oracle(rows, {1, 10});
        CHECK(std::abs(sim.r - out.r_oracle) < 1e-12);
        CHECK(std::abs(sim.a - out.a_oracle) < 1e-12);

        double sum = 0.0;
        for (double f : out.selection_freq) sum += f;
        CHECK(std::abs(sum - 1.0) < 1e-9);
    }
    SUBCASE("smallest model always correct") {
        const auto space = space_of({{"a", 2, 0.8}, {"b", 5, 0.85}, {"c", 10, 0.9}});
        const auto out = oracle_from_cascade(space, ErrorCascade({0, 0, 0}));
        CHECK(out.r_oracle == 2.0);
        CHECK(out.a_oracle == 1.0);
    }
    SUBCASE("errors") {
        const auto space = space_of({{"a", 1, 0.8}, {"b", 10, 0.9}});
        CHECK_THROWS_AS(oracle_from_cascade(space, ErrorCascade({0.2})), ValidationError);
    }
}

TEST_CASE("oracle_from_alpha_profile") {
    const auto two = space_of({{"a", 1, 0.8}, {"b", 10, 0.9}});
    SUBCASE("alpha_2 = 1 matches the two-state form") {
        const auto out = oracle_from_alpha_profile(two, AlphaProfile({1.0}));
        CHECK(std::abs(out.r_oracle - 1.9) < 1e-12);
        CHECK(std::abs(out.a_oracle - 0.9) < 1e-12);
    }
    SUBCASE("all alpha zero gives perfect accuracy") {
        const auto three = space_of({{"a", 1, 0.8}, {"b", 5, 0.85}, {"c", 10, 0.9}});
        const auto out = oracle_from_alpha_profile(three, AlphaProfile({0.0, 0.0}));
        CHECK(out.a_oracle == 1.0);
    }
    SUBCASE("constant profile reduces to the constant-alpha form") {
        const auto three = space_of({{"a", 1, 0.8}, {"b", 5, 0.85}, {"c", 10, 0.9}});
        const auto p = oracle_from_alpha_profile(three, AlphaProfile({0.5, 0.5}));
        const auto c = oracle_constant_alpha(three, 0.5);
        CHECK(std::abs(p.r_oracle - c.r_oracle) < 1e-12);
        CHECK(std::abs(p.a_oracle - c.a_oracle) < 1e-12);
    }
    SUBCASE("undefined entries are rejected") {
        CHECK_THROWS_AS(oracle_from_alpha_profile(two, AlphaProfile({std::nullopt})),
                        ValidationError);
    }
    SUBCASE("inconsistent alpha names the first rank") {
        const auto three = space_of({{"a", 1, 0.8}, {"b", 5, 0.85}, {"c", 10, 0.9}});
        try {
            oracle_from_alpha_profile(three, AlphaProfile({0.2, 1.0}));
            FAIL("expected InconsistencyError");
        } catch (const InconsistencyError& e) {
            CHECK(e.first_rank() == 3);
        }
    }
}

TEST_CASE("oracle_constant_alpha against printed accuracies") {
    const auto with_top = [](double an) {
        return space_of({{"small", 1, 0.5}, {"large", 10, an}});
    };
    CHECK(std::abs(oracle_constant_alpha(with_top(0.8395), 0.58).a_oracle - 0.9067) <= 0.002);
    CHECK(std::abs(oracle_constant_alpha(with_top(0.8860), 0.52).a_oracle - 0.9400) <= 0.002);
    const auto s = with_top(0.7);
    CHECK(oracle_constant_alpha(s, 1.0).a_oracle == 0.7);
    CHECK_THROWS_AS(oracle_constant_alpha(s, 1.5), ValidationError);
    CHECK_THROWS_AS(oracle_constant_alpha(s, -0.1), ValidationError);
}

TEST_CASE("oracle_constant_alpha endpoints") {
    const auto s = space_of({{"a", 1, 0.8}, {"b", 10, 0.9}});
    const auto opt = oracle_constant_alpha(s, 0.0);
    CHECK(opt.a_oracle == 1.0);
    CHECK(std::abs(opt.r_oracle - (1 + 9 * 0.2)) < 1e-12);
    const auto cons = oracle_conservative(s);
    const auto one = oracle_constant_alpha(s, 1.0);
    CHECK(one.r_oracle == cons.r_oracle);
    CHECK(one.a_oracle == cons.a_oracle);
}

TEST_CASE("oracle_conservative worked examples") {
    const auto two = oracle_conservative(space_of({{"a", 1, 0.8}, {"b", 10, 0.9}}));
    CHECK(std::abs(two.r_oracle - 1.9) < 1e-12);
    CHECK(two.a_oracle == 0.9);
    const auto three =
        oracle_conservative(space_of({{"a", 1, 0.8}, {"b", 5, 0.85}, {"c", 10, 0.9}}));
    CHECK(std::abs(three.r_oracle - 1.65) < 1e-12);
    const auto one = oracle_conservative(space_of({{"a", 3.5, 0.6}}));
    CHECK(one.r_oracle == 3.5);

    // Nested matrix for the two-state space: 80 rows both right, 10 rows
    // only S_2 right, 10 rows both wrong.
    oracle::Rows rows(80, {true, true});
    rows.insert(rows.end(), 10, {false, true});
    rows.insert(rows.end(), 10, {false, false});
    CHECK(std::abs(oracle::brute_force_oracle(rows, {1, 10}).r - two.r_oracle) < 1e-12);
}

TEST_CASE("gain_metrics") {
    const auto eff = space_of({{"b0", 0.39, 0.77}, {"b7", 37.75, 0.8395}});
    OracleOutcome o;
    o.r_oracle = 0.60;
    o.a_oracle = 0.8395;
    const auto g = gain_metrics(eff, o);
    CHECK(std::abs(g.delta_r - 37.15) < 1e-12);
    CHECK(std::abs(g.r_ratio - 63.43) / 63.43 <= 0.015);

    const auto llama = space_of({{"7b", 1670, 0.7}, {"70b", 17570, 0.8379}});
    o.r_oracle = 2423.36;
    const auto gl = gain_metrics(llama, o);
    CHECK(std::abs(gl.delta_r - 15146.64) < 1e-9);
    CHECK(std::abs(gl.r_ratio - 7.25) < 0.005);

    o.r_oracle = 17570;
    const auto none = gain_metrics(llama, o);
    CHECK(none.delta_r == 0.0);
    CHECK(none.r_ratio == 1.0);

    o.r_oracle = 0.0;
    CHECK_THROWS_AS(gain_metrics(llama, o), ValidationError);
}

TEST_CASE("properties over random spaces") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int trial = 0; trial < 300; ++trial) {
        const std::size_t n = 1 + rng() % 20;
        const auto space = oracle::random_space(rng, n);
        const double t = tol(space);
        const auto cons = oracle_conservative(space);

        // Path equivalence for a consistent random profile: alpha_i drawn
        // below the largest value that keeps the cascade nested.
        std::vector<std::optional<double>> entries;
        double prev = 1.0 - space.accuracy(0);
        for (std::size_t i = 1; i < n; ++i) {
            const double err = 1.0 - space.accuracy(i);
            const double cap = err > 0 ? std::min(1.0, prev / err) : 1.0;
            const double a = u01(rng) * cap;
            entries.push_back(a);
            prev = a * err;
        }
        const AlphaProfile profile(entries);
        const auto by_alpha = oracle_from_alpha_profile(space, profile);
        const auto by_cascade = oracle_from_cascade(space, cascade_from_alpha(space, profile));
        CHECK(std::abs(by_alpha.r_oracle - by_cascade.r_oracle) <= t);
        CHECK(std::abs(by_alpha.a_oracle - by_cascade.a_oracle) <= 1e-12);

        // Constant alpha: a_oracle non-increasing, r_oracle affine in alpha.
        const auto c0 = oracle_constant_alpha(space, 0.0);
        const auto ch = oracle_constant_alpha(space, 0.5);
        const auto c1 = oracle_constant_alpha(space, 1.0);
        CHECK(c0.a_oracle >= ch.a_oracle);
        CHECK(ch.a_oracle >= c1.a_oracle);
        CHECK(std::abs(ch.r_oracle - 0.5 * (c0.r_oracle + c1.r_oracle)) <= 4 * t);
        CHECK(c1.r_oracle == cons.r_oracle);

        // Bound sandwich.
        for (double a : {0.0, 0.25, 0.5, 0.75, 1.0}) {
            const auto o = oracle_constant_alpha(space, a);
            CHECK(o.r_oracle >= space.smallest_resource() - t);
            CHECK(o.r_oracle <= space.largest_resource() + t);
            CHECK(o.a_oracle >= space.largest_accuracy() - 1e-12);
            CHECK(o.a_oracle <= 1.0);
        }

        // Two algebraic forms of the alpha = 1 resource, and the naive sum.
        const auto r = space.resources();
        const auto acc = space.accuracies();
        CHECK(std::abs(conservative_resource(r, acc) - conservative_resource_by_range(r, acc)) <= t);
        CHECK(std::abs(cons.r_oracle - oracle::naive_conservative(r, acc)) <= 1e-10);
    }
}

TEST_CASE("compensated sums hold on large spaces") {
    std::mt19937_64 rng(99);
    const auto space = oracle::random_space(rng, 10000, 0.2, 1.0, 1e4);
    const auto r = space.resources();
    const auto a = space.accuracies();
    const double v1 = conservative_resource(r, a);
    const double v2 = conservative_resource_by_range(r, a);
    CHECK(std::abs(v1 - v2) / v1 < 1e-12);
}
