#include "north/nmbo.hpp"

#include "doctest.h"
#include "generators.hpp"
#include "helpers.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

using namespace north;
using north::testing::problem_of;

namespace {

OptState state_of(const OptProblem& prob, const Evaluator& eval)
{
    OptState s;
    s.taskset = prob.data.taskset;
    s.objective_value = eval.evaluate(s.taskset).objective;
    return s;
}

PeriodObjective objective_over_periods(const Evaluator& eval, const TaskSet& ts)
{
    return [&eval, ts](std::span<const double> x) -> std::optional<double> {
        const auto pe = eval.evaluate(with_periods(ts, x));
        if (!pe.feasible) return std::nullopt;
        return pe.objective;
    };
}

}  // namespace

TEST_CASE("numeric_gradient on smooth functions")
{
    const PeriodObjective sq = [](std::span<const double> x) { return x[0] * x[0]; };
    const std::vector<double> x{3};
    CHECK(numeric_gradient(sq, x, 1e-3)[0] == doctest::Approx(6.0).epsilon(1e-6));

    const PeriodObjective lin = [](std::span<const double> x) { return x[0] + 1000 * x[1]; };
    const std::vector<double> y{4, -2};
    const auto g = numeric_gradient(lin, y, 0.5);
    CHECK(g[0] == doctest::Approx(1.0));
    CHECK(g[1] == doctest::Approx(1000.0));
}

TEST_CASE("numeric_gradient one-sided at bounds")
{
    const PeriodObjective sq = [](std::span<const double> x) { return x[0] * x[0]; };
    const std::vector<double> x{3}, lo{3}, hi{10};
    // Forward difference (f(3.1) - f(3)) / 0.1
    CHECK(numeric_gradient(sq, x, 0.1, lo, hi)[0] == doctest::Approx(6.1));
    CHECK_THROWS_AS(numeric_gradient(sq, x, 0.0), std::invalid_argument);
}

TEST_CASE("numeric_gradient of the control objective")
{
    const auto prob = OptProblem::with_rta(problem_of({1, 2, 3}, {4, 6, 12}));
    const Evaluator eval(prob);
    const auto f = objective_over_periods(eval, prob.data.taskset);
    const auto x = prob.data.taskset.periods();
    // r_3 = 10 is flat in T_3 around 12, so only alpha_3 is left.
    for (double h : {1e-3, 1e-2, 0.1})
        CHECK(numeric_gradient(f, x, h)[2] == doctest::Approx(1.0));

    // At T = (4,6,10) task 3 sits on its deadline: the backward probe is
    // infeasible.
    const std::vector<double> tight{4, 6, 10};
    CHECK_THROWS_AS(numeric_gradient(f, tight, 1e-3), std::domain_error);
    GradientOptions opts;
    opts.one_sided_fallback = true;
    CHECK(numeric_gradient(f, tight, 1e-3, {}, {}, opts)[2] == doctest::Approx(1.0));
}

TEST_CASE("downhill_slopes")
{
    // F jumps up by 10 below x = 1, mimicking a response-time breakpoint.
    const PeriodObjective jump = [](std::span<const double> x) { return x[0] + (x[0] < 1 ? 10 : 0); };
    const std::vector<double> at{1}, above{2};
    CHECK(downhill_slopes(jump, at, 1, 1e-3)[0] == 0.0);
    CHECK(downhill_slopes(jump, above, 2, 1e-3)[0] == doctest::Approx(1.0));

    const PeriodObjective dec = [](std::span<const double> x) { return -x[0]; };
    const std::vector<double> x{2}, hi{2};
    CHECK(downhill_slopes(dec, x, -2, 1e-3)[0] == doctest::Approx(-1.0));
    // Blocked above by the bound, uphill below.
    CHECK(downhill_slopes(dec, x, -2, 1e-3, {}, hi)[0] == 0.0);

    // Infeasible below: the forward slope stands in.
    const PeriodObjective wall = [](std::span<const double> x) -> std::optional<double> {
        if (x[0] < 2) return std::nullopt;
        return 3 * x[0];
    };
    CHECK(downhill_slopes(wall, x, 6, 1e-3)[0] == doctest::Approx(3.0));
}

TEST_CASE("propose_step")
{
    const std::vector<double> x{10, 10};
    const std::vector<double> g{3, 4};
    const auto p = propose_step(x, g, 5);
    CHECK(p.delta[0] == doctest::Approx(-3));
    CHECK(p.delta[1] == doctest::Approx(-4));
    CHECK(p.predicted_decrease == doctest::Approx(25));

    const std::vector<double> zero{0, 0};
    CHECK(propose_step(x, zero, 5).delta == std::vector<double>{0, 0});

    const std::vector<double> g1{1, 0}, x1{1.5, 4}, lo{1, 1}, hi{10, 10};
    const auto clamped = propose_step(x1, g1, 2, lo, hi);
    CHECK(clamped.delta[0] == doctest::Approx(-0.5));
    CHECK(clamped.delta[1] == 0.0);

    CHECK_THROWS_AS(propose_step(x, g, 0), std::invalid_argument);
}

TEST_CASE("propose_step drops coordinates pinned at a bound")
{
    const std::vector<double> x{1, 5}, g{1, 1}, lo{1, 1}, hi{10, 10};
    const auto p = propose_step(x, g, 2, lo, hi);
    CHECK(p.delta[0] == 0.0);
    CHECK(p.delta[1] == doctest::Approx(-2));
}

TEST_CASE("feasibility_backtrack")
{
    const auto prob = OptProblem::with_rta(problem_of({2, 2}, {10, 10}));
    const Evaluator eval(prob);
    const auto s = state_of(prob, eval);
    NmboConfig cfg;

    SUBCASE("halves into the feasible region")
    {
        const std::vector<double> d{-7, -7};
        const auto bt = feasibility_backtrack(s, d, eval, cfg);
        REQUIRE(bt.accepted);
        CHECK(bt.delta == std::vector<double>{-3.5, -3.5});
        CHECK(bt.backtracks == 1);
        CHECK(bt.state.taskset.periods() == std::vector<double>{6.5, 6.5});
        REQUIRE(bt.infeasible_trial);
        CHECK(bt.infeasible_trial->delta == d);
        CHECK(*bt.infeasible_trial->verdict.miss_set == std::vector<std::size_t>{1});
    }
    SUBCASE("zero step is rejected")
    {
        const std::vector<double> d{0, 0};
        const auto bt = feasibility_backtrack(s, d, eval, cfg);
        CHECK_FALSE(bt.accepted);
        CHECK(bt.state.taskset == s.taskset);
    }
    SUBCASE("feasible full step kept as is")
    {
        const std::vector<double> d{-1, -1};
        const auto bt = feasibility_backtrack(s, d, eval, cfg);
        REQUIRE(bt.accepted);
        CHECK(bt.delta == d);
        CHECK(bt.backtracks == 0);
        CHECK_FALSE(bt.infeasible_trial);
    }
    SUBCASE("uphill step is rejected")
    {
        auto lower = s;
        lower.taskset = with_periods(s.taskset, std::vector<double>{8, 8});
        lower.objective_value = eval.evaluate(lower.taskset).objective;
        const std::vector<double> d{1, 1};
        CHECK_FALSE(feasibility_backtrack(lower, d, eval, cfg).accepted);
    }
    SUBCASE("frozen coordinates may not move")
    {
        auto frozen = s;
        frozen.frozen.insert(0);
        const std::vector<double> d{-1, -1};
        CHECK_THROWS_AS(feasibility_backtrack(frozen, d, eval, cfg), std::invalid_argument);
    }
}

TEST_CASE("nmbo_run single task reaches its lower bound")
{
    auto p = problem_of({1}, {5});
    p.bounds.period_max = {5};
    const auto prob = OptProblem::with_rta(p);
    const Evaluator eval(prob);
    const auto res = nmbo_run(state_of(prob, eval), eval, NmboConfig::defaults_for(p.bounds));
    CHECK(res.state.taskset[0].period == doctest::Approx(1.0));
    CHECK(res.state.objective_value == doctest::Approx(2.0));
    CHECK(res.status == NmboStatus::converged);
}

TEST_CASE("nmbo_run two tasks with fixed priorities")
{
    auto p = problem_of({1, 1}, {10, 10});
    p.bounds.period_max = {10, 10};
    const auto prob = OptProblem::with_rta(p);
    const Evaluator eval(prob);
    const auto res = nmbo_run(state_of(prob, eval), eval, NmboConfig::defaults_for(p.bounds));
    CHECK(res.state.objective_value == doctest::Approx(7.0).epsilon(0.01));
    CHECK(res.state.objective_value >= 7.0);
}

TEST_CASE("nmbo_run at a stationary point returns the input")
{
    auto p = problem_of({1}, {1});
    p.bounds.period_max = {5};
    const auto prob = OptProblem::with_rta(p);
    const Evaluator eval(prob);
    const auto s = state_of(prob, eval);
    const auto res = nmbo_run(s, eval, NmboConfig::defaults_for(p.bounds));
    CHECK(res.state.taskset == s.taskset);
    CHECK(res.status == NmboStatus::converged);
    CHECK(res.accepted_steps == 0);
}

TEST_CASE("nmbo_run rejects an infeasible start and bad configs")
{
    const auto prob = OptProblem::with_rta(problem_of({3, 2}, {4, 4}));
    const Evaluator eval(prob);
    OptState s;
    s.taskset = prob.data.taskset;
    CHECK_THROWS_AS(nmbo_run(s, eval, NmboConfig{}), InfeasibleStart);

    NmboConfig bad;
    bad.backtrack_factor = 1.0;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
    bad = NmboConfig{};
    bad.max_trust_radius = 0.5;
    CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("nmbo_run with the central gradient and a custom proposer")
{
    const auto prob = OptProblem::with_rta(problem_of({1, 2}, {15, 15}));
    const Evaluator eval(prob);
    auto cfg = NmboConfig::defaults_for(prob.data.bounds);
    cfg.gradient = GradientMode::central;
    int proposals = 0;
    cfg.proposer = [&](auto x, auto g, double r, auto lo, auto hi) {
        ++proposals;
        return propose_step(x, g, r, lo, hi);
    };
    const auto s = state_of(prob, eval);
    const auto res = nmbo_run(s, eval, cfg);
    CHECK(proposals > 0);
    CHECK(res.state.objective_value < s.objective_value);
}

TEST_CASE("property: nmbo iterates stay feasible, descend and keep frozen periods")
{
    testgen::Gen g(21);
    for (int trial = 0; trial < 60; ++trial) {
        const auto n = static_cast<std::size_t>(g.integer(2, 8));
        auto ts = testgen::real_taskset(g, n);
        Problem p;
        p.bounds = VariableBounds::defaults_for(ts);
        ts = with_periods(ts, p.bounds.period_max);
        p.taskset = ts;
        p.weights.alpha.resize(n);
        p.weights.beta.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            p.weights.alpha[i] = g.real(1, 100);
            p.weights.beta[i] = g.real(1, 100);
        }
        const auto prob = OptProblem::with_rta(p);
        const Evaluator eval(prob);
        OptState s = state_of(prob, eval);
        for (std::size_t i = 0; i < n; ++i)
            if (g.integer(0, 3) == 0) s.frozen.insert(i);

        const auto start = ts.periods();
        double last = s.objective_value;
        std::size_t bad = 0;
        auto observer = [&](const OptState& it) {
            const auto v = analyze(it.taskset);
            if (!v.schedulable) ++bad;
            const double f = control_objective(it.taskset, p.weights, v);
            if (std::abs(f - it.objective_value) > 1e-9 * std::max(1.0, std::abs(f))) ++bad;
            if (!(it.objective_value < last)) ++bad;
            last = it.objective_value;
            for (auto id : s.frozen)
                if (it.taskset[id].period != start[id]) ++bad;
            for (std::size_t i = 0; i < n; ++i)
                if (it.taskset[i].period < p.bounds.period_min[i] ||
                    it.taskset[i].period > p.bounds.period_max[i])
                    ++bad;
        };
        const auto res = nmbo_run(s, eval, NmboConfig::defaults_for(p.bounds), observer);
        CHECK(bad == 0);
        CHECK(res.state.objective_value <= s.objective_value);
        CHECK(res.state.frozen == s.frozen);
    }
}
