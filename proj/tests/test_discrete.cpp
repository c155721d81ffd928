#include "north/discrete.hpp"
#include "north/objective.hpp"

#include "doctest.h"
#include "generators.hpp"
#include "helpers.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

using namespace north;
using north::testing::problem_of;

namespace {

TaskSet periods_only(std::vector<double> t)
{
    std::vector<double> c(t.size(), 1.0);
    return make_taskset(c, t);
}

}  // namespace

TEST_CASE("rate monotonic")
{
    CHECK(assign_rm(periods_only({10, 5, 20})) == Permutation{1, 0, 2});
    CHECK(assign_rm(periods_only({5, 5})) == Permutation{0, 1});
    CHECK(assign_rm(periods_only({2, 4, 8})) == Permutation{0, 1, 2});
}

TEST_CASE("DkC")
{
    auto ts = make_taskset(std::vector<double>{2, 1, 5}, std::vector<double>{10, 5, 20});
    CHECK(assign_dkc(ts, 1) == Permutation{1, 0, 2});
    CHECK(assign_dkc(ts, 0) == assign_rm(ts));

    auto two = make_taskset(std::vector<double>{1, 3}, std::vector<double>{6, 6});
    CHECK(assign_dkc(two, 1) == Permutation{1, 0});
    CHECK_THROWS_AS(assign_dkc(two, -1), std::invalid_argument);
}

TEST_CASE("brute force")
{
    RtaOracle rta;
    const auto single = problem_of({1}, {3});
    const auto one = brute_force_priorities(single.taskset, single.weights, rta);
    REQUIRE(one.priorities);
    CHECK(*one.priorities == Permutation{0});

    const auto p = problem_of({1, 2, 3}, {4, 6, 10});
    const auto best = brute_force_priorities(p.taskset, p.weights, rta);
    REQUIRE(best.priorities);
    const auto chosen = with_priorities(p.taskset, *best.priorities);
    CHECK(analyze(chosen).schedulable);
    CHECK(best.objective == control_objective(chosen, p.weights, rta));
    CHECK(best.objective <= control_objective(p.taskset, p.weights, rta));

    const auto over = problem_of({3, 2}, {4, 4});
    CHECK_FALSE(brute_force_priorities(over.taskset, over.weights, rta).priorities);
}

TEST_CASE("brute force guards")
{
    RtaOracle rta;
    const auto big = problem_of(std::vector<double>(10, 1.0), std::vector<double>(10, 50.0));
    CHECK_THROWS_AS(brute_force_priorities(big.taskset, big.weights, rta), std::invalid_argument);
    const auto small = problem_of({1, 1}, {4, 4});
    const auto blind = as_boolean_blackbox(make_rta_oracle());
    CHECK_THROWS_AS(brute_force_priorities(small.taskset, small.weights, *blind), std::invalid_argument);
    CHECK_THROWS_AS(PriorityPolicy::brute_force().assign(small.taskset), std::invalid_argument);
}

TEST_CASE("policy dispatch")
{
    RtaOracle rta;
    const auto p = problem_of({1, 2, 3}, {10, 8, 12});
    CHECK(PriorityPolicy::rm().assign(p.taskset) == assign_rm(p.taskset));
    CHECK(PriorityPolicy::dkc(2).assign(p.taskset) == assign_dkc(p.taskset, 2));
    CHECK(PriorityPolicy::brute_force().assign(p.taskset, &p.weights, &rta) ==
          *brute_force_priorities(p.taskset, p.weights, rta).priorities);
}

TEST_CASE("property: policies return permutations; RM ignores period scale")
{
    testgen::Gen g(31);
    for (int trial = 0; trial < 1000; ++trial) {
        const auto ts = testgen::real_taskset(g, static_cast<std::size_t>(g.integer(1, 12)));
        const auto rm = assign_rm(ts);
        CHECK(is_permutation_of_ranks(rm));
        CHECK(is_permutation_of_ranks(assign_dkc(ts, g.real(0, 3))));

        auto scaled = ts;
        const double s = g.real(0.01, 100);
        for (auto& t : scaled.tasks) t.period *= s;
        CHECK(assign_rm(scaled) == rm);
        // Ranks follow ascending periods.
        for (std::size_t i = 0; i < ts.size(); ++i)
            for (std::size_t j = 0; j < ts.size(); ++j)
                if (ts[i].period < ts[j].period) CHECK(rm[i] < rm[j]);
    }
}

TEST_CASE("property: RM is feasible whenever any order is")
{
    testgen::Gen g(32);
    RtaOracle rta;
    for (int trial = 0; trial < 200; ++trial) {
        const auto n = static_cast<std::size_t>(g.integer(1, 6));
        auto ts = testgen::integer_taskset(g, n);
        Problem p{ts, ObjectiveWeights::uniform(n), VariableBounds::defaults_for(ts)};
        const auto best = brute_force_priorities(p.taskset, p.weights, rta);
        if (best.priorities) CHECK(analyze(with_priorities(ts, assign_rm(ts))).schedulable);
    }
}
