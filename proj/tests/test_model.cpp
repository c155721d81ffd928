#include "north/model.hpp"

#include "doctest.h"

#include <stdexcept>
#include <vector>

using namespace north;

namespace {

TaskSet three()
{
    const std::vector<double> c{1, 2, 3}, t{4, 6, 10};
    return make_taskset(c, t);
}

bool has_reason(const ValidationResult& r, const std::string& text)
{
    for (const auto& v : r.violations)
        if (v.reason == text) return true;
    return false;
}

}  // namespace

TEST_CASE("make_taskset uses implicit deadlines and id priorities")
{
    const auto ts = three();
    REQUIRE(ts.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(ts[i].id == i);
        CHECK(ts[i].priority == i);
        CHECK(ts[i].deadline == ts[i].period);
    }
    const std::vector<double> c{1}, t{1, 2};
    CHECK_THROWS_AS(make_taskset(c, t), std::invalid_argument);
}

TEST_CASE("validation of a well formed set")
{
    const auto ts = three();
    CHECK(validate_taskset(ts).ok());
    CHECK(validate_taskset(ts, VariableBounds::defaults_for(ts)).ok());
}

TEST_CASE("validation flags period below wcet")
{
    auto ts = three();
    ts[1].period = ts[1].deadline = 1;
    const auto r = validate_taskset(ts);
    CHECK_FALSE(r.ok());
    CHECK(has_reason(r, "period < wcet for task 1"));
    REQUIRE(r.violations.size() == 1);
    CHECK(r.violations[0].task == 1);
}

TEST_CASE("validation flags duplicate priorities")
{
    auto ts = three();
    ts[1].priority = 0;
    const auto r = validate_taskset(ts);
    CHECK(has_reason(r, "priorities not a permutation"));
    CHECK(r.violations[0].task == Violation::npos);
}

TEST_CASE("validation against bounds")
{
    const auto ts = three();
    auto b = VariableBounds::defaults_for(ts);
    CHECK(b.period_min == std::vector<double>{1, 2, 3});
    CHECK(b.period_max == std::vector<double>{30, 30, 30});

    b.period_max[2] = 8;
    CHECK(has_reason(validate_taskset(ts, b), "period > period_max for task 2"));
    b = VariableBounds::defaults_for(ts);
    b.period_min[0] = 5;
    CHECK(has_reason(validate_taskset(ts, b), "period < period_min for task 0"));
    b.period_min[0] = 0.5;
    CHECK(has_reason(validate_taskset(ts, b), "period_min < wcet for task 0"));
    b.period_min[1] = 40;
    CHECK(has_reason(validate_taskset(ts, b), "period_min > period_max for task 1"));
}

TEST_CASE("deadline must equal period")
{
    auto ts = three();
    ts[2].deadline = 9;
    CHECK_FALSE(validate_taskset(ts).ok());
}

TEST_CASE("weights validation")
{
    CHECK(validate_weights(ObjectiveWeights::uniform(3), 3).ok());
    CHECK_FALSE(validate_weights(ObjectiveWeights::uniform(2), 3).ok());
    auto w = ObjectiveWeights::uniform(2);
    w.beta[1] = 0;
    CHECK_FALSE(validate_weights(w, 2).ok());
}

TEST_CASE("utilization")
{
    CHECK(utilization(three()) == doctest::Approx(0.25 + 1.0 / 3.0 + 0.3));
    const std::vector<double> c1{1}, t1{1};
    CHECK(utilization(make_taskset(c1, t1)) == 1.0);
    const std::vector<double> c2{3, 2}, t2{4, 4};
    CHECK(utilization(make_taskset(c2, t2)) == 1.25);
}

TEST_CASE("apply_assignment")
{
    const auto ts = three();
    const auto b = VariableBounds::defaults_for(ts);

    SUBCASE("identity update")
    {
        const std::vector<double> t{4, 6, 10};
        const std::vector<std::size_t> p{0, 1, 2};
        CHECK(apply_assignment(ts, t, p, b) == ts);
    }
    SUBCASE("new values")
    {
        const std::vector<double> t{5, 7, 12};
        const std::vector<std::size_t> p{1, 0, 2};
        const auto out = apply_assignment(ts, t, p, b);
        CHECK(out.periods() == t);
        CHECK(out[1].priority == 0);
        CHECK(out[2].deadline == 12);
    }
    SUBCASE("rejections")
    {
        const std::vector<double> ok{4, 6, 10}, low{0.5, 6, 10}, short_t{4, 6};
        const std::vector<std::size_t> p{0, 1, 2}, dup{0, 0, 2};
        CHECK_THROWS_AS(apply_assignment(ts, low, p, b), std::invalid_argument);
        CHECK_THROWS_AS(apply_assignment(ts, short_t, p, b), std::invalid_argument);
        CHECK_THROWS_AS(apply_assignment(ts, ok, dup, b), std::invalid_argument);
    }
}

TEST_CASE("is_permutation_of_ranks")
{
    const std::vector<std::size_t> a{2, 0, 1}, b{0, 2}, c{1, 1}, e{};
    CHECK(is_permutation_of_ranks(a));
    CHECK_FALSE(is_permutation_of_ranks(b));
    CHECK_FALSE(is_permutation_of_ranks(c));
    CHECK(is_permutation_of_ranks(e));
}
