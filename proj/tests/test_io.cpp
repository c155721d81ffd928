#include "north/io.hpp"

#include "doctest.h"
#include "helpers.hpp"

#include <filesystem>
#include <fstream>

using namespace north;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const auto dir = fs::temp_directory_path() / "north_io_test";
    fs::create_directories(dir);
    return dir / name;
}

}  // namespace

TEST_CASE("problem round trip")
{
    GenParams gp;
    gp.n_tasks = 7;
    gp.seed = 99;
    const auto p = generate_taskset(gp);
    const auto back = problem_from_json(problem_to_json(p));
    CHECK(back.taskset == p.taskset);
    CHECK(back.weights == p.weights);
    CHECK(back.bounds == p.bounds);

    const auto path = scratch("roundtrip.json");
    save_problem(p, path);
    const auto loaded = load_problem(path);
    CHECK(loaded.taskset == p.taskset);
    CHECK(loaded.weights == p.weights);
}

TEST_CASE("optional fields get defaults")
{
    const auto j = json::parse(R"({"tasks": [
        {"id": 0, "wcet": 1, "period": 4, "priority": 0},
        {"id": 1, "wcet": 2, "period": 6, "priority": 1}]})");
    const auto p = problem_from_json(j);
    CHECK(p.taskset[1].deadline == 6);
    CHECK(p.weights == ObjectiveWeights::uniform(2));
    CHECK(p.bounds == VariableBounds::defaults_for(p.taskset));
}

TEST_CASE("format errors name the field")
{
    auto expect = [](const char* text, const std::string& needle) {
        try {
            problem_from_json(json::parse(text));
            FAIL("accepted: " << text);
        } catch (const FormatError& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect(R"({})", "tasks");
    expect(R"({"tasks": []})", "tasks");
    expect(R"({"tasks": [{"id": 0, "period": 4, "priority": 0}]})", "tasks[0].wcet");
    expect(R"({"tasks": [{"id": 0, "wcet": "x", "period": 4, "priority": 0}]})", "tasks[0].wcet");
    expect(R"({"tasks": [{"id": -1, "wcet": 1, "period": 4, "priority": 0}]})", "tasks[0].id");
    expect(R"({"tasks": [{"id": 0, "wcet": 1, "period": 4, "priority": 0}], "alpha": [1, 2]})", "alpha");
    expect(R"([1, 2])", "object");

    const auto bad = scratch("bad.json");
    std::ofstream(bad) << "{not json";
    CHECK_THROWS_AS(load_problem(bad), FormatError);
    CHECK_THROWS_AS(load_problem(scratch("missing.json")), FormatError);
}

TEST_CASE("solution json")
{
    auto p = north::testing::problem_of({1, 1}, {10, 10});
    p.bounds.period_max = {10, 10};
    const auto sol = optimize(OptProblem::with_rta(p), RunConfig{});
    const auto j = solution_to_json(sol, p);
    CHECK(j.at("status") == "converged");
    CHECK(j.at("objective").get<double>() == doctest::Approx(sol.objective).epsilon(1e-6));
    CHECK(j.at("trace").size() == sol.trace.size());
    CHECK(problem_from_json(j.at("taskset")).taskset == sol.taskset);
}

TEST_CASE("round6")
{
    CHECK(round6(1.23456789) == 1.23457);
    CHECK(round6(34.0) == 34.0);
}
