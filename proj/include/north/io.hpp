#pragma once

#include "north/bench.hpp"
#include "north/model.hpp"
#include "north/orchestrator.hpp"

#include "json.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>

namespace north {

/// Malformed input file; the message names the offending field.
class FormatError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Task-set file:
/// {"tasks": [{"id","wcet","period","deadline","priority"}...],
///  "alpha": [...], "beta": [...], "period_min": [...], "period_max": [...]}
/// Missing weights default to 1, missing bounds to [C_i, 5 * sum C].
Problem problem_from_json(const nlohmann::json& j);
nlohmann::json problem_to_json(const Problem& p);

Problem load_problem(const std::filesystem::path& path);
void save_problem(const Problem& p, const std::filesystem::path& path);

nlohmann::json solution_to_json(const Solution& s, const Problem& data);

nlohmann::json summary_to_json(const BenchReport& report);

/// Rounds to 6 significant digits so dumped numbers diff cleanly.
double round6(double v);

/// Dumps with a trailing newline.
void write_json(const nlohmann::json& j, const std::filesystem::path& path);

}  // namespace north
