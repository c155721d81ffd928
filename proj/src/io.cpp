#include "north/io.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>

namespace north {

using nlohmann::json;

namespace {

const json& require(const json& obj, const std::string& key, const std::string& where)
{
    if (!obj.is_object() || !obj.contains(key))
        throw FormatError("missing field '" + where + key + "'");
    return obj.at(key);
}

double number_at(const json& obj, const std::string& key, const std::string& where)
{
    const auto& v = require(obj, key, where);
    if (!v.is_number()) throw FormatError("field '" + where + key + "' must be a number");
    return v.get<double>();
}

std::size_t index_at(const json& obj, const std::string& key, const std::string& where)
{
    const auto& v = require(obj, key, where);
    if (!v.is_number_integer() || v.get<long long>() < 0)
        throw FormatError("field '" + where + key + "' must be a non-negative integer");
    return v.get<std::size_t>();
}

std::vector<double> number_array(const json& obj, const std::string& key, std::size_t n)
{
    const auto& v = obj.at(key);
    if (!v.is_array()) throw FormatError("field '" + key + "' must be an array");
    if (v.size() != n)
        throw FormatError("field '" + key + "' has " + std::to_string(v.size()) +
                          " entries, expected " + std::to_string(n));
    std::vector<double> out;
    for (std::size_t i = 0; i < n; ++i) {
        if (!v[i].is_number())
            throw FormatError("field '" + key + "[" + std::to_string(i) + "]' must be a number");
        out.push_back(v[i].get<double>());
    }
    return out;
}

json taskset_json(const TaskSet& ts)
{
    json tasks = json::array();
    for (const auto& t : ts.tasks)
        tasks.push_back({{"id", t.id},
                         {"wcet", t.wcet},
                         {"period", t.period},
                         {"deadline", t.deadline},
                         {"priority", t.priority}});
    return tasks;
}

}  // namespace

Problem problem_from_json(const json& j)
{
    if (!j.is_object()) throw FormatError("task-set file must hold a JSON object");
    const auto& tasks = require(j, "tasks", "");
    if (!tasks.is_array() || tasks.empty()) throw FormatError("field 'tasks' must be a non-empty array");

    Problem p;
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        const auto where = "tasks[" + std::to_string(i) + "].";
        const auto& t = tasks[i];
        if (!t.is_object()) throw FormatError("field 'tasks[" + std::to_string(i) + "]' must be an object");
        Task task;
        task.id = index_at(t, "id", where);
        task.wcet = number_at(t, "wcet", where);
        task.period = number_at(t, "period", where);
        task.deadline = t.contains("deadline") ? number_at(t, "deadline", where) : task.period;
        task.priority = index_at(t, "priority", where);
        p.taskset.tasks.push_back(task);
    }

    const auto n = p.taskset.size();
    p.weights = ObjectiveWeights::uniform(n);
    if (j.contains("alpha")) p.weights.alpha = number_array(j, "alpha", n);
    if (j.contains("beta")) p.weights.beta = number_array(j, "beta", n);
    p.bounds = VariableBounds::defaults_for(p.taskset);
    if (j.contains("period_min")) p.bounds.period_min = number_array(j, "period_min", n);
    if (j.contains("period_max")) p.bounds.period_max = number_array(j, "period_max", n);
    return p;
}

json problem_to_json(const Problem& p)
{
    return {{"tasks", taskset_json(p.taskset)},
            {"alpha", p.weights.alpha},
            {"beta", p.weights.beta},
            {"period_min", p.bounds.period_min},
            {"period_max", p.bounds.period_max}};
}

Problem load_problem(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) throw FormatError("cannot open '" + path.string() + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::parse_error& e) {
        throw FormatError("'" + path.string() + "' is not valid JSON: " + e.what());
    }
    return problem_from_json(j);
}

void write_json(const json& j, const std::filesystem::path& path)
{
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
    out << j.dump(2) << '\n';
}

void save_problem(const Problem& p, const std::filesystem::path& path)
{
    write_json(problem_to_json(p), path);
}

double round6(double v)
{
    if (!std::isfinite(v)) return v;
    return std::strtod(format_number(v).c_str(), nullptr);
}

json solution_to_json(const Solution& s, const Problem& data)
{
    Problem out = data;
    out.taskset = s.taskset;
    json trace = json::array();
    for (const auto& e : s.trace)
        trace.push_back({{"iter", e.iter},
                         {"objective", round6(e.objective)},
                         {"frozen", e.frozen},
                         {"priorities", e.priorities},
                         {"oracle_calls", e.oracle_calls},
                         {"ms", round6(e.ms)}});
    json j = {{"objective", std::isfinite(s.objective) ? json(round6(s.objective)) : json(nullptr)},
              {"status", to_string(s.status)},
              {"taskset", problem_to_json(out)},
              {"trace", trace}};
    return j;
}

json summary_to_json(const BenchReport& r)
{
    const auto& s = r.summary;
    json bins = json::array();
    for (std::size_t b = 0; b < kGapBinEdges.size(); ++b) {
        const bool last = b + 1 == kGapBinEdges.size();
        bins.push_back({{"lo", kGapBinEdges[b]},
                        {"hi", last ? json("inf") : json(kGapBinEdges[b + 1])},
                        {"count", s.histogram[b]}});
    }
    const auto& p = r.params;
    const auto& c = r.nmbo_defaults;
    return {
        {"count", s.count},
        {"excluded", s.excluded},
        {"gap_percent",
         {{"mean", round6(s.mean_gap)},
          {"median", round6(s.median_gap)},
          {"min", round6(s.min_gap)},
          {"max", round6(s.max_gap)},
          {"n_better", s.n_better},
          {"n_worse", s.n_worse},
          {"n_equal", s.n_equal},
          {"histogram", bins}}},
        {"runtime_ms", {{"mean_north", round6(s.mean_t_north_ms)}, {"mean_plus", round6(s.mean_t_plus_ms)}}},
        {"metadata",
         {{"rng", Rng::kName},
          {"seed", p.seed},
          {"seed_rule", "set seed = base seed + set index"},
          {"n_sets", r.n_sets},
          {"n_tasks", p.n_tasks},
          {"wcet_range", {p.wcet_min, p.wcet_max}},
          {"period_cap_factor", p.period_cap_factor},
          {"alpha_range", {p.alpha_min, p.alpha_max}},
          {"beta_range", {p.beta_min, p.beta_max}},
          {"weight_distribution", "uniform real"},
          {"methods", {"north", r.plus_method}},
          {"max_outer", r.max_outer},
          {"outer_rel_tol", r.outer_rel_tol},
          {"discrete_guard", r.discrete_guard == DiscreteGuard::lookahead ? "lookahead" : "immediate"},
          {"nmbo_first_set",
           {{"gradient", c.gradient == GradientMode::downhill ? "downhill" : "central"},
            {"step_threshold", round6(c.step_threshold)},
            {"fd_step", round6(c.fd_step)},
            {"backtrack_factor", c.backtrack_factor},
            {"max_backtracks", c.max_backtracks},
            {"initial_trust_radius", round6(c.initial_trust_radius)},
            {"max_trust_radius", round6(c.max_trust_radius)},
            {"max_iterations", c.max_iterations}}}}},
    };
}

}  // namespace north
