#include "north/model.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace north {

std::vector<double> TaskSet::periods() const
{
    std::vector<double> out;
    out.reserve(tasks.size());
    for (const auto& t : tasks) out.push_back(t.period);
    return out;
}

std::vector<double> TaskSet::wcets() const
{
    std::vector<double> out;
    out.reserve(tasks.size());
    for (const auto& t : tasks) out.push_back(t.wcet);
    return out;
}

std::vector<std::size_t> TaskSet::priorities() const
{
    std::vector<std::size_t> out;
    out.reserve(tasks.size());
    for (const auto& t : tasks) out.push_back(t.priority);
    return out;
}

VariableBounds VariableBounds::defaults_for(const TaskSet& ts, double cap_factor)
{
    double total = 0.0;
    for (const auto& t : ts.tasks) total += t.wcet;
    VariableBounds b;
    for (const auto& t : ts.tasks) {
        b.period_min.push_back(t.wcet);
        b.period_max.push_back(cap_factor * total);
    }
    return b;
}

ObjectiveWeights ObjectiveWeights::uniform(std::size_t n, double alpha, double beta)
{
    return {std::vector<double>(n, alpha), std::vector<double>(n, beta)};
}

std::string ValidationResult::describe() const
{
    std::ostringstream os;
    for (std::size_t k = 0; k < violations.size(); ++k) {
        if (k) os << "; ";
        os << violations[k].reason;
    }
    return os.str();
}

TaskSet make_taskset(std::span<const double> wcets, std::span<const double> periods)
{
    if (wcets.size() != periods.size())
        throw std::invalid_argument("make_taskset: wcet and period lengths differ");
    TaskSet ts;
    for (std::size_t i = 0; i < wcets.size(); ++i)
        ts.tasks.push_back({i, wcets[i], periods[i], periods[i], i});
    return ts;
}

bool is_permutation_of_ranks(std::span<const std::size_t> ranks)
{
    std::vector<bool> seen(ranks.size(), false);
    for (auto r : ranks) {
        if (r >= ranks.size() || seen[r]) return false;
        seen[r] = true;
    }
    return true;
}

namespace {

std::string task_msg(const std::string& what, std::size_t id)
{
    return what + " for task " + std::to_string(id);
}

}  // namespace

ValidationResult validate_taskset(const TaskSet& ts)
{
    ValidationResult res;
    auto& v = res.violations;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const auto& t = ts[i];
        if (t.id != i) v.push_back({i, "task ids not unique and contiguous (expected " +
                                           std::to_string(i) + ", got " + std::to_string(t.id) + ")"});
        if (!(t.wcet > 0.0)) v.push_back({t.id, task_msg("wcet <= 0", t.id)});
        if (!(t.deadline > 0.0)) v.push_back({t.id, task_msg("deadline <= 0", t.id)});
        if (t.period < t.wcet) v.push_back({t.id, task_msg("period < wcet", t.id)});
        if (t.deadline != t.period)
            v.push_back({t.id, task_msg("deadline != period (implicit deadline)", t.id)});
    }
    const auto prio = ts.priorities();
    if (!is_permutation_of_ranks(prio)) v.push_back({Violation::npos, "priorities not a permutation"});
    return res;
}

ValidationResult validate_taskset(const TaskSet& ts, const VariableBounds& bounds)
{
    auto res = validate_taskset(ts);
    auto& v = res.violations;
    const auto n = ts.size();
    if (bounds.period_min.size() != n || bounds.period_max.size() != n) {
        v.push_back({Violation::npos, "bounds length differs from task count"});
        return res;
    }
    for (std::size_t i = 0; i < n; ++i) {
        const auto& t = ts[i];
        if (bounds.period_min[i] > bounds.period_max[i])
            v.push_back({t.id, task_msg("period_min > period_max", t.id)});
        if (bounds.period_min[i] < t.wcet) v.push_back({t.id, task_msg("period_min < wcet", t.id)});
        if (t.period < bounds.period_min[i]) v.push_back({t.id, task_msg("period < period_min", t.id)});
        if (t.period > bounds.period_max[i]) v.push_back({t.id, task_msg("period > period_max", t.id)});
    }
    return res;
}

ValidationResult validate_weights(const ObjectiveWeights& w, std::size_t n)
{
    ValidationResult res;
    if (w.alpha.size() != n || w.beta.size() != n) {
        res.violations.push_back({Violation::npos, "weights length differs from task count"});
        return res;
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (!(w.alpha[i] > 0.0)) res.violations.push_back({i, task_msg("alpha <= 0", i)});
        if (!(w.beta[i] > 0.0)) res.violations.push_back({i, task_msg("beta <= 0", i)});
    }
    return res;
}

ValidationResult validate_problem(const Problem& p)
{
    auto res = validate_taskset(p.taskset, p.bounds);
    auto w = validate_weights(p.weights, p.taskset.size());
    res.violations.insert(res.violations.end(), w.violations.begin(), w.violations.end());
    return res;
}

double utilization(const TaskSet& ts)
{
    double u = 0.0;
    for (const auto& t : ts.tasks) u += t.wcet / t.period;
    return u;
}

TaskSet apply_assignment(const TaskSet& ts, std::span<const double> periods,
                         std::span<const std::size_t> priorities, const VariableBounds& bounds)
{
    const auto n = ts.size();
    if (periods.size() != n || priorities.size() != n)
        throw std::invalid_argument("apply_assignment: assignment length differs from task count");
    if (bounds.period_min.size() != n || bounds.period_max.size() != n)
        throw std::invalid_argument("apply_assignment: bounds length differs from task count");
    if (!is_permutation_of_ranks(priorities))
        throw std::invalid_argument("apply_assignment: priorities not a permutation");
    for (std::size_t i = 0; i < n; ++i) {
        if (periods[i] < bounds.period_min[i] || periods[i] > bounds.period_max[i])
            throw std::invalid_argument("apply_assignment: period out of bounds for task " +
                                        std::to_string(ts[i].id));
    }
    TaskSet out = ts;
    for (std::size_t i = 0; i < n; ++i) {
        out[i].period = periods[i];
        out[i].deadline = periods[i];
        out[i].priority = priorities[i];
    }
    return out;
}

TaskSet with_periods(const TaskSet& ts, std::span<const double> periods)
{
    if (periods.size() != ts.size())
        throw std::invalid_argument("with_periods: length differs from task count");
    TaskSet out = ts;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        out[i].period = periods[i];
        out[i].deadline = periods[i];
    }
    return out;
}

TaskSet with_priorities(const TaskSet& ts, std::span<const std::size_t> priorities)
{
    if (priorities.size() != ts.size())
        throw std::invalid_argument("with_priorities: length differs from task count");
    if (!is_permutation_of_ranks(priorities))
        throw std::invalid_argument("with_priorities: priorities not a permutation");
    TaskSet out = ts;
    for (std::size_t i = 0; i < ts.size(); ++i) out[i].priority = priorities[i];
    return out;
}

}  // namespace north
