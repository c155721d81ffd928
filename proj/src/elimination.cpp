#include "north/elimination.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace north {

std::size_t default_subspace_budget(std::size_t n_tasks)
{
    return 2 * n_tasks;
}

namespace {

TaskSet stepped(const OptState& state, const std::vector<double>& delta)
{
    auto periods = state.taskset.periods();
    for (std::size_t i = 0; i < periods.size(); ++i) periods[i] += delta[i];
    return with_periods(state.taskset, periods);
}

bool within_bounds(const TaskSet& ts, const VariableBounds& b)
{
    for (std::size_t i = 0; i < ts.size(); ++i)
        if (ts[i].period < b.period_min[i] || ts[i].period > b.period_max[i]) return false;
    return true;
}

bool is_zero(const std::vector<double>& v)
{
    return std::all_of(v.begin(), v.end(), [](double e) { return e == 0.0; });
}

}  // namespace

VeOutcome subspace_search(const OptState& state, const Trial& last, const Evaluator& eval,
                          std::size_t budget)
{
    VeOutcome out;
    const auto n = state.taskset.size();
    if (last.delta.size() != n) throw std::invalid_argument("subspace_search: delta length mismatch");

    std::vector<double> base = last.delta;
    for (std::size_t i = 0; i < n; ++i)
        if (state.frozen.contains(state.taskset[i].id)) base[i] = 0.0;
    if (is_zero(base) || budget == 0) return out;

    std::vector<std::vector<double>> candidates;
    for (std::size_t k = 0; k < n; ++k) {
        if (base[k] == 0.0) continue;
        auto c = base;
        c[k] = 0.0;
        if (!is_zero(c)) candidates.push_back(std::move(c));
    }
    if (last.verdict.miss_set && !last.verdict.miss_set->empty()) {
        auto c = base;
        for (auto id : *last.verdict.miss_set)
            for (std::size_t i = 0; i < n; ++i)
                if (state.taskset[i].id == id) c[i] = 0.0;
        const bool duplicate = std::find(candidates.begin(), candidates.end(), c) != candidates.end();
        if (!is_zero(c) && c != base && !duplicate) candidates.push_back(std::move(c));
    }

    std::size_t spent = 0;
    for (const auto& c : candidates) {
        if (spent >= budget) break;
        const auto ts = stepped(state, c);
        if (!within_bounds(ts, eval.bounds())) continue;
        ++spent;
        const auto pe = eval.evaluate(ts);
        if (pe.feasible && pe.objective < state.objective_value - 1e-9) {
            out.kind = VeKind::found_direction;
            out.direction = c;
            return out;
        }
    }
    return out;
}

VeOutcome eliminate_missing(const OptState& state, const Trial& last, const Evaluator& eval)
{
    VeOutcome out;
    const auto n = state.taskset.size();
    const auto free = state.free_indices();

    if (last.verdict.miss_set) {
        for (auto id : *last.verdict.miss_set)
            if (!state.frozen.contains(id)) out.newly_frozen.insert(id);
    } else {
        if (last.delta.size() != n)
            throw std::invalid_argument("eliminate_missing: delta length mismatch");
        std::size_t largest = n;
        double largest_step = 0.0;
        for (auto k : free) {
            if (last.delta[k] == 0.0) continue;
            if (std::abs(last.delta[k]) > largest_step) {
                largest_step = std::abs(last.delta[k]);
                largest = k;
            }
            std::vector<double> solo(n, 0.0);
            solo[k] = last.delta[k];
            if (!eval.evaluate(stepped(state, solo)).feasible)
                out.newly_frozen.insert(state.taskset[k].id);
        }
        if (out.newly_frozen.empty() && largest < n) out.newly_frozen.insert(state.taskset[largest].id);
    }

    out.kind = out.newly_frozen.empty() ? VeKind::exhausted : VeKind::eliminated;
    return out;
}

OptState reformulate(const OptState& state, const VeOutcome& outcome, const Evaluator& eval)
{
    OptState next = state;
    switch (outcome.kind) {
    case VeKind::exhausted:
        throw std::invalid_argument("reformulate: nothing to apply for an exhausted outcome");
    case VeKind::eliminated:
        next.frozen.insert(outcome.newly_frozen.begin(), outcome.newly_frozen.end());
        return next;
    case VeKind::found_direction: {
        if (!outcome.direction) throw std::invalid_argument("reformulate: missing direction");
        const auto& d = *outcome.direction;
        for (std::size_t i = 0; i < d.size(); ++i)
            if (d[i] != 0.0 && state.frozen.contains(state.taskset[i].id))
                throw std::invalid_argument("reformulate: direction moves a frozen period");
        next.taskset = stepped(state, d);
        const auto pe = eval.evaluate(next.taskset);
        if (!pe.feasible) throw std::logic_error("reformulate: direction leads to an infeasible point");
        next.objective_value = pe.objective;
        return next;
    }
    }
    return next;
}

}  // namespace north
