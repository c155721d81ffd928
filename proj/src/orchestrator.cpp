#include "north/orchestrator.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace north {

std::string Method::name() const
{
    if (kind == Kind::north) return "north";
    switch (policy.kind) {
    case PriorityPolicy::Kind::rm:
        return "north+rm";
    case PriorityPolicy::Kind::dkc:
        return "north+dkc";
    case PriorityPolicy::Kind::brute_force:
        return "north+bf";
    }
    return "north+?";
}

Method Method::parse(const std::string& name, double k)
{
    if (name == "north") return north();
    if (name == "north+rm") return north_plus(PriorityPolicy::rm());
    if (name == "north+dkc") return north_plus(PriorityPolicy::dkc(k));
    if (name == "north+bf") return north_plus(PriorityPolicy::brute_force());
    throw std::invalid_argument("unknown method '" + name + "' (expected north, north+rm, north+dkc)");
}

void RunConfig::validate() const
{
    if (max_outer < 1) throw std::invalid_argument("RunConfig: max_outer must be >= 1");
    if (!(outer_rel_tol > 0.0)) throw std::invalid_argument("RunConfig: outer_rel_tol must be > 0");
    if (nmbo) nmbo->validate();
}

std::string to_string(SolutionStatus s)
{
    switch (s) {
    case SolutionStatus::converged:
        return "converged";
    case SolutionStatus::max_outer:
        return "max_outer";
    case SolutionStatus::initial_infeasible:
        return "initial_infeasible";
    }
    return "unknown";
}

InitialSolution initial_solution(const OptProblem& problem, const Evaluator& eval)
{
    InitialSolution out;
    const auto& data = problem.data;
    out.state.taskset = with_periods(data.taskset, data.bounds.period_max);
    out.state.taskset = with_priorities(out.state.taskset, assign_rm(out.state.taskset));
    const auto pe = eval.evaluate(out.state.taskset);
    out.feasible = pe.feasible;
    out.state.objective_value = pe.feasible ? pe.objective : std::numeric_limits<double>::quiet_NaN();
    return out;
}

InitialSolution initial_solution(const OptProblem& problem)
{
    const Evaluator eval(problem);
    return initial_solution(problem, eval);
}

namespace {

using Clock = std::chrono::steady_clock;

double elapsed_ms(Clock::time_point since)
{
    return std::chrono::duration<double, std::milli>(Clock::now() - since).count();
}

bool all_frozen(const OptState& s)
{
    return s.frozen.size() >= s.taskset.size();
}

enum class RoundResult { moved, eliminated, exhausted };

/// One descent run followed by one variable-elimination round.
RoundResult continuous_round(OptState& state, const Evaluator& eval, const NmboConfig& nmbo,
                             const RunConfig& cfg, const IterateObserver& observer)
{
    auto run = nmbo_run(state, eval, nmbo, observer);
    state = std::move(run.state);
    if (all_frozen(state) || !run.last_infeasible) return RoundResult::exhausted;

    const auto budget = cfg.subspace_budget.value_or(default_subspace_budget(state.taskset.size()));
    auto ve = subspace_search(state, *run.last_infeasible, eval, budget);
    if (ve.kind != VeKind::found_direction) ve = eliminate_missing(state, *run.last_infeasible, eval);
    if (ve.kind == VeKind::exhausted) return RoundResult::exhausted;
    state = reformulate(state, ve, eval);
    if (ve.kind == VeKind::found_direction) {
        if (observer) observer(state);
        return RoundResult::moved;
    }
    return RoundResult::eliminated;
}

/// The policy's order at the current periods, if it differs from the current
/// order and keeps the system schedulable.
std::optional<OptState> reordered_state(const OptState& state, const PriorityPolicy& policy,
                                        const Evaluator& eval, const OptProblem& problem)
{
    const SchedOracle& detail = problem.objective_oracle ? *problem.objective_oracle : *problem.oracle;
    const auto proposed = policy.assign(state.taskset, &problem.data.weights, &detail);
    if (proposed == state.taskset.priorities()) return std::nullopt;
    OptState next = state;
    next.taskset = with_priorities(state.taskset, proposed);
    const auto pe = eval.evaluate(next.taskset);
    if (!pe.feasible) return std::nullopt;
    next.objective_value = pe.objective;
    return next;
}

struct OuterResult {
    bool reordered = false;
    RoundResult round = RoundResult::exhausted;
};

/// One outer iteration: discrete step, then one continuous round.
OuterResult outer_iteration(OptState& state, const Evaluator& eval, const NmboConfig& nmbo,
                            const RunConfig& cfg, const OptProblem& problem)
{
    OuterResult out;
    std::optional<OptState> candidate;
    if (cfg.method.kind == Method::Kind::north_plus)
        candidate = reordered_state(state, cfg.method.policy, eval, problem);
    if (!candidate) {
        out.round = continuous_round(state, eval, nmbo, cfg, cfg.observer);
        return out;
    }

    if (cfg.discrete_guard == DiscreteGuard::immediate) {
        out.reordered = candidate->objective_value <= state.objective_value;
        if (out.reordered) {
            state = std::move(*candidate);
            if (cfg.observer) cfg.observer(state);
        }
        out.round = continuous_round(state, eval, nmbo, cfg, cfg.observer);
        return out;
    }

    // Lookahead: run the continuous round under both orders and keep the
    // better end point. Iterates are buffered so the observer only sees the
    // path that is kept.
    std::vector<OptState> kept_path, new_path;
    auto record = [&](std::vector<OptState>& path) -> IterateObserver {
        if (!cfg.observer) return {};
        return [&path](const OptState& s) { path.push_back(s); };
    };
    OptState kept = state;
    const auto kept_round = continuous_round(kept, eval, nmbo, cfg, record(kept_path));
    new_path.push_back(*candidate);
    const auto new_round = continuous_round(*candidate, eval, nmbo, cfg, record(new_path));

    out.reordered = candidate->objective_value < kept.objective_value;
    out.round = out.reordered ? new_round : kept_round;
    // Points of the new path that sit above the incumbent were explored but
    // never held as the current solution.
    double incumbent = state.objective_value;
    state = out.reordered ? std::move(*candidate) : std::move(kept);
    if (cfg.observer)
        for (const auto& s : out.reordered ? new_path : kept_path) {
            if (s.objective_value > incumbent) continue;
            incumbent = s.objective_value;
            cfg.observer(s);
        }
    return out;
}

}  // namespace

Solution optimize(const OptProblem& problem, const RunConfig& cfg)
{
    cfg.validate();
    // Period/bound consistency is not checked here: a start point the oracle
    // rejects is reported as initial_infeasible instead.
    const auto& data = problem.data;
    const auto n = data.taskset.size();
    if (n == 0) throw std::invalid_argument("optimize: empty task set");
    if (data.bounds.period_min.size() != n || data.bounds.period_max.size() != n)
        throw std::invalid_argument("optimize: bounds length differs from task count");
    if (const auto w = validate_weights(data.weights, n); !w)
        throw std::invalid_argument("optimize: invalid weights: " + w.describe());
    for (std::size_t i = 0; i < n; ++i)
        if (data.taskset[i].id != i || !(data.taskset[i].wcet > 0.0))
            throw std::invalid_argument("optimize: task ids must be 0..N-1 with positive wcet");

    const Evaluator eval(problem);
    const NmboConfig nmbo = cfg.nmbo.value_or(NmboConfig::defaults_for(problem.data.bounds));

    Solution sol;
    auto t0 = Clock::now();
    auto init = initial_solution(problem, eval);
    sol.taskset = init.state.taskset;
    if (!init.feasible) {
        sol.status = SolutionStatus::initial_infeasible;
        sol.objective = std::numeric_limits<double>::quiet_NaN();
        return sol;
    }

    OptState state = std::move(init.state);
    std::uint64_t calls_before = eval.oracle_calls();
    sol.trace.push_back({0, state.objective_value, 0, state.taskset.priorities(), calls_before,
                         elapsed_ms(t0)});

    sol.status = SolutionStatus::max_outer;
    for (std::size_t outer = 1; outer <= cfg.max_outer; ++outer) {
        t0 = Clock::now();
        const double f_before = state.objective_value;
        state.outer_iter = outer;

        const auto step = outer_iteration(state, eval, nmbo, cfg, problem);

        const auto calls = eval.oracle_calls();
        sol.trace.push_back({outer, state.objective_value, state.frozen.size(),
                             state.taskset.priorities(), calls - calls_before, elapsed_ms(t0)});
        calls_before = calls;

        const double rel = (f_before - state.objective_value) / std::abs(f_before);
        const bool stalled = rel < cfg.outer_rel_tol && !step.reordered &&
                             step.round == RoundResult::exhausted;
        if (all_frozen(state) || stalled) {
            sol.status = SolutionStatus::converged;
            break;
        }
    }

    sol.taskset = state.taskset;
    sol.objective = state.objective_value;
    sol.frozen = state.frozen;
    return sol;
}

Solution run_north_baseline(const OptProblem& problem, RunConfig cfg)
{
    cfg.method = Method::north();
    return optimize(problem, cfg);
}

}  // namespace north
