#pragma once

#include "north/discrete.hpp"
#include "north/elimination.hpp"
#include "north/evaluator.hpp"
#include "north/nmbo.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace north {

/// NORTH optimizes periods only; NORTH+ also re-assigns priorities with a
/// heuristic at the start of every outer iteration.
struct Method {
    enum class Kind { north, north_plus };

    Kind kind = Kind::north;
    PriorityPolicy policy = PriorityPolicy::rm();

    static Method north() { return {Kind::north, PriorityPolicy::rm()}; }
    static Method north_plus(PriorityPolicy p = PriorityPolicy::rm()) { return {Kind::north_plus, p}; }

    /// "north", "north+rm", "north+dkc", "north+bf"
    std::string name() const;
    /// Inverse of name(); dkc uses `k`. Throws std::invalid_argument.
    static Method parse(const std::string& name, double k = 1.0);
};

/// When a re-assigned priority order is kept.
enum class DiscreteGuard {
    /// Schedulable and F not higher at the current periods.
    immediate,
    /// Schedulable, and the period optimization that follows ends lower than
    /// it does under the old order.
    lookahead,
};

struct RunConfig {
    /// Empty means NmboConfig::defaults_for(problem bounds).
    std::optional<NmboConfig> nmbo;
    std::size_t max_outer = 50;
    double outer_rel_tol = 1e-3;
    /// Recorded for reproducibility; the optimizer itself draws no randomness.
    std::uint64_t seed = 0;
    Method method = Method::north_plus();
    DiscreteGuard discrete_guard = DiscreteGuard::lookahead;
    /// Empty means default_subspace_budget(N).
    std::optional<std::size_t> subspace_budget;
    /// Sees every iterate that becomes the current solution, including
    /// adopted priority changes. Under the lookahead guard the points a
    /// reordered run passes through above the old objective are skipped.
    IterateObserver observer;

    void validate() const;
};

enum class SolutionStatus { converged, max_outer, initial_infeasible };

std::string to_string(SolutionStatus s);

struct TraceEntry {
    /// 0 is the initial point.
    std::size_t iter = 0;
    double objective = 0.0;
    std::size_t frozen = 0;
    Permutation priorities;
    /// Oracle calls spent in this iteration.
    std::uint64_t oracle_calls = 0;
    double ms = 0.0;
};

struct Solution {
    TaskSet taskset;
    /// NaN when the initial point is infeasible.
    double objective = 0.0;
    SolutionStatus status = SolutionStatus::converged;
    std::vector<TraceEntry> trace;
    std::set<std::size_t> frozen;

    std::size_t outer_iterations() const { return trace.empty() ? 0 : trace.size() - 1; }
};

struct InitialSolution {
    OptState state;
    bool feasible = false;
};

/// Periods at their upper bounds, priorities by rate monotonic, checked with
/// the oracle.
InitialSolution initial_solution(const OptProblem& problem, const Evaluator& eval);
InitialSolution initial_solution(const OptProblem& problem);

/// Coordinate descent over the two variable blocks.
Solution optimize(const OptProblem& problem, const RunConfig& cfg);

/// optimize() with Method::north().
Solution run_north_baseline(const OptProblem& problem, RunConfig cfg);

}  // namespace north
