#pragma once

#include "north/analysis.hpp"
#include "north/model.hpp"
#include "north/objective.hpp"

#include <cstdint>
#include <memory>

namespace north {

/// Optimization problem: data plus the constraint oracle and the objective.
struct OptProblem {
    Problem data;
    /// Constraint black box; may be boolean-only.
    OraclePtr oracle;
    /// Detailed analysis backing the objective. Null means `oracle`.
    OraclePtr objective_oracle;
    /// Null means control_objective.
    ObjectiveFn objective;

    static OptProblem with_rta(Problem data);
};

/// A probed design point.
struct PointEval {
    bool feasible = false;
    /// Only meaningful when feasible.
    double objective = 0.0;
    AnalysisVerdict verdict;
};

/// Evaluates design points for one optimization run and counts oracle calls.
/// Owned by that run; the counters are the only mutable state.
class Evaluator {
public:
    explicit Evaluator(const OptProblem& problem);

    PointEval evaluate(const TaskSet& ts) const;

    const OptProblem& problem() const { return *problem_; }
    const VariableBounds& bounds() const { return problem_->data.bounds; }
    const ObjectiveWeights& weights() const { return problem_->data.weights; }
    const SchedOracle& oracle() const { return *constraint_; }

    std::uint64_t oracle_calls() const;

private:
    const OptProblem* problem_;
    std::unique_ptr<CountingOracle> constraint_;
    std::unique_ptr<CountingOracle> objective_;
    bool shared_analysis_ = false;
};

}  // namespace north
