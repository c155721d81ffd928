#include "north/evaluator.hpp"

#include <stdexcept>

namespace north {

OptProblem OptProblem::with_rta(Problem data)
{
    OptProblem p;
    p.data = std::move(data);
    p.oracle = make_rta_oracle();
    return p;
}

Evaluator::Evaluator(const OptProblem& problem) : problem_(&problem)
{
    if (!problem.oracle) throw std::invalid_argument("OptProblem has no oracle");
    const SchedOracle& obj = problem.objective_oracle ? *problem.objective_oracle : *problem.oracle;
    constraint_ = std::make_unique<CountingOracle>(*problem.oracle);
    objective_ = std::make_unique<CountingOracle>(obj);
    // The default objective can reuse the constraint verdict when that
    // verdict carries response times from the same analysis.
    shared_analysis_ = !problem.objective && problem.oracle->provides_details() &&
                       (!problem.objective_oracle || problem.objective_oracle == problem.oracle);
}

PointEval Evaluator::evaluate(const TaskSet& ts) const
{
    PointEval pe;
    pe.verdict = constraint_->query(ts);
    pe.feasible = pe.verdict.schedulable;
    if (!pe.feasible) return pe;
    if (shared_analysis_) {
        pe.objective = control_objective(ts, weights(), pe.verdict);
    } else if (problem_->objective) {
        pe.objective = problem_->objective(ts, weights(), *objective_);
    } else {
        pe.objective = control_objective(ts, weights(), *objective_);
    }
    return pe;
}

std::uint64_t Evaluator::oracle_calls() const
{
    return constraint_->calls() + objective_->calls();
}

}  // namespace north
