#pragma once

#include "north/analysis.hpp"
#include "north/model.hpp"

#include <functional>
#include <stdexcept>

namespace north {

/// Raised when an objective is evaluated where it is undefined: at an
/// unschedulable point, or with an oracle that hides response times.
class ObjectiveError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// F(x): maps a task set to a scalar design objective. The oracle is passed
/// in so objective and constraint always come from the same analysis.
using ObjectiveFn =
    std::function<double(const TaskSet&, const ObjectiveWeights&, const SchedOracle&)>;

/// sum_i alpha_i * T_i + beta_i * r_i(T, P)
double control_objective(const TaskSet& ts, const ObjectiveWeights& w, const SchedOracle& oracle);

/// Same sum from an already computed detailed verdict. Throws ObjectiveError
/// if the verdict is unschedulable or lacks response times.
double control_objective(const TaskSet& ts, const ObjectiveWeights& w, const AnalysisVerdict& v);

/// (f_a - f_b) / f_b * 100. Negative means `f_a` is better (lower).
double objective_gap(double f_a, double f_b);

}  // namespace north
