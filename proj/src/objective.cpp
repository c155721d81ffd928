#include "north/objective.hpp"

#include <cmath>

namespace north {

double control_objective(const TaskSet& ts, const ObjectiveWeights& w, const AnalysisVerdict& v)
{
    if (!v.response_times) throw ObjectiveError("control objective needs per-task response times");
    if (!v.schedulable) throw ObjectiveError("control objective evaluated at an unschedulable point");
    const auto& r = *v.response_times;
    const auto n = ts.size();
    if (r.size() != n || w.alpha.size() != n || w.beta.size() != n)
        throw std::invalid_argument("control_objective: length mismatch");
    double f = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(r[i])) throw ObjectiveError("response time diverged");
        f += w.alpha[i] * ts[i].period + w.beta[i] * r[i];
    }
    return f;
}

double control_objective(const TaskSet& ts, const ObjectiveWeights& w, const SchedOracle& oracle)
{
    if (!oracle.provides_details())
        throw ObjectiveError("control objective needs an oracle with response times, got " +
                             oracle.name());
    return control_objective(ts, w, oracle.query(ts));
}

double objective_gap(double f_a, double f_b)
{
    if (f_b == 0.0) throw std::domain_error("objective_gap: reference objective is zero");
    return (f_a - f_b) / f_b * 100.0;
}

}  // namespace north
