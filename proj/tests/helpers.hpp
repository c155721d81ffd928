#pragma once

#include "north/evaluator.hpp"
#include "north/model.hpp"

#include <vector>

namespace north::testing {

inline Problem problem_of(std::vector<double> c, std::vector<double> t,
                          std::vector<std::size_t> prio = {}, double cap_factor = 5.0)
{
    Problem p;
    p.taskset = make_taskset(c, t);
    if (!prio.empty()) p.taskset = with_priorities(p.taskset, prio);
    p.weights = ObjectiveWeights::uniform(c.size());
    p.bounds = VariableBounds::defaults_for(p.taskset, cap_factor);
    return p;
}

}  // namespace north::testing
