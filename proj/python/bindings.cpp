#include "north/analysis.hpp"
#include "north/bench.hpp"
#include "north/discrete.hpp"
#include "north/objective.hpp"
#include "north/orchestrator.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace north;

namespace {

Problem make_problem(const std::vector<double>& wcets, const std::vector<double>& periods,
                     std::optional<std::vector<std::size_t>> priorities,
                     std::optional<std::vector<double>> alpha, std::optional<std::vector<double>> beta,
                     std::optional<std::vector<double>> period_min,
                     std::optional<std::vector<double>> period_max, double cap_factor)
{
    Problem p;
    p.taskset = make_taskset(wcets, periods);
    if (priorities) p.taskset = with_priorities(p.taskset, *priorities);
    p.weights = ObjectiveWeights::uniform(wcets.size());
    if (alpha) p.weights.alpha = *alpha;
    if (beta) p.weights.beta = *beta;
    p.bounds = VariableBounds::defaults_for(p.taskset, cap_factor);
    if (period_min) p.bounds.period_min = *period_min;
    if (period_max) p.bounds.period_max = *period_max;
    if (const auto v = validate_weights(p.weights, wcets.size()); !v)
        throw std::invalid_argument(v.describe());
    return p;
}

Solution run(const Problem& p, const std::string& method, double k, std::size_t max_outer,
             double outer_rel_tol, const std::string& guard, bool boolean_oracle)
{
    auto prob = OptProblem::with_rta(p);
    if (boolean_oracle) {
        prob.oracle = as_boolean_blackbox(make_rta_oracle());
        prob.objective_oracle = make_rta_oracle();
    }
    RunConfig cfg;
    cfg.method = Method::parse(method, k);
    cfg.max_outer = max_outer;
    cfg.outer_rel_tol = outer_rel_tol;
    if (guard == "immediate") cfg.discrete_guard = DiscreteGuard::immediate;
    else if (guard == "lookahead") cfg.discrete_guard = DiscreteGuard::lookahead;
    else throw std::invalid_argument("guard must be 'immediate' or 'lookahead'");
    py::gil_scoped_release release;
    return optimize(prob, cfg);
}

}  // namespace

PYBIND11_MODULE(_north, m)
{
    m.doc() = "Period and priority optimization for fixed-priority task sets";

    py::register_exception<ObjectiveError>(m, "ObjectiveError", PyExc_ValueError);

    py::class_<Task>(m, "Task")
        .def_readonly("id", &Task::id)
        .def_readonly("wcet", &Task::wcet)
        .def_readonly("period", &Task::period)
        .def_readonly("deadline", &Task::deadline)
        .def_readonly("priority", &Task::priority)
        .def("__repr__", [](const Task& t) {
            return "Task(id=" + std::to_string(t.id) + ", wcet=" + format_number(t.wcet) +
                   ", period=" + format_number(t.period) + ", priority=" + std::to_string(t.priority) + ")";
        });

    py::class_<TaskSet>(m, "TaskSet")
        .def_readonly("tasks", &TaskSet::tasks)
        .def("__len__", &TaskSet::size)
        .def_property_readonly("periods", &TaskSet::periods)
        .def_property_readonly("wcets", &TaskSet::wcets)
        .def_property_readonly("priorities", &TaskSet::priorities)
        .def("with_periods", [](const TaskSet& ts, const std::vector<double>& t) { return with_periods(ts, t); })
        .def("with_priorities",
             [](const TaskSet& ts, const std::vector<std::size_t>& p) { return with_priorities(ts, p); });

    py::class_<ObjectiveWeights>(m, "ObjectiveWeights")
        .def_readonly("alpha", &ObjectiveWeights::alpha)
        .def_readonly("beta", &ObjectiveWeights::beta);
    py::class_<VariableBounds>(m, "VariableBounds")
        .def_readonly("period_min", &VariableBounds::period_min)
        .def_readonly("period_max", &VariableBounds::period_max);
    py::class_<Problem>(m, "Problem")
        .def_readonly("taskset", &Problem::taskset)
        .def_readonly("weights", &Problem::weights)
        .def_readonly("bounds", &Problem::bounds);

    m.def("make_problem", &make_problem, py::arg("wcets"), py::arg("periods"),
          py::arg("priorities") = py::none(), py::arg("alpha") = py::none(), py::arg("beta") = py::none(),
          py::arg("period_min") = py::none(), py::arg("period_max") = py::none(),
          py::arg("cap_factor") = 5.0,
          "Build a problem; priorities default to task order, weights to 1, bounds to [C_i, cap_factor * sum C].");

    py::class_<AnalysisVerdict>(m, "AnalysisVerdict")
        .def_readonly("schedulable", &AnalysisVerdict::schedulable)
        .def_readonly("response_times", &AnalysisVerdict::response_times)
        .def_readonly("miss_set", &AnalysisVerdict::miss_set);

    m.def("analyze", [](const TaskSet& ts) { return analyze(ts); }, py::arg("taskset"));
    m.def("simulate", [](const TaskSet& ts, std::optional<std::int64_t> horizon) { return simulate_oracle(ts, horizon); },
          py::arg("taskset"), py::arg("horizon") = py::none());
    m.def("utilization", &utilization);
    m.def("control_objective",
          [](const Problem& p) { return control_objective(p.taskset, p.weights, RtaOracle{}); }, py::arg("problem"));
    m.def("objective_gap", &objective_gap, py::arg("f_a"), py::arg("f_b"));

    m.def("assign_rm", &assign_rm);
    m.def("assign_dkc", &assign_dkc, py::arg("taskset"), py::arg("k") = 1.0);
    m.def(
        "brute_force_priorities",
        [](const Problem& p) -> py::object {
            const auto r = brute_force_priorities(p.taskset, p.weights, RtaOracle{});
            if (!r.priorities) return py::none();
            return py::make_tuple(*r.priorities, r.objective);
        },
        py::arg("problem"), "(priorities, objective) of the best order, or None if no order is schedulable.");

    py::class_<TraceEntry>(m, "TraceEntry")
        .def_readonly("iter", &TraceEntry::iter)
        .def_readonly("objective", &TraceEntry::objective)
        .def_readonly("frozen", &TraceEntry::frozen)
        .def_readonly("priorities", &TraceEntry::priorities)
        .def_readonly("oracle_calls", &TraceEntry::oracle_calls)
        .def_readonly("ms", &TraceEntry::ms);
    py::class_<Solution>(m, "Solution")
        .def_readonly("taskset", &Solution::taskset)
        .def_readonly("objective", &Solution::objective)
        .def_property_readonly("status", [](const Solution& s) { return to_string(s.status); })
        .def_readonly("trace", &Solution::trace)
        .def_readonly("frozen", &Solution::frozen);

    m.def("optimize", &run, py::arg("problem"), py::arg("method") = "north+rm", py::arg("k") = 1.0,
          py::arg("max_outer") = 50, py::arg("outer_rel_tol") = 1e-3, py::arg("guard") = "lookahead",
          py::arg("boolean_oracle") = false,
          "Optimize periods (and, for north+..., priorities). Methods: north, north+rm, north+dkc, north+bf.");

    m.def(
        "generate",
        [](std::size_t n_tasks, std::uint64_t seed, double cap_factor) {
            GenParams gp;
            gp.n_tasks = n_tasks;
            gp.seed = seed;
            gp.period_cap_factor = cap_factor;
            return generate_taskset(gp);
        },
        py::arg("n_tasks") = 20, py::arg("seed") = 0, py::arg("cap_factor") = 5.0);

    m.def(
        "benchmark",
        [](std::size_t n_sets, std::size_t n_tasks, std::uint64_t seed, const std::string& method,
           std::size_t workers) {
            GenParams gp;
            gp.n_tasks = n_tasks;
            gp.seed = seed;
            RunConfig cfg;
            cfg.method = Method::parse(method);
            cfg.seed = seed;
            BenchReport rep;
            {
                py::gil_scoped_release release;
                rep = run_benchmark(gp, n_sets, cfg, workers);
            }
            py::list gaps;
            for (const auto& r : rep.records) gaps.append(r.gap_percent);
            py::dict d;
            const auto& s = rep.summary;
            d["count"] = s.count;
            d["mean_gap"] = s.mean_gap;
            d["median_gap"] = s.median_gap;
            d["min_gap"] = s.min_gap;
            d["max_gap"] = s.max_gap;
            d["n_better"] = s.n_better;
            d["n_worse"] = s.n_worse;
            d["n_equal"] = s.n_equal;
            d["gaps"] = gaps;
            return d;
        },
        py::arg("n_sets") = 100, py::arg("n_tasks") = 20, py::arg("seed") = 0, py::arg("method") = "north+rm",
        py::arg("workers") = 0);
}
