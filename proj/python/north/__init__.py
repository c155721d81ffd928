"""Period and priority optimization for fixed-priority real-time task sets."""

from ._north import (
    AnalysisVerdict,
    ObjectiveError,
    Problem,
    Solution,
    Task,
    TaskSet,
    analyze,
    assign_dkc,
    assign_rm,
    benchmark,
    brute_force_priorities,
    control_objective,
    generate,
    make_problem,
    objective_gap,
    optimize,
    simulate,
    utilization,
)

__all__ = [
    "AnalysisVerdict",
    "ObjectiveError",
    "Problem",
    "Solution",
    "Task",
    "TaskSet",
    "analyze",
    "assign_dkc",
    "assign_rm",
    "benchmark",
    "brute_force_priorities",
    "control_objective",
    "generate",
    "make_problem",
    "objective_gap",
    "optimize",
    "simulate",
    "utilization",
]
