#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace north {

/// One periodic task. Deadlines are implicit, so `deadline` tracks `period`
/// whenever the period is updated through apply_assignment().
struct Task {
    std::size_t id = 0;
    double wcet = 1.0;
    double period = 1.0;
    double deadline = 1.0;
    /// Rank in 0..N-1; rank 0 is the highest priority.
    std::size_t priority = 0;

    friend bool operator==(const Task&, const Task&) = default;
};

struct TaskSet {
    std::vector<Task> tasks;

    std::size_t size() const { return tasks.size(); }
    bool empty() const { return tasks.empty(); }
    const Task& operator[](std::size_t i) const { return tasks[i]; }
    Task& operator[](std::size_t i) { return tasks[i]; }

    std::vector<double> periods() const;
    std::vector<double> wcets() const;
    std::vector<std::size_t> priorities() const;

    friend bool operator==(const TaskSet&, const TaskSet&) = default;
};

struct VariableBounds {
    std::vector<double> period_min;
    std::vector<double> period_max;

    /// period_min = C_i, period_max = factor * sum(C).
    static VariableBounds defaults_for(const TaskSet& ts, double cap_factor = 5.0);

    friend bool operator==(const VariableBounds&, const VariableBounds&) = default;
};

struct ObjectiveWeights {
    std::vector<double> alpha;
    std::vector<double> beta;

    static ObjectiveWeights uniform(std::size_t n, double alpha = 1.0, double beta = 1.0);

    friend bool operator==(const ObjectiveWeights&, const ObjectiveWeights&) = default;
};

/// Everything a task-set file carries: tasks, weights and bounds.
struct Problem {
    TaskSet taskset;
    ObjectiveWeights weights;
    VariableBounds bounds;
};

struct Violation {
    /// Task the violation refers to; npos for set-level violations.
    std::size_t task = npos;
    std::string reason;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

struct ValidationResult {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }
    explicit operator bool() const { return ok(); }
    std::string describe() const;
};

/// Builds a task set with implicit deadlines and priorities 0..N-1 in id order.
TaskSet make_taskset(std::span<const double> wcets, std::span<const double> periods);

/// True iff `ranks` is a permutation of 0..N-1.
bool is_permutation_of_ranks(std::span<const std::size_t> ranks);

ValidationResult validate_taskset(const TaskSet& ts, const VariableBounds& bounds);
ValidationResult validate_taskset(const TaskSet& ts);
ValidationResult validate_weights(const ObjectiveWeights& w, std::size_t n);
ValidationResult validate_problem(const Problem& p);

double utilization(const TaskSet& ts);

/// Returns a copy of `ts` with the given periods (and deadlines) and
/// priorities. Throws std::invalid_argument on length mismatch, periods
/// outside `bounds`, or a non-permutation.
TaskSet apply_assignment(const TaskSet& ts, std::span<const double> periods,
                         std::span<const std::size_t> priorities, const VariableBounds& bounds);

/// Period-only update with priorities unchanged.
TaskSet with_periods(const TaskSet& ts, std::span<const double> periods);

/// Priority-only update with periods unchanged.
TaskSet with_priorities(const TaskSet& ts, std::span<const std::size_t> priorities);

}  // namespace north
