#pragma once

#include "north/analysis.hpp"
#include "north/model.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace north {

using Permutation = std::vector<std::size_t>;

/// Rate monotonic: shorter period gets a lower rank (higher priority); ties
/// go to the lower task id.
Permutation assign_rm(const TaskSet& ts);

/// Orders by D_i - k * C_i ascending, ties by task id. k = 0 is deadline
/// monotonic.
Permutation assign_dkc(const TaskSet& ts, double k);

inline constexpr std::size_t kBruteForceMaxTasks = 9;

struct BruteForceResult {
    /// Nullopt when no priority order is schedulable.
    std::optional<Permutation> priorities;
    double objective = 0.0;
};

/// Tries all N! priority orders (N <= 9) in lexicographic order and returns
/// the schedulable one with the lowest control objective; the first one wins
/// ties. Throws std::invalid_argument above the size guard.
BruteForceResult brute_force_priorities(const TaskSet& ts, const ObjectiveWeights& w,
                                        const SchedOracle& oracle);

struct PriorityPolicy {
    enum class Kind { rm, dkc, brute_force };

    Kind kind = Kind::rm;
    double k = 1.0;

    static PriorityPolicy rm() { return {Kind::rm, 0.0}; }
    static PriorityPolicy dkc(double k = 1.0) { return {Kind::dkc, k}; }
    static PriorityPolicy brute_force() { return {Kind::brute_force, 0.0}; }

    /// Returns the assignment for `ts`. The brute-force policy needs weights
    /// and an oracle; when no order is feasible it keeps the current one.
    Permutation assign(const TaskSet& ts, const ObjectiveWeights* w = nullptr,
                       const SchedOracle* oracle = nullptr) const;

    std::string name() const;
};

}  // namespace north
