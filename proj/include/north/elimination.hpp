#pragma once

#include "north/nmbo.hpp"

#include <optional>
#include <set>
#include <vector>

namespace north {

enum class VeKind { found_direction, eliminated, exhausted };

struct VeOutcome {
    VeKind kind = VeKind::exhausted;
    /// Full-length feasible descent step, for found_direction.
    std::optional<std::vector<double>> direction;
    std::set<std::size_t> newly_frozen;
};

/// Oracle calls allowed per subspace search by default: 2N.
std::size_t default_subspace_budget(std::size_t n_tasks);

/// Looks for a feasible full-length descent step inside the subspace of the
/// last infeasible trial: first every single-coordinate zeroing, then the
/// step with all deadline-missing coordinates zeroed (when the verdict names
/// them). Stops after `budget` oracle evaluations.
VeOutcome subspace_search(const OptState& state, const Trial& last, const Evaluator& eval,
                          std::size_t budget);

/// Freezes the periods of the tasks blamed for the infeasible trial. With a
/// detailed verdict the blame is its miss set; with a boolean-only oracle each
/// free coordinate is probed alone, and if none fails alone the coordinate
/// with the largest step is frozen.
VeOutcome eliminate_missing(const OptState& state, const Trial& last, const Evaluator& eval);

/// Applies a found direction or enlarges the frozen set. Throws
/// std::invalid_argument for an exhausted outcome.
OptState reformulate(const OptState& state, const VeOutcome& outcome, const Evaluator& eval);

}  // namespace north
