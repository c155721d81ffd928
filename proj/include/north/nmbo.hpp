#pragma once

#include "north/evaluator.hpp"
#include "north/model.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <vector>

namespace north {

struct StepProposal {
    std::vector<double> delta;
    double predicted_decrease = 0.0;
};

/// Computes a step from the current point, its gradient and a trust radius,
/// keeping x + delta inside [lower, upper].
using StepProposer = std::function<StepProposal(std::span<const double> x,
                                                std::span<const double> gradient, double radius,
                                                std::span<const double> lower,
                                                std::span<const double> upper)>;

/// How nmbo_run estimates the slope of F.
enum class GradientMode {
    /// numeric_gradient() as is.
    central,
    /// Per coordinate, the one-sided slope that points downhill; zero when
    /// both sides go uphill (a breakpoint of r_i blocks the move).
    downhill,
};

struct NmboConfig {
    GradientMode gradient = GradientMode::downhill;
    double step_threshold = 0.1;
    double fd_step = 0.01;
    double backtrack_factor = 0.5;
    std::size_t max_backtracks = 30;
    double initial_trust_radius = 1.0;
    double max_trust_radius = 10.0;
    std::size_t max_iterations = 500;
    /// Minimum objective decrease for a step to count as descent.
    double min_decrease = 1e-9;
    /// Empty means propose_step().
    StepProposer proposer;

    /// Defaults scaled to the mean upper period bound.
    static NmboConfig defaults_for(const VariableBounds& bounds);

    void validate() const;
};

/// The optimizer's iterate.
struct OptState {
    TaskSet taskset;
    /// Task ids whose periods are eliminated (held constant).
    std::set<std::size_t> frozen;
    double objective_value = 0.0;
    std::size_t outer_iter = 0;
    std::size_t inner_iter = 0;

    /// Indices of tasks whose periods are still optimized, ascending.
    std::vector<std::size_t> free_indices() const;
};

/// Infeasible trial point kept for variable elimination.
struct Trial {
    /// Full-length step (one entry per task, zero on frozen tasks).
    std::vector<double> delta;
    AnalysisVerdict verdict;
};

class InfeasibleStart : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Objective over a vector of periods; nullopt marks an infeasible point.
using PeriodObjective = std::function<std::optional<double>(std::span<const double>)>;

struct GradientOptions {
    /// Replace a central difference by a forward/backward one when a probe is
    /// infeasible instead of throwing.
    bool one_sided_fallback = false;
    /// Value of f at x when already known.
    std::optional<double> f_at_x;
};

/// Central finite differences with probes clamped to [lower, upper];
/// one-sided at a bound. Throws std::domain_error when a probe is infeasible
/// and no fallback applies. Empty bound spans mean unbounded.
std::vector<double> numeric_gradient(const PeriodObjective& f, std::span<const double> x, double h,
                                     std::span<const double> lower = {},
                                     std::span<const double> upper = {},
                                     const GradientOptions& opts = {});

/// One-sided slopes per coordinate: the forward slope if it is negative, the
/// backward slope if it is positive, else 0 (the larger magnitude when both
/// sides descend). A side blocked by a bound counts as uphill; an infeasible
/// backward probe mirrors the forward slope, so descent can still head into
/// the infeasible region and be cut back by the backtracking search.
std::vector<double> downhill_slopes(const PeriodObjective& f, std::span<const double> x, double fx,
                                    double h, std::span<const double> lower = {},
                                    std::span<const double> upper = {});

/// Steepest descent scaled to the trust radius, with coordinates pinned at an
/// active bound dropped, then clamped so x + delta stays within bounds.
StepProposal propose_step(std::span<const double> x, std::span<const double> gradient,
                          double trust_radius, std::span<const double> lower = {},
                          std::span<const double> upper = {});

struct BacktrackResult {
    bool accepted = false;
    /// Accepted step (full length); empty on rejection.
    std::vector<double> delta;
    /// Iterate after the accepted step; unchanged on rejection.
    OptState state;
    std::size_t backtracks = 0;
    /// Largest infeasible trial of this search, if any.
    std::optional<Trial> infeasible_trial;
};

/// Tests x + delta, shrinking by backtrack_factor while the trial is
/// infeasible or fails to decrease F. `delta` is full length.
BacktrackResult feasibility_backtrack(const OptState& state, std::span<const double> delta,
                                      const Evaluator& eval, const NmboConfig& cfg);

enum class NmboStatus { converged, max_iterations, rejected };

/// Called with every accepted iterate.
using IterateObserver = std::function<void(const OptState&)>;

struct NmboResult {
    OptState state;
    NmboStatus status = NmboStatus::converged;
    std::size_t iterations = 0;
    std::size_t accepted_steps = 0;
    std::optional<Trial> last_infeasible;
};

/// Feasibility-preserving descent over the non-frozen periods. Throws
/// InfeasibleStart if the initial state is not schedulable.
NmboResult nmbo_run(const OptState& initial, const Evaluator& eval, const NmboConfig& cfg,
                    const IterateObserver& observer = {});

double l2_norm(std::span<const double> v);

}  // namespace north
