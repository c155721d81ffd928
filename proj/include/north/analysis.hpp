#pragma once

#include "north/model.hpp"

#include <atomic>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace north {

/// Result of one schedulability query. The detail fields are empty when the
/// oracle only exposes the boolean verdict.
struct AnalysisVerdict {
    bool schedulable = false;
    std::optional<std::vector<double>> response_times;
    /// Ids of tasks whose response time exceeds the deadline, ascending.
    std::optional<std::vector<std::size_t>> miss_set;

    bool has_details() const { return response_times.has_value() && miss_set.has_value(); }
};

enum class OracleCapability { detailed, boolean_only };

/// Black-box schedulability test. Implementations must be deterministic and
/// free of observable side effects so they can be queried from many threads.
class SchedOracle {
public:
    virtual ~SchedOracle() = default;

    virtual AnalysisVerdict query(const TaskSet& ts) const = 0;
    virtual OracleCapability capability() const = 0;
    virtual std::string name() const = 0;

    bool provides_details() const { return capability() == OracleCapability::detailed; }
};

using OraclePtr = std::shared_ptr<const SchedOracle>;

// Response-time analysis ------------------------------------------------------

enum class RtStatus {
    converged,          ///< least fixed point reached
    deadline_exceeded,  ///< iteration stopped early once r > D
    diverged,           ///< hit the value or iteration cap
};

struct ResponseTime {
    double value = 0.0;
    RtStatus status = RtStatus::converged;
    std::size_t iterations = 0;

    bool converged() const { return status == RtStatus::converged; }
};

struct RtaLimits {
    double value_cap = 2147483648.0;  // 2^31 time units
    std::size_t max_iterations = 1'000'000;
    double tolerance = 1e-9;
};

/// Classical fixed-priority response time of task index `i`:
/// least fixed point of r = C_i + sum_{j in hp(i)} ceil(r / T_j) C_j,
/// iterated from r = C_i. With `stop_at_deadline` the iteration exits as soon
/// as r > D_i and reports the current iterate.
ResponseTime response_time(const TaskSet& ts, std::size_t i, bool stop_at_deadline = true,
                           const RtaLimits& limits = {});

/// Runs response_time for every task; schedulable iff every r_i <= D_i.
AnalysisVerdict analyze(const TaskSet& ts, const RtaLimits& limits = {});

class RtaOracle final : public SchedOracle {
public:
    explicit RtaOracle(RtaLimits limits = {}) : limits_(limits) {}

    AnalysisVerdict query(const TaskSet& ts) const override { return analyze(ts, limits_); }
    OracleCapability capability() const override { return OracleCapability::detailed; }
    std::string name() const override { return "rta"; }

private:
    RtaLimits limits_;
};

/// Exposes only the boolean verdict of the wrapped oracle.
class BooleanOnlyOracle final : public SchedOracle {
public:
    explicit BooleanOnlyOracle(OraclePtr inner) : inner_(std::move(inner)) {}

    AnalysisVerdict query(const TaskSet& ts) const override;
    OracleCapability capability() const override { return OracleCapability::boolean_only; }
    std::string name() const override { return "boolean(" + inner_->name() + ")"; }

private:
    OraclePtr inner_;
};

OraclePtr make_rta_oracle(RtaLimits limits = {});
OraclePtr as_boolean_blackbox(OraclePtr oracle);

/// Forwards to another oracle and counts queries. Meant to be owned by one
/// optimization run; the counter is atomic so concurrent probes stay exact.
class CountingOracle final : public SchedOracle {
public:
    explicit CountingOracle(const SchedOracle& inner) : inner_(&inner) {}

    AnalysisVerdict query(const TaskSet& ts) const override
    {
        calls_.fetch_add(1, std::memory_order_relaxed);
        return inner_->query(ts);
    }
    OracleCapability capability() const override { return inner_->capability(); }
    std::string name() const override { return inner_->name(); }

    std::uint64_t calls() const { return calls_.load(std::memory_order_relaxed); }

private:
    const SchedOracle* inner_;
    mutable std::atomic<std::uint64_t> calls_{0};
};

// Simulation ------------------------------------------------------------------

inline constexpr std::int64_t kSimulationHorizonCap = 10'000'000;

/// Least common multiple of the (integer) periods, clamped to the cap.
std::int64_t default_simulation_horizon(const TaskSet& ts);

/// Discrete-event simulation of synchronous-release, fixed-priority preemptive
/// scheduling on one processor. Returns the worst response time of each
/// task's jobs released before `horizon`; +inf for a task whose job never
/// completes (overload). Requires integer WCETs and periods.
/// Throws std::invalid_argument on non-integer parameters or a horizon above
/// the cap.
std::vector<double> simulate_oracle(const TaskSet& ts, std::optional<std::int64_t> horizon = {});

}  // namespace north
