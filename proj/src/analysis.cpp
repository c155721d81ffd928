#include "north/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace north {

namespace {

// Interference iteration over an explicit higher-priority list.
ResponseTime iterate_response(const TaskSet& ts, std::size_t i, std::span<const std::size_t> hp,
                              bool stop_at_deadline, const RtaLimits& limits)
{
    const Task& task = ts[i];
    ResponseTime out;
    double r = task.wcet;
    for (std::size_t it = 1; it <= limits.max_iterations; ++it) {
        out.iterations = it;
        if (stop_at_deadline && r > task.deadline) {
            out.value = r;
            out.status = RtStatus::deadline_exceeded;
            return out;
        }
        double next = task.wcet;
        for (auto j : hp) next += std::ceil(r / ts[j].period) * ts[j].wcet;
        if (next > limits.value_cap) {
            out.value = next;
            out.status = RtStatus::diverged;
            return out;
        }
        if (std::abs(next - r) < limits.tolerance) {
            out.value = next;
            out.status = (stop_at_deadline && next > task.deadline) ? RtStatus::deadline_exceeded
                                                                    : RtStatus::converged;
            return out;
        }
        r = next;
    }
    out.value = r;
    out.status = RtStatus::diverged;
    return out;
}

std::vector<std::size_t> higher_priority(const TaskSet& ts, std::size_t i)
{
    std::vector<std::size_t> hp;
    for (std::size_t j = 0; j < ts.size(); ++j)
        if (ts[j].priority < ts[i].priority) hp.push_back(j);
    return hp;
}

}  // namespace

ResponseTime response_time(const TaskSet& ts, std::size_t i, bool stop_at_deadline,
                           const RtaLimits& limits)
{
    if (i >= ts.size()) throw std::out_of_range("response_time: task index out of range");
    const auto hp = higher_priority(ts, i);
    return iterate_response(ts, i, hp, stop_at_deadline, limits);
}

AnalysisVerdict analyze(const TaskSet& ts, const RtaLimits& limits)
{
    const auto n = ts.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](auto a, auto b) { return ts[a].priority < ts[b].priority; });

    const bool overloaded = utilization(ts) > 1.0;

    std::vector<double> r(n, 0.0);
    std::vector<std::size_t> misses;
    for (std::size_t pos = 0; pos < n; ++pos) {
        const auto i = order[pos];
        if (overloaded && pos + 1 == n) {
            // Total demand exceeds capacity: the lowest-priority task cannot
            // have a bounded response time.
            r[i] = std::numeric_limits<double>::infinity();
            misses.push_back(ts[i].id);
            continue;
        }
        const auto rt = iterate_response(ts, i, std::span(order).first(pos), true, limits);
        r[i] = rt.status == RtStatus::diverged ? std::numeric_limits<double>::infinity() : rt.value;
        if (!rt.converged() || rt.value > ts[i].deadline) misses.push_back(ts[i].id);
    }
    std::sort(misses.begin(), misses.end());

    AnalysisVerdict v;
    v.schedulable = misses.empty();
    v.response_times = std::move(r);
    v.miss_set = std::move(misses);
    return v;
}

AnalysisVerdict BooleanOnlyOracle::query(const TaskSet& ts) const
{
    AnalysisVerdict v;
    v.schedulable = inner_->query(ts).schedulable;
    return v;
}

OraclePtr make_rta_oracle(RtaLimits limits)
{
    return std::make_shared<RtaOracle>(limits);
}

OraclePtr as_boolean_blackbox(OraclePtr oracle)
{
    if (!oracle) throw std::invalid_argument("as_boolean_blackbox: null oracle");
    return std::make_shared<BooleanOnlyOracle>(std::move(oracle));
}

// ---------------------------------------------------------------------------

namespace {

std::int64_t as_integer(double v, const char* what, std::size_t id)
{
    const double rounded = std::round(v);
    if (rounded != v || rounded < 1.0 || rounded > 9.0e15)
        throw std::invalid_argument(std::string("simulate_oracle: non-integer ") + what +
                                    " for task " + std::to_string(id));
    return static_cast<std::int64_t>(rounded);
}

}  // namespace

std::int64_t default_simulation_horizon(const TaskSet& ts)
{
    std::int64_t h = 1;
    for (const auto& t : ts.tasks) {
        const auto p = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::llround(t.period)));
        h = std::lcm(h, p);
        if (h > kSimulationHorizonCap) return kSimulationHorizonCap;
    }
    return h;
}

std::vector<double> simulate_oracle(const TaskSet& ts, std::optional<std::int64_t> horizon)
{
    const auto n = ts.size();
    std::vector<std::int64_t> wcet(n), period(n);
    for (std::size_t i = 0; i < n; ++i) {
        wcet[i] = as_integer(ts[i].wcet, "wcet", ts[i].id);
        period[i] = as_integer(ts[i].period, "period", ts[i].id);
    }
    if (horizon && (*horizon < 1 || *horizon > kSimulationHorizonCap))
        throw std::invalid_argument("simulate_oracle: horizon outside [1, 10^7]");
    const std::int64_t h = horizon ? *horizon : default_simulation_horizon(ts);

    struct Job {
        std::int64_t release;
        std::int64_t remaining;
    };
    std::vector<std::deque<Job>> pending(n);
    std::vector<std::int64_t> next_release(n, 0);
    std::vector<double> worst(n, 0.0);

    // Tasks in priority order, highest first.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](auto a, auto b) { return ts[a].priority < ts[b].priority; });

    // Releases continue past the horizon only while jobs released before it
    // are still unfinished, since later jobs still interfere with them.
    auto tracked_pending = [&] {
        for (std::size_t i = 0; i < n; ++i)
            if (!pending[i].empty() && pending[i].front().release < h) return true;
        return false;
    };
    // Guards overload: give up once time runs far past the horizon.
    const std::int64_t time_limit = h + 4 * kSimulationHorizonCap;

    std::int64_t now = 0;
    while (true) {
        for (std::size_t i = 0; i < n; ++i) {
            while (next_release[i] <= now) {
                pending[i].push_back({next_release[i], wcet[i]});
                next_release[i] += period[i];
            }
        }
        if (now >= h && !tracked_pending()) break;
        if (now > time_limit) {
            for (std::size_t i = 0; i < n; ++i)
                if (!pending[i].empty() && pending[i].front().release < h)
                    worst[i] = std::numeric_limits<double>::infinity();
            break;
        }

        std::int64_t upcoming = std::numeric_limits<std::int64_t>::max();
        for (std::size_t i = 0; i < n; ++i) upcoming = std::min(upcoming, next_release[i]);

        std::size_t running = n;
        for (auto i : order)
            if (!pending[i].empty()) {
                running = i;
                break;
            }
        if (running == n) {
            now = upcoming;
            continue;
        }
        Job& job = pending[running].front();
        const std::int64_t finish = now + job.remaining;
        if (finish <= upcoming) {
            now = finish;
            if (job.release < h)
                worst[running] = std::max(worst[running], static_cast<double>(now - job.release));
            pending[running].pop_front();
        } else {
            job.remaining -= upcoming - now;
            now = upcoming;
        }
    }
    return worst;
}

}  // namespace north
