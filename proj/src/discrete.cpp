#include "north/discrete.hpp"

#include "north/objective.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace north {

namespace {

template <typename Key>
Permutation rank_by(const TaskSet& ts, Key key)
{
    const auto n = ts.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) {
        const double ka = key(ts[a]);
        const double kb = key(ts[b]);
        if (ka != kb) return ka < kb;
        return ts[a].id < ts[b].id;
    });
    Permutation ranks(n);
    for (std::size_t pos = 0; pos < n; ++pos) ranks[order[pos]] = pos;
    return ranks;
}

}  // namespace

Permutation assign_rm(const TaskSet& ts)
{
    return rank_by(ts, [](const Task& t) { return t.period; });
}

Permutation assign_dkc(const TaskSet& ts, double k)
{
    if (k < 0.0) throw std::invalid_argument("assign_dkc: k must be >= 0");
    return rank_by(ts, [k](const Task& t) { return t.deadline - k * t.wcet; });
}

BruteForceResult brute_force_priorities(const TaskSet& ts, const ObjectiveWeights& w,
                                        const SchedOracle& oracle)
{
    const auto n = ts.size();
    if (n > kBruteForceMaxTasks)
        throw std::invalid_argument("brute_force_priorities: at most 9 tasks, got " + std::to_string(n));
    if (!oracle.provides_details())
        throw std::invalid_argument("brute_force_priorities: oracle must provide response times");

    BruteForceResult best;
    Permutation perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    do {
        const auto candidate = with_priorities(ts, perm);
        const auto v = oracle.query(candidate);
        if (!v.schedulable) continue;
        const double f = control_objective(candidate, w, v);
        if (!best.priorities || f < best.objective) {
            best.priorities = perm;
            best.objective = f;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

Permutation PriorityPolicy::assign(const TaskSet& ts, const ObjectiveWeights* w,
                                   const SchedOracle* oracle) const
{
    switch (kind) {
    case Kind::rm:
        return assign_rm(ts);
    case Kind::dkc:
        return assign_dkc(ts, k);
    case Kind::brute_force: {
        if (!w || !oracle) throw std::invalid_argument("brute-force policy needs weights and an oracle");
        auto best = brute_force_priorities(ts, *w, *oracle);
        return best.priorities ? *best.priorities : ts.priorities();
    }
    }
    return ts.priorities();
}

std::string PriorityPolicy::name() const
{
    switch (kind) {
    case Kind::rm:
        return "rm";
    case Kind::dkc: {
        std::ostringstream os;
        os << "dkc(k=" << k << ")";
        return os.str();
    }
    case Kind::brute_force:
        return "brute_force";
    }
    return "unknown";
}

}  // namespace north
