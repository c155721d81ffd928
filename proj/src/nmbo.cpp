#include "north/nmbo.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace north {

double l2_norm(std::span<const double> v)
{
    double s = 0.0;
    for (double e : v) s += e * e;
    return std::sqrt(s);
}

NmboConfig NmboConfig::defaults_for(const VariableBounds& bounds)
{
    NmboConfig cfg;
    if (bounds.period_max.empty()) return cfg;
    const double mean =
        std::accumulate(bounds.period_max.begin(), bounds.period_max.end(), 0.0) /
        static_cast<double>(bounds.period_max.size());
    cfg.step_threshold = 1e-2 * mean;
    cfg.fd_step = 1e-2 * mean;
    cfg.initial_trust_radius = 0.1 * mean;
    cfg.max_trust_radius = mean;
    return cfg;
}

void NmboConfig::validate() const
{
    if (!(step_threshold > 0.0) || !(fd_step > 0.0) || !(initial_trust_radius > 0.0) ||
        !(max_trust_radius >= initial_trust_radius) || !(min_decrease >= 0.0))
        throw std::invalid_argument("NmboConfig: thresholds and radii must be positive");
    if (!(backtrack_factor > 0.0 && backtrack_factor < 1.0))
        throw std::invalid_argument("NmboConfig: backtrack_factor must lie in (0, 1)");
    if (max_iterations == 0) throw std::invalid_argument("NmboConfig: max_iterations must be >= 1");
}

std::vector<std::size_t> OptState::free_indices() const
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < taskset.size(); ++i)
        if (!frozen.contains(taskset[i].id)) out.push_back(i);
    return out;
}

std::vector<double> numeric_gradient(const PeriodObjective& f, std::span<const double> x, double h,
                                     std::span<const double> lower, std::span<const double> upper,
                                     const GradientOptions& opts)
{
    if (!(h > 0.0)) throw std::invalid_argument("numeric_gradient: step must be positive");
    const auto n = x.size();
    if ((!lower.empty() && lower.size() != n) || (!upper.empty() && upper.size() != n))
        throw std::invalid_argument("numeric_gradient: bound length mismatch");

    std::optional<double> fx = opts.f_at_x;
    auto value_at_x = [&]() {
        if (!fx) {
            fx = f(x);
            if (!fx) throw std::domain_error("numeric_gradient: f infeasible at x");
        }
        return *fx;
    };

    std::vector<double> g(n, 0.0);
    std::vector<double> probe(x.begin(), x.end());
    for (std::size_t k = 0; k < n; ++k) {
        double hi = x[k] + h;
        double lo = x[k] - h;
        if (!upper.empty()) hi = std::min(hi, upper[k]);
        if (!lower.empty()) lo = std::max(lo, lower[k]);

        auto probe_at = [&](double v) -> std::optional<double> {
            if (v == x[k]) return value_at_x();
            probe[k] = v;
            auto r = f(probe);
            probe[k] = x[k];
            return r;
        };

        auto f_hi = probe_at(hi);
        auto f_lo = probe_at(lo);
        if (!f_lo) {
            if (!opts.one_sided_fallback)
                throw std::domain_error("numeric_gradient: infeasible probe below coordinate " +
                                        std::to_string(k));
            lo = x[k];
            f_lo = value_at_x();
        }
        if (!f_hi) {
            if (!opts.one_sided_fallback)
                throw std::domain_error("numeric_gradient: infeasible probe above coordinate " +
                                        std::to_string(k));
            hi = x[k];
            f_hi = value_at_x();
        }
        g[k] = hi > lo ? (*f_hi - *f_lo) / (hi - lo) : 0.0;
    }
    return g;
}

std::vector<double> downhill_slopes(const PeriodObjective& f, std::span<const double> x, double fx,
                                    double h, std::span<const double> lower,
                                    std::span<const double> upper)
{
    if (!(h > 0.0)) throw std::invalid_argument("downhill_slopes: step must be positive");
    const auto n = x.size();
    std::vector<double> g(n, 0.0);
    std::vector<double> probe(x.begin(), x.end());
    auto slope_to = [&](std::size_t k, double v) -> std::optional<double> {
        if (v == x[k]) return std::nullopt;
        probe[k] = v;
        const auto fv = f(probe);
        probe[k] = x[k];
        if (!fv) return std::nullopt;
        return (*fv - fx) / (v - x[k]);
    };

    for (std::size_t k = 0; k < n; ++k) {
        const double hi = upper.empty() ? x[k] + h : std::min(x[k] + h, upper[k]);
        const double lo = lower.empty() ? x[k] - h : std::max(x[k] - h, lower[k]);
        const auto fwd = slope_to(k, hi);
        auto bwd = slope_to(k, lo);
        if (!bwd && lo != x[k]) bwd = fwd;

        const bool up_helps = fwd && *fwd < 0.0;
        const bool down_helps = bwd && *bwd > 0.0;
        if (up_helps && down_helps) g[k] = -*fwd > *bwd ? *fwd : *bwd;
        else if (up_helps) g[k] = *fwd;
        else if (down_helps) g[k] = *bwd;
    }
    return g;
}

StepProposal propose_step(std::span<const double> x, std::span<const double> gradient,
                          double trust_radius, std::span<const double> lower,
                          std::span<const double> upper)
{
    const auto n = x.size();
    if (gradient.size() != n) throw std::invalid_argument("propose_step: gradient length mismatch");
    if (!(trust_radius > 0.0)) throw std::invalid_argument("propose_step: trust radius must be > 0");

    // Descent along a coordinate sitting on the bound it would cross is
    // impossible; drop it before normalizing.
    std::vector<double> g(gradient.begin(), gradient.end());
    for (std::size_t k = 0; k < n; ++k) {
        if (g[k] > 0.0 && !lower.empty() && x[k] <= lower[k]) g[k] = 0.0;
        if (g[k] < 0.0 && !upper.empty() && x[k] >= upper[k]) g[k] = 0.0;
    }

    StepProposal p;
    p.delta.assign(n, 0.0);
    const double norm = l2_norm(g);
    if (norm < 1e-12) return p;

    for (std::size_t k = 0; k < n; ++k) {
        double d = -trust_radius * g[k] / norm;
        if (!lower.empty()) d = std::max(d, lower[k] - x[k]);
        if (!upper.empty()) d = std::min(d, upper[k] - x[k]);
        p.delta[k] = d;
        p.predicted_decrease -= gradient[k] * d;
    }
    return p;
}

namespace {

std::vector<double> stepped_periods(const OptState& state, std::span<const double> delta,
                                    const VariableBounds& bounds)
{
    auto periods = state.taskset.periods();
    for (std::size_t i = 0; i < periods.size(); ++i) {
        if (delta[i] == 0.0) continue;
        periods[i] = std::clamp(periods[i] + delta[i], bounds.period_min[i], bounds.period_max[i]);
    }
    return periods;
}

}  // namespace

BacktrackResult feasibility_backtrack(const OptState& state, std::span<const double> delta,
                                      const Evaluator& eval, const NmboConfig& cfg)
{
    const auto n = state.taskset.size();
    if (delta.size() != n) throw std::invalid_argument("feasibility_backtrack: delta length mismatch");
    for (std::size_t i = 0; i < n; ++i)
        if (delta[i] != 0.0 && state.frozen.contains(state.taskset[i].id))
            throw std::invalid_argument("feasibility_backtrack: step moves a frozen period");

    BacktrackResult res;
    res.state = state;
    if (l2_norm(delta) == 0.0) return res;

    std::vector<double> trial(delta.begin(), delta.end());
    for (std::size_t b = 0; b <= cfg.max_backtracks; ++b) {
        const auto ts = with_periods(state.taskset, stepped_periods(state, trial, eval.bounds()));
        auto pe = eval.evaluate(ts);
        if (!pe.feasible) {
            if (!res.infeasible_trial) res.infeasible_trial = Trial{trial, std::move(pe.verdict)};
        } else if (pe.objective < state.objective_value - cfg.min_decrease) {
            res.accepted = true;
            res.backtracks = b;
            res.delta = trial;
            res.state.taskset = ts;
            res.state.objective_value = pe.objective;
            return res;
        }
        for (auto& d : trial) d *= cfg.backtrack_factor;
    }
    res.backtracks = cfg.max_backtracks;
    return res;
}

NmboResult nmbo_run(const OptState& initial, const Evaluator& eval, const NmboConfig& cfg,
                    const IterateObserver& observer)
{
    cfg.validate();
    NmboResult res;
    res.state = initial;
    const auto start = eval.evaluate(initial.taskset);
    if (!start.feasible) throw InfeasibleStart("nmbo_run: initial state is not schedulable");
    res.state.objective_value = start.objective;

    const auto free = res.state.free_indices();
    if (free.empty()) return res;

    const auto& bounds = eval.bounds();
    std::vector<double> lo, hi;
    for (auto i : free) {
        lo.push_back(bounds.period_min[i]);
        hi.push_back(bounds.period_max[i]);
    }

    double radius = cfg.initial_trust_radius;
    res.status = NmboStatus::max_iterations;
    for (std::size_t it = 0; it < cfg.max_iterations; ++it) {
        res.iterations = it + 1;
        OptState& state = res.state;

        const auto all_periods = state.taskset.periods();
        std::vector<double> x;
        for (auto i : free) x.push_back(all_periods[i]);

        PeriodObjective f = [&](std::span<const double> xf) -> std::optional<double> {
            auto periods = all_periods;
            for (std::size_t k = 0; k < free.size(); ++k) periods[free[k]] = xf[k];
            const auto pe = eval.evaluate(with_periods(state.taskset, periods));
            if (!pe.feasible) return std::nullopt;
            return pe.objective;
        };
        std::vector<double> grad;
        if (cfg.gradient == GradientMode::downhill) {
            grad = downhill_slopes(f, x, state.objective_value, cfg.fd_step, lo, hi);
        } else {
            GradientOptions gopts;
            gopts.one_sided_fallback = true;
            gopts.f_at_x = state.objective_value;
            grad = numeric_gradient(f, x, cfg.fd_step, lo, hi, gopts);
        }

        const auto proposal = cfg.proposer ? cfg.proposer(x, grad, radius, lo, hi)
                                           : propose_step(x, grad, radius, lo, hi);
        if (l2_norm(proposal.delta) == 0.0) {
            res.status = NmboStatus::converged;
            break;
        }

        std::vector<double> full(state.taskset.size(), 0.0);
        for (std::size_t k = 0; k < free.size(); ++k) full[free[k]] = proposal.delta[k];

        auto bt = feasibility_backtrack(state, full, eval, cfg);
        if (bt.infeasible_trial) res.last_infeasible = std::move(bt.infeasible_trial);
        if (!bt.accepted) {
            // Every shorter step along this direction was already tried by the
            // backtracking search, so a smaller radius cannot help.
            res.status = NmboStatus::rejected;
            break;
        }

        const auto inner = state.inner_iter + 1;
        state = std::move(bt.state);
        state.inner_iter = inner;
        ++res.accepted_steps;
        if (observer) observer(state);

        const double step = l2_norm(bt.delta);
        if (step < cfg.step_threshold && (bt.infeasible_trial || bt.backtracks == 0)) {
            res.status = NmboStatus::converged;
            break;
        }
        // A step cut back only by a jump in F (a response-time breakpoint)
        // keeps a useful radius: the blocked coordinate drops out of the
        // downhill slope once the iterate sits next to the jump.
        radius = bt.backtracks == 0 ? std::min(2.0 * radius, cfg.max_trust_radius)
                                    : std::max(step, cfg.step_threshold);
    }
    return res;
}

}  // namespace north
