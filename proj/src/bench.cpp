#include "north/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace north {

double Rng::unit()
{
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double Rng::uniform_real(double lo, double hi)
{
    return lo + (hi - lo) * unit();
}

std::int64_t Rng::uniform_int(std::int64_t lo, std::int64_t hi)
{
    const auto span = static_cast<double>(hi - lo + 1);
    const auto k = static_cast<std::int64_t>(std::floor(unit() * span));
    return lo + std::min<std::int64_t>(k, hi - lo);
}

void GenParams::validate() const
{
    if (n_tasks == 0) throw std::invalid_argument("GenParams: n_tasks must be >= 1");
    if (wcet_min < 1 || wcet_max < wcet_min)
        throw std::invalid_argument("GenParams: wcet range must be non-empty and positive");
    if (!(period_cap_factor > 0.0)) throw std::invalid_argument("GenParams: cap factor must be > 0");
    if (!(alpha_min > 0.0) || alpha_max < alpha_min)
        throw std::invalid_argument("GenParams: alpha range must be non-empty and positive");
    if (!(beta_min > 0.0) || beta_max < beta_min)
        throw std::invalid_argument("GenParams: beta range must be non-empty and positive");
}

Problem generate_taskset(const GenParams& params)
{
    params.validate();
    Rng rng(params.seed);
    const auto n = params.n_tasks;

    std::vector<double> wcet(n);
    for (auto& c : wcet) c = static_cast<double>(rng.uniform_int(params.wcet_min, params.wcet_max));
    const double cap = params.period_cap_factor * std::accumulate(wcet.begin(), wcet.end(), 0.0);

    Problem p;
    p.taskset = make_taskset(wcet, std::vector<double>(n, cap));
    p.bounds.period_min = wcet;
    p.bounds.period_max.assign(n, cap);
    p.weights.alpha.resize(n);
    p.weights.beta.resize(n);
    for (auto& a : p.weights.alpha) a = rng.uniform_real(params.alpha_min, params.alpha_max);
    for (auto& b : p.weights.beta) b = rng.uniform_real(params.beta_min, params.beta_max);
    return p;
}

std::uint64_t set_seed(std::uint64_t base_seed, std::size_t index)
{
    return base_seed + index;
}

bool BenchRecord::included() const
{
    return status_north != SolutionStatus::initial_infeasible &&
           status_plus != SolutionStatus::initial_infeasible;
}

namespace {

BenchRecord run_one(const GenParams& params, std::size_t set_id, const RunConfig& north_cfg,
                    const RunConfig& plus_cfg)
{
    GenParams p = params;
    p.seed = set_seed(params.seed, set_id);
    const auto problem = OptProblem::with_rta(generate_taskset(p));

    using Clock = std::chrono::steady_clock;
    BenchRecord rec;
    rec.set_id = set_id;
    rec.seed = p.seed;
    rec.n_tasks = p.n_tasks;

    auto t0 = Clock::now();
    const auto north = optimize(problem, north_cfg);
    rec.t_north_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
    t0 = Clock::now();
    const auto plus = optimize(problem, plus_cfg);
    rec.t_plus_ms = std::chrono::duration<double, std::milli>(Clock::now() - t0).count();

    rec.f_north = north.objective;
    rec.f_plus = plus.objective;
    rec.status_north = north.status;
    rec.status_plus = plus.status;
    rec.gap_percent = rec.included() ? objective_gap(rec.f_plus, rec.f_north)
                                     : std::numeric_limits<double>::quiet_NaN();
    return rec;
}

}  // namespace

BenchReport run_benchmark(const GenParams& params, std::size_t n_sets, const RunConfig& cfg,
                          std::size_t workers)
{
    if (n_sets == 0) throw std::invalid_argument("run_benchmark: n_sets must be >= 1");
    params.validate();
    cfg.validate();

    RunConfig north_cfg = cfg;
    north_cfg.method = Method::north();
    RunConfig plus_cfg = cfg;
    if (plus_cfg.method.kind == Method::Kind::north) plus_cfg.method = Method::north_plus();

    BenchReport report;
    report.params = params;
    report.n_sets = n_sets;
    report.plus_method = plus_cfg.method.name();
    report.max_outer = cfg.max_outer;
    report.outer_rel_tol = cfg.outer_rel_tol;
    report.discrete_guard = cfg.discrete_guard;
    {
        GenParams first = params;
        first.seed = set_seed(params.seed, 0);
        report.nmbo_defaults = cfg.nmbo.value_or(NmboConfig::defaults_for(generate_taskset(first).bounds));
    }
    report.records.resize(n_sets);

    if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
    workers = std::min(workers, n_sets);

    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&] {
        for (std::size_t i = next++; i < n_sets; i = next++) {
            try {
                report.records[i] = run_one(params, i, north_cfg, plus_cfg);
            } catch (...) {
                std::lock_guard lock(failure_mutex);
                if (!failure) failure = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(worker);
    worker();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);

    report.summary = summarize(report.records);
    return report;
}

BenchSummary summarize(const std::vector<BenchRecord>& records)
{
    BenchSummary s;
    std::vector<double> gaps;
    double t_north = 0.0, t_plus = 0.0;
    for (const auto& r : records) {
        if (!r.included()) {
            ++s.excluded;
            continue;
        }
        gaps.push_back(r.gap_percent);
        t_north += r.t_north_ms;
        t_plus += r.t_plus_ms;
    }
    if (gaps.empty()) throw std::invalid_argument("summarize: no included records");

    s.count = gaps.size();
    const double count = static_cast<double>(s.count);
    s.mean_gap = std::accumulate(gaps.begin(), gaps.end(), 0.0) / count;
    s.mean_t_north_ms = t_north / count;
    s.mean_t_plus_ms = t_plus / count;
    for (double g : gaps) {
        if (g < 0.0) ++s.n_better;
        else if (g > 0.0) ++s.n_worse;
        else ++s.n_equal;
        std::size_t bin = 0;
        for (std::size_t b = 0; b < kGapBinEdges.size(); ++b)
            if (g >= kGapBinEdges[b]) bin = b;
        ++s.histogram[bin];
    }

    std::sort(gaps.begin(), gaps.end());
    s.min_gap = gaps.front();
    s.max_gap = gaps.back();
    const auto mid = gaps.size() / 2;
    s.median_gap = gaps.size() % 2 ? gaps[mid] : 0.5 * (gaps[mid - 1] + gaps[mid]);
    return s;
}

std::string format_number(double v)
{
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void write_csv(const BenchReport& report, std::ostream& os)
{
    os << kCsvHeader << '\n';
    for (const auto& r : report.records) {
        os << r.set_id << ',' << r.seed << ',' << r.n_tasks << ',' << format_number(r.f_north) << ','
           << format_number(r.f_plus) << ',' << format_number(r.gap_percent) << ','
           << format_number(r.t_north_ms) << ',' << format_number(r.t_plus_ms) << ','
           << to_string(r.status_north) << ',' << to_string(r.status_plus) << '\n';
    }
}

}  // namespace north
