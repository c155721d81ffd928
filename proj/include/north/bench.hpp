#pragma once

#include "north/model.hpp"
#include "north/orchestrator.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <random>
#include <string>
#include <vector>

namespace north {

/// Seeded source for every random draw in generation. Wraps std::mt19937_64
/// with explicit integer/real mappings so streams do not depend on the
/// standard library's distribution implementations.
class Rng {
public:
    static constexpr const char* kName = "mt19937_64";

    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1) with 53 random bits.
    double unit();
    /// Uniform real in [lo, hi].
    double uniform_real(double lo, double hi);
    /// Uniform integer in [lo, hi].
    std::int64_t uniform_int(std::int64_t lo, std::int64_t hi);

private:
    std::mt19937_64 engine_;
};

struct GenParams {
    std::size_t n_tasks = 20;
    std::int64_t wcet_min = 1;
    std::int64_t wcet_max = 100;
    double period_cap_factor = 5.0;
    double alpha_min = 1.0;
    double alpha_max = 1000.0;
    double beta_min = 1.0;
    double beta_max = 10000.0;
    std::uint64_t seed = 0;

    void validate() const;
};

/// Integer WCETs, period bounds [C_i, factor * sum C], periods starting at the
/// upper bound, uniform real weights. Deterministic in `params.seed`.
Problem generate_taskset(const GenParams& params);

/// Seed of set `index` in a batch: base seed + index.
std::uint64_t set_seed(std::uint64_t base_seed, std::size_t index);

struct BenchRecord {
    std::size_t set_id = 0;
    std::uint64_t seed = 0;
    std::size_t n_tasks = 0;
    double f_north = 0.0;
    double f_plus = 0.0;
    /// NaN when either run failed to start.
    double gap_percent = 0.0;
    double t_north_ms = 0.0;
    double t_plus_ms = 0.0;
    SolutionStatus status_north = SolutionStatus::converged;
    SolutionStatus status_plus = SolutionStatus::converged;

    bool included() const;
};

/// Lower edges of the gap histogram bins; the last bin is [10, inf).
inline constexpr std::array<double, 9> kGapBinEdges{-100, -40, -30, -20, -10, -5, 0, 5, 10};

struct BenchSummary {
    std::size_t count = 0;
    std::size_t excluded = 0;
    double mean_gap = 0.0;
    double median_gap = 0.0;
    double min_gap = 0.0;
    double max_gap = 0.0;
    std::size_t n_better = 0;  ///< gap < 0
    std::size_t n_worse = 0;   ///< gap > 0
    std::size_t n_equal = 0;
    std::array<std::size_t, kGapBinEdges.size()> histogram{};
    double mean_t_north_ms = 0.0;
    double mean_t_plus_ms = 0.0;

    friend bool operator==(const BenchSummary&, const BenchSummary&) = default;
};

struct BenchReport {
    GenParams params;
    std::size_t n_sets = 0;
    std::string plus_method;
    NmboConfig nmbo_defaults;  ///< configuration of the first set, for the record
    std::size_t max_outer = 0;
    double outer_rel_tol = 0.0;
    DiscreteGuard discrete_guard = DiscreteGuard::lookahead;
    std::vector<BenchRecord> records;
    BenchSummary summary;
};

/// Runs NORTH and a NORTH+ variant (cfg.method, or RM when cfg.method is
/// NORTH) on `n_sets` generated sets. Sets are distributed over `workers`
/// threads (0 = hardware concurrency); records are ordered by set id.
BenchReport run_benchmark(const GenParams& params, std::size_t n_sets, const RunConfig& cfg,
                          std::size_t workers = 0);

/// Aggregates the included records. Throws std::invalid_argument when none.
BenchSummary summarize(const std::vector<BenchRecord>& records);

inline constexpr const char* kCsvHeader =
    "set_id,seed,n_tasks,f_north,f_plus,gap_percent,t_north_ms,t_plus_ms,status_north,status_plus";

void write_csv(const BenchReport& report, std::ostream& os);

/// %.6g formatting used by every text output.
std::string format_number(double v);

}  // namespace north
