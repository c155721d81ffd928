// north: generate task sets, analyze them, optimize periods and priorities,
// and run the NORTH vs NORTH+ comparison.

#include "north/analysis.hpp"
#include "north/bench.hpp"
#include "north/io.hpp"
#include "north/orchestrator.hpp"

#include "CLI11.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

namespace fs = std::filesystem;
using namespace north;

namespace {

constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kInfeasible = 2;

struct GenFlags {
    std::size_t n_tasks = 20;
    std::uint64_t seed = 0;
    std::int64_t wcet_min = 1;
    std::int64_t wcet_max = 100;
    double cap_factor = 5.0;
    double alpha_max = 1000.0;
    double beta_max = 10000.0;

    void add_to(CLI::App* app)
    {
        app->add_option("--n-tasks", n_tasks, "Tasks per set")->check(CLI::PositiveNumber);
        app->add_option("--seed", seed, "Base seed; set i uses seed + i");
        app->add_option("--wcet-min", wcet_min, "Smallest WCET")->check(CLI::PositiveNumber);
        app->add_option("--wcet-max", wcet_max, "Largest WCET")->check(CLI::PositiveNumber);
        app->add_option("--cap-factor", cap_factor, "Period upper bound factor (T_i <= f * sum C)")
            ->check(CLI::PositiveNumber);
        app->add_option("--alpha-max", alpha_max, "Upper end of the alpha range [1, max]");
        app->add_option("--beta-max", beta_max, "Upper end of the beta range [1, max]");
    }

    GenParams params() const
    {
        GenParams p;
        p.n_tasks = n_tasks;
        p.seed = seed;
        p.wcet_min = wcet_min;
        p.wcet_max = wcet_max;
        p.period_cap_factor = cap_factor;
        p.alpha_max = alpha_max;
        p.beta_max = beta_max;
        return p;
    }
};

int cmd_generate(const GenFlags& gen, std::size_t n_sets, const fs::path& out)
{
    auto params = gen.params();
    params.validate();
    const bool single_file = n_sets == 1 && out.extension() == ".json";
    for (std::size_t i = 0; i < n_sets; ++i) {
        GenParams p = params;
        p.seed = set_seed(params.seed, i);
        char name[48];
        std::snprintf(name, sizeof name, "taskset_%04zu.json", i);
        const auto path = single_file ? out : out / name;
        save_problem(generate_taskset(p), path);
        std::cout << path.string() << '\n';
    }
    return kOk;
}

int cmd_analyze(const fs::path& input, bool simulate)
{
    const auto problem = load_problem(input);
    const auto& ts = problem.taskset;
    if (const auto v = validate_taskset(ts); !v) throw FormatError("invalid task set: " + v.describe());

    const auto verdict = analyze(ts);
    std::cout << "schedulable: " << (verdict.schedulable ? "yes" : "no") << '\n';
    std::cout << "utilization: " << format_number(utilization(ts)) << '\n';
    std::cout << "r =";
    for (double r : *verdict.response_times) std::cout << ' ' << format_number(r);
    std::cout << '\n';
    std::cout << "misses:";
    for (auto id : *verdict.miss_set) std::cout << ' ' << id;
    std::cout << '\n';
    if (simulate) {
        const auto sim = simulate_oracle(ts);
        std::cout << "simulated r =";
        for (double r : sim) std::cout << ' ' << format_number(r);
        std::cout << '\n';
    }
    return verdict.schedulable ? kOk : kInfeasible;
}

int cmd_optimize(const fs::path& input, const std::string& method, double k, std::uint64_t seed,
                 std::size_t max_outer, const std::string& out)
{
    const auto problem = OptProblem::with_rta(load_problem(input));
    RunConfig cfg;
    cfg.method = Method::parse(method, k);
    cfg.seed = seed;
    cfg.max_outer = max_outer;
    const auto sol = optimize(problem, cfg);

    auto j = solution_to_json(sol, problem.data);
    j["method"] = cfg.method.name();
    j["seed"] = seed;
    if (out.empty()) {
        std::cout << j.dump(2) << '\n';
    } else {
        write_json(j, out);
        std::cout << "status: " << to_string(sol.status) << '\n'
                  << "objective: " << format_number(sol.objective) << '\n'
                  << "outer iterations: " << sol.outer_iterations() << '\n';
    }
    return sol.status == SolutionStatus::initial_infeasible ? kInfeasible : kOk;
}

int cmd_benchmark(const GenFlags& gen, std::size_t n_sets, const RunConfig& cfg,
                  std::size_t workers, const fs::path& out)
{
    const auto report = run_benchmark(gen.params(), n_sets, cfg, workers);
    fs::create_directories(out);
    {
        std::ofstream csv(out / "results.csv", std::ios::binary);
        if (!csv) throw std::runtime_error("cannot write " + (out / "results.csv").string());
        write_csv(report, csv);
    }
    write_json(summary_to_json(report), out / "summary.json");

    const auto& s = report.summary;
    std::cout << "sets: " << s.count << " (excluded " << s.excluded << ")\n"
              << "gap % (" << report.plus_method << " vs north): mean " << format_number(s.mean_gap)
              << ", median " << format_number(s.median_gap) << ", min " << format_number(s.min_gap)
              << ", max " << format_number(s.max_gap) << '\n'
              << "better/worse/equal: " << s.n_better << '/' << s.n_worse << '/' << s.n_equal << '\n'
              << "mean runtime ms: north " << format_number(s.mean_t_north_ms) << ", "
              << report.plus_method << ' ' << format_number(s.mean_t_plus_ms) << '\n';
    return kOk;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Period and priority optimization of fixed-priority real-time task sets"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1, 1);

    // generate
    auto* gen_cmd = app.add_subcommand("generate", "Write random task-set JSON files");
    GenFlags gen_flags;
    gen_flags.add_to(gen_cmd);
    std::size_t gen_sets = 1;
    fs::path gen_out;
    gen_cmd->add_option("--n-sets", gen_sets, "Number of sets")->check(CLI::PositiveNumber);
    gen_cmd->add_option("--out", gen_out, "Output directory, or a .json file when --n-sets is 1")
        ->required();

    // analyze
    auto* an_cmd = app.add_subcommand("analyze", "Response-time analysis of a task-set file");
    fs::path an_input;
    bool an_sim = false;
    an_cmd->add_option("--input", an_input, "Task-set JSON file")->required();
    an_cmd->add_flag("--simulate", an_sim, "Also run the discrete-event simulation (integer sets)");

    // optimize
    auto* opt_cmd = app.add_subcommand("optimize", "Optimize periods (and priorities) of a task set");
    fs::path opt_input;
    std::string opt_method = "north+rm";
    double opt_k = 1.0;
    std::uint64_t opt_seed = 0;
    std::size_t opt_outer = 50;
    std::string opt_out;
    opt_cmd->add_option("--input", opt_input, "Task-set JSON file")->required();
    opt_cmd->add_option("--method", opt_method, "Optimization method")
        ->check(CLI::IsMember({"north", "north+rm", "north+dkc"}));
    opt_cmd->add_option("--k", opt_k, "k of the DkC heuristic")->check(CLI::NonNegativeNumber);
    opt_cmd->add_option("--seed", opt_seed, "Seed recorded in the output");
    opt_cmd->add_option("--max-outer", opt_outer, "Maximum outer iterations")->check(CLI::PositiveNumber);
    opt_cmd->add_option("--out", opt_out, "Solution JSON path (stdout when empty)");

    // benchmark
    auto* bench_cmd = app.add_subcommand("benchmark", "Compare NORTH and NORTH+ on generated sets");
    GenFlags bench_gen;
    bench_gen.add_to(bench_cmd);
    std::size_t bench_sets = 100;
    std::string bench_method = "north+rm";
    double bench_k = 1.0;
    std::size_t bench_outer = 50;
    double bench_tol = 1e-3;
    std::size_t bench_workers = std::max(1u, std::thread::hardware_concurrency());
    fs::path bench_out;
    bench_cmd->add_option("--n-sets", bench_sets, "Number of generated sets")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--plus-method", bench_method, "NORTH+ variant compared against NORTH")
        ->check(CLI::IsMember({"north+rm", "north+dkc"}));
    bench_cmd->add_option("--k", bench_k, "k of the DkC heuristic")->check(CLI::NonNegativeNumber);
    bench_cmd->add_option("--max-outer", bench_outer, "Maximum outer iterations (both methods)")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--outer-tol", bench_tol, "Relative outer improvement threshold (both methods)")
        ->check(CLI::PositiveNumber);
    bench_cmd->add_option("--workers", bench_workers, "Worker threads")->check(CLI::PositiveNumber);
    bench_cmd->add_option("--out", bench_out, "Output directory for results.csv and summary.json")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (*gen_cmd) return cmd_generate(gen_flags, gen_sets, gen_out);
        if (*an_cmd) return cmd_analyze(an_input, an_sim);
        if (*opt_cmd) return cmd_optimize(opt_input, opt_method, opt_k, opt_seed, opt_outer, opt_out);
        if (*bench_cmd) {
            RunConfig cfg;
            cfg.method = Method::parse(bench_method, bench_k);
            cfg.max_outer = bench_outer;
            cfg.outer_rel_tol = bench_tol;
            cfg.seed = bench_gen.seed;
            return cmd_benchmark(bench_gen, bench_sets, cfg, bench_workers, bench_out);
        }
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
