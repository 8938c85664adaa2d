#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "moldable/rat.hpp"

namespace moldable::cli {

/// Exit codes shared by the subcommands.
enum Exit : int { Ok = 0, Infeasible = 1, BadInput = 2, Internal = 3 };

struct SolveArgs {
    std::string instance_path;
    std::string out_path;  // empty: schedule JSON goes to `out`
    std::optional<std::string> gantt_path;
    Rat epsilon{1, 20};
};

/// Solve an instance file. Summary lines go to `log`.
int cmd_solve(const SolveArgs& args, std::ostream& out, std::ostream& log);

struct GenArgs {
    int n = 0;
    int m = 1;
    std::uint64_t seed = 0;
    std::string out_path;  // empty: write to `out`
};

int cmd_gen(const GenArgs& args, std::ostream& out, std::ostream& log);

/// 0 feasible, 1 infeasible (violations listed on `out`), 2 unreadable files
/// or schedule job ids absent from the instance.
int cmd_verify(const std::string& instance_path, const std::string& schedule_path, bool contiguous,
               std::ostream& out, std::ostream& log);

struct BenchArgs {
    std::string config_path;
    std::string out_csv;
    std::optional<std::string> plot_path;
    int workers = 1;
};

struct BenchRow {
    int n = 0;
    int m = 0;
    std::uint64_t seed = 0;
    Rat epsilon;
    Rat makespan;
    Rat accepted_d;
    Rat lambda_used;
    double ratio_vs_lower_bound = 0;
    double wall_ms = 0;
    int iterations = 0;
    std::string error;  // empty when the solve succeeded
};

struct BenchTask {
    int n = 0;
    int m = 0;
    std::uint64_t seed = 0;
    Rat epsilon;
};

/// Expands {"grids": [{"n": [...], "m": [...], "seeds": [...], "epsilon": [...]}]}
/// into tasks sorted by (n, m, seed, epsilon).
std::vector<BenchTask> parse_bench_config(const std::string& text);

/// Runs the tasks on `workers` threads; rows come back in task order.
std::vector<BenchRow> run_bench(const std::vector<BenchTask>& tasks, int workers);

std::string bench_csv(const std::vector<BenchRow>& rows);

/// Median wall time per (n, m) against n/m.
std::string bench_plot_svg(const std::vector<BenchRow>& rows);

int cmd_bench(const BenchArgs& args, std::ostream& out, std::ostream& log);

/// MOLDABLE_WORKERS if set to a positive integer, else the hardware thread count.
int workers_from_env();

}  // namespace moldable::cli
