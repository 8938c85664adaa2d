#include <iostream>

#include <CLI11.hpp>

#include "moldable/cli.hpp"

using namespace moldable;

int main(int argc, char** argv) {
    CLI::App app{"Moldable job scheduling with contiguous machine assignment"};
    app.require_subcommand(1);

    cli::SolveArgs solve_args;
    std::string eps_text = "0.05";
    std::string gantt;
    auto* solve = app.add_subcommand("solve", "Solve an instance file");
    solve->add_option("instance", solve_args.instance_path, "Instance JSON")->required();
    solve->add_option("--epsilon", eps_text, "Relative search accuracy in (0, 1]")->capture_default_str();
    solve->add_option("--out", solve_args.out_path, "Schedule JSON (default: stdout)");
    solve->add_option("--gantt", gantt, "Write an SVG Gantt chart");

    cli::GenArgs gen_args;
    auto* gen = app.add_subcommand("gen", "Generate a random monotone instance");
    gen->add_option("jobs,-n,--jobs", gen_args.n, "Number of jobs")->required();
    gen->add_option("machines,-m,--machines", gen_args.m, "Number of machines")->required();
    gen->add_option("seed,--seed", gen_args.seed, "Random seed")->capture_default_str();
    gen->add_option("--out", gen_args.out_path, "Instance JSON (default: stdout)");

    std::string v_instance, v_schedule;
    bool contiguous = false;
    auto* verify = app.add_subcommand("verify", "Check a schedule against an instance");
    verify->add_option("instance", v_instance, "Instance JSON")->required();
    verify->add_option("schedule", v_schedule, "Schedule JSON")->required();
    verify->add_flag("--contiguous", contiguous, "Require contiguous machine intervals");

    cli::BenchArgs bench_args;
    std::string plot;
    auto* bench = app.add_subcommand("bench", "Run a benchmark grid and write CSV");
    bench->add_option("config", bench_args.config_path, "Grid JSON")->required();
    bench->add_option("--out", bench_args.out_csv, "CSV path (default: stdout)");
    bench->add_option("--plot", plot, "Write an SVG of median wall time against n/m");

    CLI11_PARSE(app, argc, argv);

    if (*solve) {
        try {
            solve_args.epsilon = Rat::parse(eps_text);
        } catch (const std::exception& e) {
            std::cerr << "bad --epsilon: " << e.what() << "\n";
            return cli::BadInput;
        }
        if (!gantt.empty()) solve_args.gantt_path = gantt;
        return cli::cmd_solve(solve_args, std::cout, std::cerr);
    }
    if (*gen) return cli::cmd_gen(gen_args, std::cout, std::cerr);
    if (*verify) return cli::cmd_verify(v_instance, v_schedule, contiguous, std::cout, std::cerr);
    if (*bench) {
        bench_args.workers = cli::workers_from_env();
        if (!plot.empty()) bench_args.plot_path = plot;
        return cli::cmd_bench(bench_args, std::cout, std::cerr);
    }
    return cli::BadInput;
}
