#include <CLI11.hpp>
#include <iostream>

#include "cli.hpp"

int main(int argc, char** argv) {
    using nmk::cli::Command;
    using nmk::cli::CommandConfig;

    CLI::App app{"Memory effects in classical two-site semi-Markov processes: Kolmogorov-distance "
                 "measure, time-local rates and P-divisibility checks"};
    app.require_subcommand(1);
    CommandConfig config;

    auto* analyze = app.add_subcommand("analyze", "q(t), gamma(t) and the memory measure N_C for one waiting-time spec");
    analyze->add_option("--wtd", config.wtd, "waiting-time DSL, e.g. \"erlang(2,1)\"");
    analyze->add_option("--wtd-file", config.wtd_file, "JSON spec file instead of --wtd");
    analyze->add_option("--tail-tol", config.tail_tol, "tail bound below which |q| is truncated");
    analyze->add_option("--grid-points", config.grid_points, "CSV trajectory resolution");
    analyze->add_option("--out-csv", config.out_csv, "trajectory CSV path (t,q,abs_q,gamma,dk)");
    analyze->add_option("--out-json", config.out_json, "report JSON path");

    auto* erlang = app.add_subcommand("erlang-sweep", "N_C versus the Erlang order n = 1..n-max");
    erlang->add_option("--n-max", config.n_max, "largest Erlang order")->required();
    erlang->add_option("--lambda", config.lambda, "stage rate (N_C is invariant under it)");
    erlang->add_option("--tail-tol", config.tail_tol, "tail bound");
    erlang->add_option("--out-csv", config.out_csv, "sweep CSV path (param,n_c,tail_bound,horizon)");
    erlang->add_option("--out-svg", config.out_svg, "plot path: N_C vs n");

    auto* mixture = app.add_subcommand(
        "mixture-sweep", "N_C for the convolution of two equal exponential mixtures, per mixing weight");
    mixture->add_option("--mu", config.mus, "comma-separated mixing weights in [0,1]")
        ->required()
        ->delimiter(',');
    mixture->add_option("--lambda1", config.lambda1, "first rate")->required();
    mixture->add_option("--ratio", config.ratio, "rate ratio lambda2/lambda1")->required();
    mixture->add_option("--tail-tol", config.tail_tol, "tail bound");
    mixture->add_option("--out-csv", config.out_csv, "sweep CSV path");
    mixture->add_option("--out-svg", config.out_svg, "plot path: |q(t)| per mu");

    auto* counter = app.add_subcommand(
        "counterexample",
        "two-rate family with a negative rate but monotonically decaying Kolmogorov distance");
    counter->add_option("--gamma1", config.gamma1, "rate 1: const:A or sin:B,A[,W] for A + B cos(W t)");
    counter->add_option("--gamma2", config.gamma2, "rate 2, same grammar");
    counter->add_option("--t-end", config.t_end, "demonstration horizon")->required();
    counter->add_option("--out-json", config.out_json, "report JSON path");

    auto* mc = app.add_subcommand("mc-check", "trajectory-level Monte Carlo cross-check of q(t)");
    mc->add_option("--wtd", config.wtd, "waiting-time DSL");
    mc->add_option("--wtd-file", config.wtd_file, "JSON spec file instead of --wtd");
    mc->add_option("--n-traj", config.n_traj, "number of trajectories")->required();
    mc->add_option("--seed", config.seed, "RNG seed")->required();
    mc->add_option("--grid-points", config.mc_grid_points, "comparison grid size");
    mc->add_option("--out-json", config.out_json, "summary JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return nmk::cli::kExitValidation;
    }

    if (analyze->parsed()) config.command = Command::analyze;
    else if (erlang->parsed()) config.command = Command::erlang_sweep;
    else if (mixture->parsed()) config.command = Command::mixture_sweep;
    else if (counter->parsed()) config.command = Command::counterexample;
    else if (mc->parsed()) config.command = Command::mc_check;

    return nmk::cli::run(config, std::cout, std::cerr);
}
