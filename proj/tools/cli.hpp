#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace nmk::cli {

enum class Command { analyze, erlang_sweep, mixture_sweep, counterexample, mc_check };

/// Parsed command line; flags are validated before any computation starts.
struct CommandConfig {
    Command command = Command::analyze;

    std::string wtd;       // waiting-time DSL string
    std::string wtd_file;  // JSON spec file (machine callers)
    double tail_tol = 1e-10;
    int grid_points = 2000;
    std::string out_csv;
    std::string out_json;
    std::string out_svg;

    int n_max = 0;  // erlang-sweep
    double lambda = 1.0;

    std::vector<double> mus;  // mixture-sweep
    double lambda1 = 1.0;
    double ratio = 5.0;

    std::string gamma1 = "const:1";  // counterexample
    std::string gamma2 = "sin:1,0.5";
    double t_end = 0.0;

    long n_traj = 0;  // mc-check
    std::uint64_t seed = 0;
    int mc_grid_points = 50;
};

/// Exit codes: 0 success, 2 validation error, 3 numerical failure.
constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNumerical = 3;

int run(const CommandConfig& config, std::ostream& out, std::ostream& err);

}  // namespace nmk::cli
