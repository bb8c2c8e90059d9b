#include "nmk/monte_carlo.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nmk/parallel.hpp"
#include "nmk/rng.hpp"

namespace nmk {

EmpiricalQ simulate_q(const WaitingTimeSpec& spec, const std::vector<double>& grid, long n_traj,
                      std::uint64_t seed) {
    if (grid.empty()) throw std::invalid_argument("simulate_q: empty grid");
    for (size_t i = 0; i < grid.size(); ++i)
        if (grid[i] < 0.0 || (i > 0 && grid[i] < grid[i - 1]))
            throw std::invalid_argument("simulate_q: grid must be sorted and nonnegative");
    if (n_traj < 1) throw std::invalid_argument("simulate_q: need at least one trajectory");
    {
        const auto violations = validate(spec);
        if (!violations.empty())
            throw std::invalid_argument("simulate_q: invalid spec: " + violations.front());
    }

    const size_t points = grid.size();
    const int workers = static_cast<int>(std::max<long>(1, std::min<long>(max_workers(), n_traj)));
    const long chunk = (n_traj + workers - 1) / workers;

    std::vector<std::vector<long long>> partial(static_cast<size_t>(workers),
                                                std::vector<long long>(points, 0));
    parallel_for(workers, [&](int w) {
        auto& counts = partial[static_cast<size_t>(w)];
        const long begin = w * chunk;
        const long end = std::min(n_traj, begin + chunk);
        for (long traj = begin; traj < end; ++traj) {
            Rng rng(seed, static_cast<std::uint64_t>(traj));
            double next_jump = sample(spec, rng);
            int parity = 1;
            for (size_t g = 0; g < points; ++g) {
                while (next_jump <= grid[g]) {
                    parity = -parity;
                    next_jump += sample(spec, rng);
                }
                counts[g] += parity;
            }
        }
    });

    EmpiricalQ out;
    out.grid = grid;
    out.n_traj = n_traj;
    out.seed = seed;
    out.q_hat.resize(points);
    out.stderr_.resize(points);
    for (size_t g = 0; g < points; ++g) {
        long long total = 0;
        for (const auto& counts : partial) total += counts[g];
        const double q = static_cast<double>(total) / static_cast<double>(n_traj);
        out.q_hat[g] = q;
        // Parity is a +-1 Bernoulli variable: Var = 1 - q^2 exactly.
        out.stderr_[g] = std::sqrt(std::max(0.0, 1.0 - q * q) / static_cast<double>(n_traj));
    }
    return out;
}

double compare(const EmpiricalQ& emp, const QFunction& qf) {
    double worst = 0.0;
    for (size_t g = 0; g < emp.grid.size(); ++g) {
        const double diff = std::abs(emp.q_hat[g] - qf.eval(emp.grid[g]));
        if (emp.stderr_[g] == 0.0) {
            if (diff > 1e-15) return std::numeric_limits<double>::infinity();
            continue;
        }
        worst = std::max(worst, diff / emp.stderr_[g]);
    }
    return worst;
}

}  // namespace nmk
