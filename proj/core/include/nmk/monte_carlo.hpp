#pragma once

#include <cstdint>
#include <vector>

#include "nmk/semi_markov.hpp"
#include "nmk/waiting_time.hpp"

namespace nmk {

/// Empirical estimate of q(t) = P(even jumps) - P(odd jumps) from simulated
/// renewal trajectories.
struct EmpiricalQ {
    std::vector<double> grid;
    std::vector<double> q_hat;
    std::vector<double> stderr_;  // sqrt((1 - q_hat^2) / n_traj)
    long n_traj = 0;
    std::uint64_t seed = 0;

    bool operator==(const EmpiricalQ&) const = default;
};

/// Simulates n_traj independent jump trajectories (each drawn until the
/// first jump beyond the last grid time) and averages the jump-count parity
/// (-1)^N(t) at every grid time. Deterministic for a given seed independent
/// of thread count: trajectory i always uses substream (seed, i) and parity
/// counts are integers, so the merge order cannot matter.
EmpiricalQ simulate_q(const WaitingTimeSpec& spec, const std::vector<double>& grid, long n_traj,
                      std::uint64_t seed);

/// Max over the grid of |q_hat - q(t)| / stderr. Points with zero standard
/// error contribute 0 when the values agree exactly and +inf otherwise.
/// Values <= 4 are statistically consistent.
double compare(const EmpiricalQ& emp, const QFunction& qf);

}  // namespace nmk
