#pragma once

#include <utility>
#include <vector>

#include "nmk/semi_markov.hpp"
#include "nmk/stochastic.hpp"
#include "nmk/waiting_time.hpp"

namespace nmk {

/// Memory-effect measure: total increase of the Kolmogorov distance over
/// time, maximized over initial probability-vector pairs.
struct NonMarkovReport {
    double n_c = 0.0;
    std::vector<std::pair<double, double>> increase_intervals;
    std::vector<double> contributions;  // per-interval |q(b)| - |q(a)|, all > 0
    double horizon = 0.0;
    double tail_bound = 0.0;
    std::pair<std::vector<double>, std::vector<double>> maximizing_pair;
    std::vector<double> zeros;    // of q (two-site route only)
    std::vector<double> extrema;  // of dq/dt (two-site route only)
};

/// Exact interval-sum evaluation for the two-site process: N_C equals the
/// sum of |q(b_i)| - |q(a_i)| over the intervals where |q| increases. The
/// maximizing initial pair is (1,0), (0,1). Contributions below 1e-12 are
/// dropped as noise.
NonMarkovReport n_c_twosite(const WaitingTimeSpec& spec, double tail_tol = 1e-10);
NonMarkovReport n_c_twosite(const QFunction& qf, double tail_tol = 1e-10);

/// Grid evaluation for a general map family: sums positive increments of the
/// Kolmogorov distance along the grid for every ordered pair of simplex
/// vertices and returns the maximum. For N > 2 the vertex-pair restriction
/// is a lower bound on the maximum over all pairs of initial distributions.
NonMarkovReport n_c_general(const MapFamily& fam, const std::vector<double>& grid);

/// Rate of change of the Kolmogorov distance between the evolved pair, by
/// central finite difference with step h (one-sided at t < h).
double sigma(const MapFamily& fam, const ProbabilityVector& p1, const ProbabilityVector& p2,
             double t, double h);

/// Same vertex-pair grid evaluation, but driven by a time-local generator
/// instead of a map family: each pair's difference vector is integrated
/// through dx/dt = L(t) x and D_K = ||x||_1 / 2. This stays well-defined
/// for generators whose maps do not remain stochastic, where a MapFamily
/// cannot be constructed at all.
NonMarkovReport n_c_from_generator(const std::function<GeneratorMatrix(double)>& generator,
                                   int dimension, const std::vector<double>& grid);

struct SweepRow {
    double param = 0.0;  // n (Erlang order) or mu (mixing weight)
    double n_c = 0.0;
    double tail_bound = 0.0;
    double horizon = 0.0;
};

/// N_C versus the Erlang order n = 1..n_max at fixed rate lambda. Rows are
/// computed in parallel and merged by order; the values do not depend on
/// lambda.
std::vector<SweepRow> erlang_sweep(int n_max, double lambda, double tail_tol = 1e-10);

/// N_C for the convolution of two equal exponential mixtures
/// h = mu*l1*exp(-l1 t) + (1-mu)*l2*exp(-l2 t), l2 = ratio*l1, one row per
/// requested mu.
std::vector<SweepRow> mixture_sweep(const std::vector<double>& mus, double lambda1, double ratio,
                                    double tail_tol = 1e-10);

/// The mixture-sweep waiting-time tree for one mu.
WaitingTimeSpec mixture_convolution_spec(double mu, double lambda1, double ratio);

}  // namespace nmk
