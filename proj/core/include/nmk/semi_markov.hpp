#pragma once

#include <vector>

#include "nmk/exp_polynomial.hpp"
#include "nmk/rational.hpp"
#include "nmk/stochastic.hpp"
#include "nmk/waiting_time.hpp"

namespace nmk {

/// q(t) for a two-site semi-Markov process with site-independent waiting
/// time: the probability of an even number of jumps up to t minus the
/// probability of an odd number. q(0) = 1, |q| <= 1, and q -> 0.
struct QFunction {
    ExpPolynomial q;
    ExpPolynomial dq;  // time derivative of q
    WaitingTimeSpec spec;

    double eval(double t) const { return q.eval(t); }
    double eval_derivative(double t) const { return dq.eval(t); }
};

/// Critical-point structure of |q(t)| on [0, horizon].
struct CriticalStructure {
    std::vector<double> zeros;    // times with q = 0
    std::vector<double> extrema;  // times with dq/dt = 0
    double horizon = 0.0;         // beyond this, |q| stays below the tail bound
    double tail_bound = 0.0;      // bound on total |q|-increase past the horizon
    std::vector<std::pair<double, double>> increase_intervals;  // where |q| grows
};

/// Laplace transform of q: q̂(u) = (1 - f̂(u)) / (u (1 + f̂(u))). The zero of
/// 1 - f̂ at u = 0 cancels the 1/u prefactor exactly; a cancellation failure
/// beyond tolerance throws std::runtime_error("transform reduction failed").
RationalFunction q_hat(const WaitingTimeSpec& spec);

/// Exact time-domain q via partial fractions of q_hat.
QFunction q_time_domain(const WaitingTimeSpec& spec);

/// The dynamical map at time t:
///   Lambda(t,0) = 1/2 [[1+q, 1-q], [1-q, 1+q]].
StochasticMatrix map_at(const QFunction& qf, double t);

/// Time-local rate gamma(t) = -(dq/dt) / (2 q). At zeros of q the rate
/// diverges; such times are reported as pole markers with the one-sided
/// limit signs instead of a finite value.
struct GammaRate {
    double value = 0.0;  // NaN when is_pole
    bool is_pole = false;
    int left_sign = 0;   // sign of gamma just before the pole
    int right_sign = 0;  // sign just after
};
GammaRate gamma_rate(const QFunction& qf, double t, double pole_tol = 1e-12);

/// Zeros, extrema and increase intervals of |q| up to a horizon where the
/// pole envelope guarantees the remaining tail contributes less than
/// tail_tol. tail_tol must lie in (0, 1]; tail_tol = 1 yields the empty
/// structure.
CriticalStructure critical_structure(const QFunction& qf, double tail_tol);

/// The map family generated by q on [0, t_max].
MapFamily two_site_family(const QFunction& qf, double t_max);

}  // namespace nmk
