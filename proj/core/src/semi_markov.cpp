#include "nmk/semi_markov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "nmk/laplace.hpp"

namespace nmk {

RationalFunction q_hat(const WaitingTimeSpec& spec) {
    const RationalFunction f = laplace(spec);
    Polynomial num = f.den() - f.num();  // D - N, vanishes at u = 0
    const Polynomial den = f.den() + f.num();

    // Divide the exact factor u out of D - N.
    const auto& c = num.coeffs();
    if (std::abs(c[0]) > 1e-9 * num.coeff_scale())
        throw std::runtime_error("transform reduction failed: no zero at u=0 to cancel");
    std::vector<double> shifted(c.begin() + 1, c.end());
    if (shifted.empty()) throw std::runtime_error("transform reduction failed: trivial numerator");

    RationalFunction q(Polynomial(std::move(shifted)), den);
    if (q.den().degree() != q.num().degree() + 1)
        throw std::runtime_error("transform reduction failed: q̂ is not strictly proper of defect 1");
    // Initial-value theorem: u q̂(u) -> q(0) = 1.
    const double lead_ratio = q.num().leading() / q.den().leading();
    if (std::abs(lead_ratio - 1.0) > 1e-9)
        throw std::runtime_error("transform reduction failed: initial value differs from 1");
    return q;
}

QFunction q_time_domain(const WaitingTimeSpec& spec) {
    QFunction qf;
    qf.spec = spec;
    qf.q = inverse_laplace(q_hat(spec));
    qf.dq = qf.q.derivative();
    if (std::abs(qf.q.eval(0.0) - 1.0) > 1e-9)
        throw std::runtime_error("q(0) differs from 1 beyond tolerance");
    if (!qf.q.all_poles_decaying())
        throw std::runtime_error("q has a non-decaying mode");
    return qf;
}

StochasticMatrix map_at(const QFunction& qf, double t) {
    const double q = qf.eval(t);
    SquareMatrix m(2);
    m.at(0, 0) = m.at(1, 1) = 0.5 * (1.0 + q);
    m.at(0, 1) = m.at(1, 0) = 0.5 * (1.0 - q);
    return StochasticMatrix(std::move(m));
}

GammaRate gamma_rate(const QFunction& qf, double t, double pole_tol) {
    if (t < 0.0) throw std::invalid_argument("negative time");
    GammaRate out;
    const double q = qf.eval(t);
    if (std::abs(q) > pole_tol) {
        out.value = -qf.eval_derivative(t) / (2.0 * q);
        return out;
    }
    out.is_pole = true;
    out.value = std::numeric_limits<double>::quiet_NaN();
    // One-sided limit signs from evaluations just off the pole.
    const double osc = qf.q.max_imag_pole();
    const double decay = qf.q.slowest_decay();
    const double char_time = 1.0 / std::max(osc, decay);
    const double delta = 1e-6 * char_time;
    auto side_sign = [&](double tau) -> int {
        if (tau < 0.0) return 0;
        const double qs = qf.eval(tau);
        if (std::abs(qs) <= pole_tol) return 0;
        const double g = -qf.eval_derivative(tau) / (2.0 * qs);
        return (g > 0.0) - (g < 0.0);
    };
    out.left_sign = side_sign(t - delta);
    out.right_sign = side_sign(t + delta);
    return out;
}

namespace {

// Bisection refinement of a bracketed sign change, followed by a few Newton
// steps (exp-polynomial zeros have no closed form).
double refine_zero(const ExpPolynomial& f, const ExpPolynomial& df, double lo, double hi) {
    double flo = f.eval(lo);
    if (flo == 0.0) return lo;
    for (int it = 0; it < 80 && hi - lo > 1e-16 * std::max(1.0, hi); ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f.eval(mid);
        if (fm == 0.0) return mid;
        if ((flo < 0.0) != (fm < 0.0)) {
            hi = mid;
        } else {
            lo = mid;
            flo = fm;
        }
    }
    double x = 0.5 * (lo + hi);
    for (int it = 0; it < 4; ++it) {
        const double fx = f.eval(x);
        const double dfx = df.eval(x);
        if (dfx == 0.0) break;
        const double step = fx / dfx;
        const double next = x - step;
        if (next < lo || next > hi) break;
        x = next;
        if (std::abs(step) <= 1e-17 * std::max(1.0, x)) break;
    }
    return x;
}

// All sign-change roots of f on (0, horizon], scanned on a grid resolving
// the fastest oscillation.
std::vector<double> scan_roots(const ExpPolynomial& f, const ExpPolynomial& df, double horizon,
                               double step) {
    std::vector<double> out;
    double prev_t = 0.0;
    double prev_v = f.eval(0.0);
    const long cells = std::lround(std::ceil(horizon / step));
    for (long i = 1; i <= cells; ++i) {
        const double t = std::min(horizon, i * step);
        const double v = f.eval(t);
        if (prev_v == 0.0) {
            out.push_back(prev_t);
        } else if (v != 0.0 && (prev_v < 0.0) != (v < 0.0)) {
            out.push_back(refine_zero(f, df, prev_t, t));
        }
        prev_t = t;
        prev_v = v;
    }
    if (prev_v == 0.0) out.push_back(prev_t);
    return out;
}

}  // namespace

CriticalStructure critical_structure(const QFunction& qf, double tail_tol) {
    if (!(tail_tol > 0.0) || tail_tol > 1.0)
        throw std::invalid_argument("tail_tol must lie in (0, 1]");
    CriticalStructure cs;
    if (tail_tol >= 1.0) return cs;  // |q| <= 1 everywhere: degenerate request

    const double decay = qf.q.slowest_decay();
    if (!(decay > 0.0)) throw std::runtime_error("q has a non-decaying mode");
    const double osc = qf.q.max_imag_pole();

    // Beyond T the total remaining increase of |q| is bounded by the pole
    // envelope at T times a geometric factor counting future oscillations.
    const double half_period = osc > 0.0 ? std::numbers::pi / osc : 0.0;
    const double geom = osc > 0.0 ? 1.0 / (1.0 - std::exp(-decay * half_period)) : 1.0;
    auto tail_bound_at = [&](double t) { return qf.q.envelope(t) * geom; };

    // Envelope terms t^m e^(Re p t) all decrease past max(m / -Re p).
    double t_mono = 0.0;
    for (const auto& term : qf.q.terms())
        if (term.power > 0) t_mono = std::max(t_mono, term.power / -term.pole.real());
    double lo = t_mono;
    double horizon = std::max(t_mono, 1.0 / decay);
    while (tail_bound_at(horizon) >= tail_tol) {
        lo = horizon;
        horizon *= 2.0;
    }
    if (tail_bound_at(lo) >= tail_tol) {
        // Smallest time with the tail bound below tolerance.
        for (int it = 0; it < 60; ++it) {
            const double mid = 0.5 * (lo + horizon);
            (tail_bound_at(mid) < tail_tol ? horizon : lo) = mid;
        }
    } else {
        horizon = lo;
    }
    cs.horizon = horizon;
    cs.tail_bound = tail_bound_at(horizon);

    // >= 20 samples per oscillation period, and never coarser than a decay
    // time / 20 for purely real spectra.
    double step = (osc > 0.0) ? 2.0 * std::numbers::pi / (20.0 * osc) : 0.0;
    const double decay_step = 1.0 / (20.0 * decay);
    step = (step > 0.0) ? std::min(step, decay_step) : decay_step;

    const ExpPolynomial ddq = qf.dq.derivative();
    cs.zeros = scan_roots(qf.q, qf.dq, horizon, step);
    cs.extrema = scan_roots(qf.dq, ddq, horizon, step);

    // Partition by all events; classify each cell by the sign of d|q|/dt at
    // its midpoint and merge adjacent increasing cells.
    std::vector<double> events;
    events.push_back(0.0);
    events.insert(events.end(), cs.zeros.begin(), cs.zeros.end());
    events.insert(events.end(), cs.extrema.begin(), cs.extrema.end());
    events.push_back(horizon);
    std::sort(events.begin(), events.end());
    events.erase(std::unique(events.begin(), events.end(),
                             [&](double a, double b) { return b - a <= 1e-12 * std::max(1.0, b); }),
                 events.end());

    bool open = false;
    double start = 0.0;
    for (size_t i = 0; i + 1 < events.size(); ++i) {
        const double mid = 0.5 * (events[i] + events[i + 1]);
        const double q = qf.eval(mid);
        const double slope = (q >= 0.0 ? 1.0 : -1.0) * qf.eval_derivative(mid);
        const bool increasing = slope > 0.0;
        if (increasing && !open) {
            open = true;
            start = events[i];
        } else if (!increasing && open) {
            open = false;
            cs.increase_intervals.emplace_back(start, events[i]);
        }
    }
    if (open) cs.increase_intervals.emplace_back(start, events.back());
    return cs;
}

MapFamily two_site_family(const QFunction& qf, double t_max) {
    return MapFamily([qf](double t) { return map_at(qf, t); }, t_max);
}

}  // namespace nmk
