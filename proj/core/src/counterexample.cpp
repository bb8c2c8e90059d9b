#include "nmk/counterexample.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "nmk/format.hpp"
#include "nmk/quadrature.hpp"

namespace nmk {

RateFunction RateFunction::constant(double value) {
    RateFunction f;
    f.kind_ = Kind::constant;
    f.offset_ = value;
    return f;
}

RateFunction RateFunction::sinusoid(double amplitude, double offset, double omega) {
    if (!(omega > 0.0)) throw std::invalid_argument("sinusoid rate needs omega > 0");
    RateFunction f;
    f.kind_ = Kind::sinusoid;
    f.amplitude_ = amplitude;
    f.offset_ = offset;
    f.omega_ = omega;
    return f;
}

RateFunction RateFunction::tabulated(std::vector<double> times, std::vector<double> values) {
    if (times.size() != values.size() || times.size() < 2)
        throw std::invalid_argument("tabulated rate needs >= 2 samples");
    for (size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("tabulated rate times must be strictly increasing");
    RateFunction f;
    f.kind_ = Kind::tabulated;
    f.times_ = std::move(times);
    f.values_ = std::move(values);
    return f;
}

double RateFunction::operator()(double t) const {
    switch (kind_) {
        case Kind::constant:
            return offset_;
        case Kind::sinusoid:
            return offset_ + amplitude_ * std::cos(omega_ * t);
        case Kind::tabulated: {
            if (t <= times_.front()) return values_.front();
            if (t >= times_.back()) return values_.back();
            const auto it = std::upper_bound(times_.begin(), times_.end(), t);
            const size_t hi = static_cast<size_t>(it - times_.begin());
            const double w = (t - times_[hi - 1]) / (times_[hi] - times_[hi - 1]);
            return values_[hi - 1] * (1.0 - w) + values_[hi] * w;
        }
    }
    return 0.0;
}

double RateFunction::integral(double t) const {
    switch (kind_) {
        case Kind::constant:
            return offset_ * t;
        case Kind::sinusoid:
            return offset_ * t + amplitude_ / omega_ * std::sin(omega_ * t);
        case Kind::tabulated: {
            double acc = 0.0, prev_t = 0.0;
            double prev_v = (*this)(0.0);
            for (size_t i = 0; i < times_.size() && times_[i] < t; ++i) {
                if (times_[i] <= prev_t) continue;
                acc += 0.5 * ((*this)(times_[i]) + prev_v) * (times_[i] - prev_t);
                prev_t = times_[i];
                prev_v = (*this)(times_[i]);
            }
            acc += 0.5 * ((*this)(t) + prev_v) * (t - prev_t);
            return acc;
        }
    }
    return 0.0;
}

double RateFunction::period() const {
    return (kind_ == Kind::sinusoid && amplitude_ != 0.0) ? 2.0 * std::numbers::pi / omega_ : 0.0;
}

RateFunction RateFunction::parse(const std::string& text) {
    auto numbers_after = [&](size_t colon) {
        std::vector<double> out;
        std::string rest = text.substr(colon + 1);
        std::replace(rest.begin(), rest.end(), ',', ' ');
        std::istringstream in(rest);
        double v;
        while (in >> v) out.push_back(v);
        return out;
    };
    const size_t colon = text.find(':');
    if (colon == std::string::npos) {
        // Bare number: a constant rate.
        try {
            size_t used = 0;
            double v = std::stod(text, &used);
            if (used == text.size()) return constant(v);
        } catch (...) {
        }
        throw std::invalid_argument("rate must look like 'const:A' or 'sin:B,A[,W]'");
    }
    const std::string head = text.substr(0, colon);
    const auto args = numbers_after(colon);
    if (head == "const" && args.size() == 1) return constant(args[0]);
    if (head == "sin" && (args.size() == 2 || args.size() == 3))
        return sinusoid(args[0], args[1], args.size() == 3 ? args[2] : 1.0);
    throw std::invalid_argument("rate must look like 'const:A' or 'sin:B,A[,W]'");
}

std::string RateFunction::describe() const {
    switch (kind_) {
        case Kind::constant:
            return "const:" + to_string_g17(offset_);
        case Kind::sinusoid: {
            std::string s = "sin:" + to_string_g17(amplitude_) + "," + to_string_g17(offset_);
            if (omega_ != 1.0) s += "," + to_string_g17(omega_);
            return s;
        }
        case Kind::tabulated:
            return "table[" + std::to_string(times_.size()) + "]";
    }
    return {};
}

namespace {

double checked_integral(const RateFunction& f, double t) {
    if (t == 0.0) return 0.0;
    if (f.is_parametric()) {
        const double closed = f.integral(t);
        // Keep the closed form honest against quadrature; both paths exist
        // for exactly this cross-check.
        const double quad = integrate([&](double x) { return f(x); }, 0.0, t, 1e-10);
        if (std::abs(closed - quad) > 1e-9 * std::max(1.0, std::abs(closed)))
            throw std::runtime_error("rate integral: closed form and quadrature disagree");
        return closed;
    }
    return f.integral(t);
}

}  // namespace

ModelValidation validate_model(const TwoRateModel& m, const std::vector<double>& grid) {
    ModelValidation res;
    if (grid.size() < 2) {
        res.ok = false;
        res.violations.push_back("validation grid needs at least 2 points");
        return res;
    }
    bool g1_bad = false, sum_bad = false, int_bad = false;
    double cum = 0.0, prev_t = grid.front();
    for (size_t i = 0; i < grid.size(); ++i) {
        const double t = grid[i];
        const double g1 = m.gamma1(t), g2 = m.gamma2(t);
        if (!g1_bad && g1 < -1e-12) {
            g1_bad = true;
            res.violations.push_back("gamma1 < 0 at t = " + to_string_g17(t));
        }
        if (!sum_bad && g1 + g2 < -1e-12) {
            sum_bad = true;
            res.violations.push_back("gamma1 + gamma2 < 0 at t = " + to_string_g17(t));
        }
        if (g2 < 0.0) res.is_counterexample = true;
        if (i > 0) cum += integrate([&](double x) { return m.gamma2(x); }, prev_t, t, 1e-12);
        if (!int_bad && cum < -1e-9) {
            int_bad = true;
            res.violations.push_back("integral of gamma2 < 0 at t = " + to_string_g17(t));
        }
        prev_t = t;
    }
    res.ok = res.violations.empty();
    if (res.ok && !res.is_counterexample)
        res.note = "not a counterexample: gamma2 never negative";
    return res;
}

double dk_closed_form(const TwoRateModel& m, double initial_distance, double t) {
    const double total = checked_integral(m.gamma1, t) + checked_integral(m.gamma2, t);
    return initial_distance * std::exp(-total);
}

GeneratorMatrix model_generator(const TwoRateModel& m, double t) {
    const double g1 = m.gamma1(t), g2 = m.gamma2(t);
    SquareMatrix gen(2);
    gen.at(0, 0) = -g1;
    gen.at(0, 1) = g2;
    gen.at(1, 0) = g1;
    gen.at(1, 1) = -g2;
    return GeneratorMatrix(std::move(gen));
}

MapFamily model_family(const TwoRateModel& m, double t_max) {
    auto evaluator = [m](double t) {
        SquareMatrix lam(2);
        if (t == 0.0) return StochasticMatrix(SquareMatrix::identity(2));
        auto gen = [&m](double tau) { return model_generator(m, tau); };
        for (int col = 0; col < 2; ++col) {
            const auto traj = propagate(gen, ProbabilityVector::vertex(2, col), {t});
            lam.at(0, col) = traj[0][0];
            lam.at(1, col) = traj[0][1];
        }
        return StochasticMatrix(std::move(lam));
    };
    return MapFamily(evaluator, t_max);
}

DemonstrationReport demonstrate(const TwoRateModel& m, double t_end) {
    if (!(t_end > 0.0)) throw std::invalid_argument("demonstrate: t_end must be positive");

    // Dense certification grid: 1e4 points per oscillation period.
    double period = std::max(m.gamma1.period(), m.gamma2.period());
    if (period == 0.0) period = t_end;
    const double step = period / 1e4;
    std::vector<double> dense;
    for (double t = 0.0; t < t_end; t += step) dense.push_back(t);
    dense.push_back(t_end);

    const auto validation = validate_model(m, dense);
    if (!validation.ok) {
        std::string msg = "invalid model:";
        for (const auto& v : validation.violations) msg += " " + v + ";";
        throw std::invalid_argument(msg);
    }
    if (!validation.is_counterexample) throw std::invalid_argument("not a counterexample");

    DemonstrationReport rep;
    rep.t_end = t_end;
    rep.is_counterexample = true;

    // Negative-rate witness: W_12(t) = gamma2(t) < 0 violates P-divisibility.
    double worst = 0.0, worst_t = 0.0;
    for (double t : dense) {
        const double g2 = m.gamma2(t);
        if (g2 < worst) {
            worst = g2;
            worst_t = t;
        }
    }
    const SquareMatrix w = w_rates(model_generator(m, worst_t));
    rep.witness_time = worst_t;
    rep.witness_row = 0;
    rep.witness_col = 1;
    rep.witness_value = w.at(0, 1);
    rep.p_divisible = false;

    // Closed-form distance against the propagated pair.
    const int samples = 2001;
    rep.times.resize(samples);
    for (int i = 0; i < samples; ++i) rep.times[static_cast<size_t>(i)] = t_end * i / (samples - 1);
    auto gen = [&m](double tau) { return model_generator(m, tau); };
    const auto traj1 = propagate(gen, ProbabilityVector::vertex(2, 0), rep.times);
    const auto traj2 = propagate(gen, ProbabilityVector::vertex(2, 1), rep.times);
    rep.dk_closed.resize(samples);
    rep.dk_ode.resize(samples);
    rep.dk_monotone = true;
    for (int i = 0; i < samples; ++i) {
        const size_t g = static_cast<size_t>(i);
        rep.dk_closed[g] = dk_closed_form(m, 1.0, rep.times[g]);
        rep.dk_ode[g] = kolmogorov_distance(traj1[g], traj2[g]);
        rep.max_closed_vs_ode =
            std::max(rep.max_closed_vs_ode, std::abs(rep.dk_closed[g] - rep.dk_ode[g]));
        if (i > 0 && rep.dk_closed[g] > rep.dk_closed[g - 1] + 1e-12) rep.dk_monotone = false;
    }

    std::ostringstream verdict;
    verdict << "D_K monotone: " << (rep.dk_monotone ? "yes" : "no")
            << "; P-divisible: " << (rep.p_divisible ? "yes" : "no");
    rep.verdict = verdict.str();
    return rep;
}

}  // namespace nmk
