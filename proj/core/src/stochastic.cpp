#include "nmk/stochastic.hpp"

#include <Eigen/Dense>
#include <atomic>
#include <cmath>
#include <iostream>
#include <sstream>
#include <stdexcept>

namespace nmk {

namespace {

std::atomic<long> g_clamped_entries{0};

// Entries in [-tol, 0) are numerical noise around zero; zero them and note it.
int clamp_small_negatives(std::vector<double>& v, double tol) {
    int clamped = 0;
    for (double& x : v) {
        if (x < 0.0 && x >= -tol) {
            x = 0.0;
            ++clamped;
        }
    }
    if (clamped > 0) {
        long total = g_clamped_entries.fetch_add(clamped) + clamped;
        if (total <= 20)  // avoid drowning logs in long sweeps
            std::clog << "nmk: clamped " << clamped << " slightly negative entr"
                      << (clamped == 1 ? "y" : "ies") << " to zero\n";
    }
    return clamped;
}

Eigen::MatrixXd to_eigen(const SquareMatrix& m) {
    Eigen::MatrixXd out(m.n, m.n);
    for (int j = 0; j < m.n; ++j)
        for (int k = 0; k < m.n; ++k) out(j, k) = m.at(j, k);
    return out;
}

SquareMatrix from_eigen(const Eigen::MatrixXd& e) {
    SquareMatrix out(static_cast<int>(e.rows()));
    for (int j = 0; j < out.n; ++j)
        for (int k = 0; k < out.n; ++k) out.at(j, k) = e(j, k);
    return out;
}

}  // namespace

StochasticityCheck is_stochastic(const SquareMatrix& m, double tol) {
    StochasticityCheck res;
    for (int j = 0; j < m.n; ++j)
        for (int k = 0; k < m.n; ++k) {
            const double v = m.at(j, k);
            if (v < res.most_negative) {
                res.most_negative = v;
                res.j = j;
                res.k = k;
            }
        }
    for (int k = 0; k < m.n; ++k) {
        double sum = 0.0;
        for (int j = 0; j < m.n; ++j) sum += m.at(j, k);
        res.worst_column_residual = std::max(res.worst_column_residual, std::abs(sum - 1.0));
    }
    res.ok = res.most_negative >= -tol && res.worst_column_residual <= tol;
    return res;
}

ProbabilityVector::ProbabilityVector(std::vector<double> entries) : entries_(std::move(entries)) {
    if (entries_.empty()) throw std::invalid_argument("probability vector must be non-empty");
    clamp_small_negatives(entries_, 1e-9);
    double sum = 0.0;
    for (double p : entries_) {
        if (p < 0.0 || !std::isfinite(p))
            throw std::invalid_argument("probability vector entry is negative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > 1e-9)
        throw std::invalid_argument("probability vector does not sum to 1");
    if (std::abs(sum - 1.0) > 1e-12)
        for (double& p : entries_) p /= sum;
}

ProbabilityVector ProbabilityVector::vertex(int n, int k) {
    std::vector<double> e(static_cast<size_t>(n), 0.0);
    e[static_cast<size_t>(k)] = 1.0;
    return ProbabilityVector(std::move(e));
}

StochasticMatrix::StochasticMatrix(SquareMatrix m, double tol) : m_(std::move(m)) {
    clamp_small_negatives(m_.data, tol);
    const auto check = is_stochastic(m_, tol);
    if (!check.ok) {
        std::ostringstream msg;
        msg << "matrix is not column-stochastic (most negative entry " << check.most_negative
            << " at (" << check.j << "," << check.k << "), worst column residual "
            << check.worst_column_residual << ")";
        throw std::invalid_argument(msg.str());
    }
}

GeneratorMatrix::GeneratorMatrix(SquareMatrix m, double tol) : m_(std::move(m)) {
    for (int k = 0; k < m_.n; ++k) {
        double sum = 0.0, scale = 0.0;
        for (int j = 0; j < m_.n; ++j) {
            sum += m_.at(j, k);
            scale = std::max(scale, std::abs(m_.at(j, k)));
        }
        if (std::abs(sum) > tol * std::max(1.0, scale))
            throw std::invalid_argument("generator columns must sum to zero");
    }
}

MapFamily::MapFamily(std::function<StochasticMatrix(double)> evaluator, double t_max)
    : eval_(std::move(evaluator)), t_max_(t_max) {
    const StochasticMatrix at0 = eval_(0.0);
    dim_ = at0.size();
    for (int j = 0; j < dim_; ++j)
        for (int k = 0; k < dim_; ++k) {
            const double want = (j == k) ? 1.0 : 0.0;
            if (std::abs(at0.at(j, k) - want) > 1e-9)
                throw std::invalid_argument("map family must start at the identity");
        }
}

double kolmogorov_distance(const ProbabilityVector& p1, const ProbabilityVector& p2) {
    if (p1.size() != p2.size())
        throw std::invalid_argument("kolmogorov_distance: dimension mismatch");
    double acc = 0.0;
    for (int k = 0; k < p1.size(); ++k) acc += std::abs(p1[k] - p2[k]);
    return 0.5 * acc;
}

ProbabilityVector apply(const StochasticMatrix& m, const ProbabilityVector& p) {
    if (m.size() != p.size()) throw std::invalid_argument("apply: dimension mismatch");
    std::vector<double> out(static_cast<size_t>(m.size()), 0.0);
    for (int j = 0; j < m.size(); ++j) {
        double acc = 0.0;
        for (int k = 0; k < m.size(); ++k) acc += m.at(j, k) * p[k];
        out[static_cast<size_t>(j)] = acc;
    }
    return ProbabilityVector(std::move(out));
}

GeneratorMatrix generator_from_maps(const MapFamily& fam, double t, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("generator_from_maps: step must be positive");
    const double lo = t - h;
    if (lo < 0.0) throw std::invalid_argument("generator_from_maps: t - h must be >= 0");

    auto central = [&](double step) {
        Eigen::MatrixXd hi = to_eigen(fam(t + step).matrix());
        Eigen::MatrixXd lo2 = to_eigen(fam(t - step).matrix());
        return ((hi - lo2) / (2.0 * step)).eval();
    };
    // One Richardson extrapolation step kills the O(h^2) error term.
    Eigen::MatrixXd d_h = central(h);
    Eigen::MatrixXd d_h2 = central(0.5 * h);
    Eigen::MatrixXd deriv = (4.0 * d_h2 - d_h) / 3.0;

    Eigen::MatrixXd lambda = to_eigen(fam(t).matrix());
    Eigen::FullPivLU<Eigen::MatrixXd> lu(lambda);
    if (!lu.isInvertible() || 1.0 / lu.rcond() > 1e12) {
        std::ostringstream msg;
        msg << "map not invertible at t=" << t;
        throw std::runtime_error(msg.str());
    }
    Eigen::MatrixXd gen = deriv * lu.inverse();

    SquareMatrix out = from_eigen(gen);
    // Clean residual column sums (conservation holds analytically).
    for (int k = 0; k < out.n; ++k) {
        double sum = 0.0, scale = 0.0;
        for (int j = 0; j < out.n; ++j) {
            sum += out.at(j, k);
            scale = std::max(scale, std::abs(out.at(j, k)));
        }
        if (std::abs(sum) > 1e-6 * std::max(1.0, scale))
            throw std::runtime_error("extracted generator violates probability conservation");
        out.at(k, k) -= sum;
    }
    return GeneratorMatrix(std::move(out));
}

KolmogorovConditionsResult kolmogorov_conditions(const GeneratorMatrix& gen, double tol) {
    KolmogorovConditionsResult res;
    const int n = gen.size();
    for (int k = 0; k < n && res.ok; ++k)
        for (int j = 0; j < n && res.ok; ++j) {
            const double v = gen.at(j, k);
            const bool bad = (j == k) ? (v > tol) : (v < -tol);
            if (bad) {
                res.ok = false;
                res.j = j;
                res.k = k;
                res.value = v;
            }
        }
    return res;
}

SquareMatrix w_rates(const GeneratorMatrix& gen) {
    SquareMatrix w(gen.size());
    for (int j = 0; j < gen.size(); ++j)
        for (int k = 0; k < gen.size(); ++k) w.at(j, k) = (j == k) ? 0.0 : gen.at(j, k);
    return w;
}

PDivisibilityReport p_divisibility_check(const MapFamily& fam, const std::vector<double>& grid,
                                         double tol) {
    if (grid.size() < 2) throw std::invalid_argument("p_divisibility_check: need at least 2 grid times");
    PDivisibilityReport report;
    for (size_t i = 0; i + 1 < grid.size(); ++i)
        report.grid_resolution = std::max(report.grid_resolution, grid[i + 1] - grid[i]);

    for (size_t i = 0; i + 1 < grid.size(); ++i) {
        const double s = grid[i], t = grid[i + 1];
        Eigen::MatrixXd at_s = to_eigen(fam(s).matrix());
        Eigen::FullPivLU<Eigen::MatrixXd> lu(at_s);
        if (!lu.isInvertible() || 1.0 / lu.rcond() > 1e12) {
            report.indeterminate_at.push_back(s);
            continue;
        }
        Eigen::MatrixXd at_t = to_eigen(fam(t).matrix());
        SquareMatrix prop = from_eigen(at_t * lu.inverse());
        const auto check = is_stochastic(prop, tol);
        if (!check.ok)
            report.violations.push_back(
                {s, t, check.most_negative, check.j, check.k, check.worst_column_residual});
    }
    return report;
}

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double kC[7] = {0.0, 1.0 / 5, 3.0 / 10, 4.0 / 5, 8.0 / 9, 1.0, 1.0};
constexpr double kA[7][6] = {
    {},
    {1.0 / 5},
    {3.0 / 40, 9.0 / 40},
    {44.0 / 45, -56.0 / 15, 32.0 / 9},
    {19372.0 / 6561, -25360.0 / 2187, 64448.0 / 6561, -212.0 / 729},
    {9017.0 / 3168, -355.0 / 33, 46732.0 / 5247, 49.0 / 176, -5103.0 / 18656},
    {35.0 / 384, 0.0, 500.0 / 1113, 125.0 / 192, -2187.0 / 6784, 11.0 / 84},
};
constexpr double kB5[7] = {35.0 / 384,      0.0,  500.0 / 1113, 125.0 / 192,
                           -2187.0 / 6784, 11.0 / 84, 0.0};
constexpr double kB4[7] = {5179.0 / 57600,  0.0,         7571.0 / 16695, 393.0 / 640,
                           -92097.0 / 339200, 187.0 / 2100, 1.0 / 40};

}  // namespace

std::vector<std::vector<double>> propagate_linear(
    const std::function<GeneratorMatrix(double)>& generator, const std::vector<double>& x0,
    const std::vector<double>& output_times) {
    if (output_times.empty()) throw std::invalid_argument("propagate: empty output grid");
    for (size_t i = 0; i < output_times.size(); ++i) {
        if (output_times[i] < 0.0 || (i > 0 && output_times[i] < output_times[i - 1]))
            throw std::invalid_argument("propagate: output times must be sorted and nonnegative");
    }
    const int n = static_cast<int>(x0.size());
    const double rtol = 1e-10, atol = 1e-13;
    const double t_end = output_times.back();

    std::vector<double> y = x0;
    auto deriv = [&](double t, const std::vector<double>& state) {
        const GeneratorMatrix gen = generator(t);
        if (gen.size() != n) throw std::invalid_argument("propagate: generator dimension mismatch");
        std::vector<double> dy(static_cast<size_t>(n), 0.0);
        for (int j = 0; j < n; ++j) {
            double acc = 0.0;
            for (int k = 0; k < n; ++k) acc += gen.at(j, k) * state[static_cast<size_t>(k)];
            dy[static_cast<size_t>(j)] = acc;
        }
        return dy;
    };

    std::vector<std::vector<double>> out;
    out.reserve(output_times.size());
    auto emit = [&](const std::vector<double>& state) { out.push_back(state); };

    double t = 0.0;
    double h_ctrl = t_end > 0.0 ? t_end / 100.0 : 0.0;
    size_t next_out = 0;
    while (next_out < output_times.size() && output_times[next_out] <= t) {
        emit(y);
        ++next_out;
    }

    std::vector<std::vector<double>> k(7);
    while (next_out < output_times.size()) {
        const double target = output_times[next_out];
        const double h = std::min(h_ctrl, target - t);
        if (h <= 1e-14 * std::max(1.0, t_end))
            throw std::runtime_error("propagate: step-size underflow (stiff or singular generator)");

        k[0] = deriv(t, y);
        std::vector<double> stage(static_cast<size_t>(n));
        for (int s = 1; s < 7; ++s) {
            for (int i = 0; i < n; ++i) {
                double acc = y[static_cast<size_t>(i)];
                for (int q = 0; q < s; ++q) acc += h * kA[s][q] * k[static_cast<size_t>(q)][static_cast<size_t>(i)];
                stage[static_cast<size_t>(i)] = acc;
            }
            k[static_cast<size_t>(s)] = deriv(t + kC[s] * h, stage);
        }

        std::vector<double> y5(static_cast<size_t>(n)), y4(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            double acc5 = y[static_cast<size_t>(i)], acc4 = y[static_cast<size_t>(i)];
            for (int s = 0; s < 7; ++s) {
                acc5 += h * kB5[s] * k[static_cast<size_t>(s)][static_cast<size_t>(i)];
                acc4 += h * kB4[s] * k[static_cast<size_t>(s)][static_cast<size_t>(i)];
            }
            y5[static_cast<size_t>(i)] = acc5;
            y4[static_cast<size_t>(i)] = acc4;
        }

        double err = 0.0;
        for (int i = 0; i < n; ++i) {
            const double scale =
                atol + rtol * std::max(std::abs(y[static_cast<size_t>(i)]), std::abs(y5[static_cast<size_t>(i)]));
            err = std::max(err, std::abs(y5[static_cast<size_t>(i)] - y4[static_cast<size_t>(i)]) / scale);
        }

        if (err <= 1.0) {
            t += h;
            y = y5;
            while (next_out < output_times.size() &&
                   output_times[next_out] - t <= 1e-14 * std::max(1.0, t)) {
                emit(y);
                ++next_out;
            }
        }
        const double factor = (err > 0.0) ? 0.9 * std::pow(err, -0.2) : 5.0;
        h_ctrl = h * std::clamp(factor, 0.2, 5.0);
    }
    return out;
}

std::vector<ProbabilityVector> propagate(const std::function<GeneratorMatrix(double)>& generator,
                                         const ProbabilityVector& p0,
                                         const std::vector<double>& output_times) {
    const auto raw = propagate_linear(generator, p0.entries(), output_times);
    std::vector<ProbabilityVector> out;
    out.reserve(raw.size());
    for (const auto& state : raw) {
        std::vector<double> p = state;
        double sum = 0.0;
        for (double v : p) sum += v;
        if (std::abs(sum - 1.0) > 1e-8)
            throw std::runtime_error("propagate: normalization drift exceeds 1e-8");
        for (double& v : p) v /= sum;
        clamp_small_negatives(p, 1e-9);
        out.push_back(ProbabilityVector(std::move(p)));
    }
    return out;
}

}  // namespace nmk
