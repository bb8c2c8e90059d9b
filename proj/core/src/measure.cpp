#include "nmk/measure.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nmk/parallel.hpp"

namespace nmk {

NonMarkovReport n_c_twosite(const WaitingTimeSpec& spec, double tail_tol) {
    return n_c_twosite(q_time_domain(spec), tail_tol);
}

NonMarkovReport n_c_twosite(const QFunction& qf, double tail_tol) {
    const CriticalStructure cs = critical_structure(qf, tail_tol);
    NonMarkovReport report;
    report.horizon = cs.horizon;
    report.tail_bound = cs.tail_bound;
    report.zeros = cs.zeros;
    report.extrema = cs.extrema;
    report.maximizing_pair = {{1.0, 0.0}, {0.0, 1.0}};
    for (const auto& [a, b] : cs.increase_intervals) {
        const double gain = std::abs(qf.eval(b)) - std::abs(qf.eval(a));
        if (gain <= 1e-12) continue;  // numerical noise floor
        report.increase_intervals.emplace_back(a, b);
        report.contributions.push_back(gain);
        report.n_c += gain;
    }
    return report;
}

NonMarkovReport n_c_general(const MapFamily& fam, const std::vector<double>& grid) {
    if (grid.size() < 2) throw std::invalid_argument("n_c_general: need at least 2 grid times");
    const int n = fam.dimension();

    // Evaluate the family once per grid time, then scan every vertex pair.
    std::vector<StochasticMatrix> maps;
    maps.reserve(grid.size());
    for (double t : grid) maps.push_back(fam(t));

    NonMarkovReport best;
    best.horizon = grid.back();
    best.n_c = -1.0;  // below any achievable value; first pair always wins
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const ProbabilityVector vi = ProbabilityVector::vertex(n, i);
            const ProbabilityVector vj = ProbabilityVector::vertex(n, j);
            std::vector<double> dk(grid.size());
            for (size_t g = 0; g < grid.size(); ++g)
                dk[g] = kolmogorov_distance(apply(maps[g], vi), apply(maps[g], vj));

            NonMarkovReport cand;
            cand.horizon = grid.back();
            cand.maximizing_pair = {vi.entries(), vj.entries()};
            bool open = false;
            double start = 0.0, acc = 0.0;
            for (size_t g = 0; g + 1 < grid.size(); ++g) {
                const double inc = dk[g + 1] - dk[g];
                if (inc > 0.0) {
                    if (!open) {
                        open = true;
                        start = grid[g];
                        acc = 0.0;
                    }
                    acc += inc;
                } else if (open) {
                    open = false;
                    if (acc > 1e-12) {
                        cand.increase_intervals.emplace_back(start, grid[g]);
                        cand.contributions.push_back(acc);
                        cand.n_c += acc;
                    }
                }
            }
            if (open && acc > 1e-12) {
                cand.increase_intervals.emplace_back(start, grid.back());
                cand.contributions.push_back(acc);
                cand.n_c += acc;
            }
            if (cand.n_c > best.n_c) best = std::move(cand);
        }
    }
    return best;
}

namespace {

NonMarkovReport report_from_dk_grid(const std::vector<double>& grid, const std::vector<double>& dk,
                                    std::pair<std::vector<double>, std::vector<double>> pair) {
    NonMarkovReport cand;
    cand.horizon = grid.back();
    cand.maximizing_pair = std::move(pair);
    bool open = false;
    double start = 0.0, acc = 0.0;
    for (size_t g = 0; g + 1 < grid.size(); ++g) {
        const double inc = dk[g + 1] - dk[g];
        if (inc > 0.0) {
            if (!open) {
                open = true;
                start = grid[g];
                acc = 0.0;
            }
            acc += inc;
        } else if (open) {
            open = false;
            if (acc > 1e-12) {
                cand.increase_intervals.emplace_back(start, grid[g]);
                cand.contributions.push_back(acc);
                cand.n_c += acc;
            }
        }
    }
    if (open && acc > 1e-12) {
        cand.increase_intervals.emplace_back(start, grid.back());
        cand.contributions.push_back(acc);
        cand.n_c += acc;
    }
    return cand;
}

}  // namespace

NonMarkovReport n_c_from_generator(const std::function<GeneratorMatrix(double)>& generator,
                                   int dimension, const std::vector<double>& grid) {
    if (grid.size() < 2) throw std::invalid_argument("n_c_from_generator: need at least 2 grid times");
    NonMarkovReport best;
    best.horizon = grid.back();
    best.n_c = -1.0;
    for (int i = 0; i < dimension; ++i)
        for (int j = i + 1; j < dimension; ++j) {
            std::vector<double> delta(static_cast<size_t>(dimension), 0.0);
            delta[static_cast<size_t>(i)] = 1.0;
            delta[static_cast<size_t>(j)] = -1.0;
            const auto traj = propagate_linear(generator, delta, grid);
            std::vector<double> dk(grid.size());
            for (size_t g = 0; g < grid.size(); ++g) {
                double norm1 = 0.0;
                for (double v : traj[g]) norm1 += std::abs(v);
                dk[g] = 0.5 * norm1;
            }
            auto cand = report_from_dk_grid(
                grid, dk,
                {ProbabilityVector::vertex(dimension, i).entries(),
                 ProbabilityVector::vertex(dimension, j).entries()});
            if (cand.n_c > best.n_c) best = std::move(cand);
        }
    return best;
}

double sigma(const MapFamily& fam, const ProbabilityVector& p1, const ProbabilityVector& p2,
             double t, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("sigma: step must be positive");
    auto dk = [&](double tau) {
        const StochasticMatrix m = fam(tau);
        return kolmogorov_distance(apply(m, p1), apply(m, p2));
    };
    if (t - h < 0.0) return (dk(t + h) - dk(t)) / h;
    return (dk(t + h) - dk(t - h)) / (2.0 * h);
}

std::vector<SweepRow> erlang_sweep(int n_max, double lambda, double tail_tol) {
    if (n_max < 1) throw std::invalid_argument("erlang_sweep: n_max must be >= 1");
    std::vector<SweepRow> rows(static_cast<size_t>(n_max));
    parallel_for(n_max, [&](int idx) {
        const int n = idx + 1;
        const auto report = n_c_twosite(WaitingTimeSpec::erlang(n, lambda), tail_tol);
        rows[static_cast<size_t>(idx)] = {static_cast<double>(n), report.n_c, report.tail_bound,
                                          report.horizon};
    });
    return rows;
}

WaitingTimeSpec mixture_convolution_spec(double mu, double lambda1, double ratio) {
    const double lambda2 = ratio * lambda1;
    auto half = WaitingTimeSpec::mixture({mu, 1.0 - mu}, {WaitingTimeSpec::exponential(lambda1),
                                                          WaitingTimeSpec::exponential(lambda2)});
    return WaitingTimeSpec::convolution({half, half});
}

std::vector<SweepRow> mixture_sweep(const std::vector<double>& mus, double lambda1, double ratio,
                                    double tail_tol) {
    for (double mu : mus)
        if (mu < 0.0 || mu > 1.0) throw std::invalid_argument("mixture_sweep: mu must lie in [0, 1]");
    std::vector<SweepRow> rows(mus.size());
    parallel_for(static_cast<int>(mus.size()), [&](int idx) {
        const double mu = mus[static_cast<size_t>(idx)];
        const auto report = n_c_twosite(mixture_convolution_spec(mu, lambda1, ratio), tail_tol);
        rows[static_cast<size_t>(idx)] = {mu, report.n_c, report.tail_bound, report.horizon};
    });
    return rows;
}

}  // namespace nmk
