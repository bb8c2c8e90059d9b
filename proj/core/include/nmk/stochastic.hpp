#pragma once

#include <functional>
#include <optional>
#include <vector>

namespace nmk {

/// Unvalidated dense real N x N matrix, row-major. Carrier for candidate
/// maps before the stochasticity conditions are checked.
struct SquareMatrix {
    int n = 0;
    std::vector<double> data;

    SquareMatrix() = default;
    explicit SquareMatrix(int size) : n(size), data(static_cast<size_t>(size) * size, 0.0) {}

    double& at(int j, int k) { return data[static_cast<size_t>(j) * n + k]; }
    double at(int j, int k) const { return data[static_cast<size_t>(j) * n + k]; }

    static SquareMatrix identity(int size) {
        SquareMatrix m(size);
        for (int i = 0; i < size; ++i) m.at(i, i) = 1.0;
        return m;
    }
};

struct StochasticityCheck {
    bool ok = true;
    double most_negative = 0.0;  // most negative entry found
    int j = -1, k = -1;          // its position
    double worst_column_residual = 0.0;
};

/// Entrywise nonnegativity (within tol) and unit column sums (within tol).
StochasticityCheck is_stochastic(const SquareMatrix& m, double tol = 1e-9);

/// Simplex vector: entries >= 0 summing to 1 within 1e-12 (entries in
/// [-1e-9, 0) are clamped to zero with a logged note, mirroring the map
/// tolerance).
class ProbabilityVector {
  public:
    explicit ProbabilityVector(std::vector<double> entries);

    int size() const { return static_cast<int>(entries_.size()); }
    double operator[](int k) const { return entries_[static_cast<size_t>(k)]; }
    const std::vector<double>& entries() const { return entries_; }

    /// k-th basis vector of dimension n.
    static ProbabilityVector vertex(int n, int k);

  private:
    std::vector<double> entries_;
};

/// Column-stochastic matrix: entries >= 0, each column sums to 1 within
/// 1e-9. Probability vectors are columns and evolve as p(t) = M p(0).
class StochasticMatrix {
  public:
    explicit StochasticMatrix(SquareMatrix m, double tol = 1e-9);

    int size() const { return m_.n; }
    double at(int j, int k) const { return m_.at(j, k); }
    const SquareMatrix& matrix() const { return m_; }

    static StochasticMatrix identity(int n) { return StochasticMatrix(SquareMatrix::identity(n)); }

  private:
    SquareMatrix m_;
};

/// Time-local generator: column sums vanish within 1e-9 (probability
/// conservation). Off-diagonal signs are deliberately unconstrained.
class GeneratorMatrix {
  public:
    explicit GeneratorMatrix(SquareMatrix m, double tol = 1e-9);

    int size() const { return m_.n; }
    double at(int j, int k) const { return m_.at(j, k); }
    const SquareMatrix& matrix() const { return m_; }

  private:
    SquareMatrix m_;
};

/// One-parameter family of dynamical maps t -> Lambda(t,0) on [0, t_max].
/// The evaluator must be reentrant and smooth enough for numerical
/// differentiation; Lambda(0,0) must be the identity.
class MapFamily {
  public:
    MapFamily(std::function<StochasticMatrix(double)> evaluator, double t_max);

    StochasticMatrix operator()(double t) const { return eval_(t); }
    double t_max() const { return t_max_; }
    int dimension() const { return dim_; }

  private:
    std::function<StochasticMatrix(double)> eval_;
    double t_max_;
    int dim_;
};

/// Half the L1 distance; in [0, 1], zero iff equal.
double kolmogorov_distance(const ProbabilityVector& p1, const ProbabilityVector& p2);

ProbabilityVector apply(const StochasticMatrix& m, const ProbabilityVector& p);

/// L(t) = dLambda/dt * Lambda^{-1} by Richardson-extrapolated central
/// differences with step h. Throws when Lambda(t,0) has condition number
/// above 1e12 ("map not invertible").
GeneratorMatrix generator_from_maps(const MapFamily& fam, double t, double h);

struct KolmogorovConditionsResult {
    bool ok = true;
    // First violating entry when !ok.
    int j = -1, k = -1;
    double value = 0.0;
};

/// Nonnegative off-diagonals, nonpositive diagonals, zero column sums, all
/// within tol.
KolmogorovConditionsResult kolmogorov_conditions(const GeneratorMatrix& gen, double tol);

/// Transition-rate matrix W with W_jk = L_jk for j != k and zero diagonal.
/// L is recovered as L_jk = W_jk - delta_jk * sum_l W_lk. Throws for
/// non-conservative input.
SquareMatrix w_rates(const GeneratorMatrix& gen);

struct PDivisibilityViolation {
    double s = 0.0, t = 0.0;
    double most_negative = 0.0;
    int j = -1, k = -1;
    double worst_column_residual = 0.0;
};

struct PDivisibilityReport {
    std::vector<PDivisibilityViolation> violations;
    std::vector<double> indeterminate_at;  // grid times with singular Lambda(s,0)
    double grid_resolution = 0.0;
    bool divisible() const { return violations.empty(); }
};

/// Checks Lambda(t,s) = Lambda(t,0) Lambda(s,0)^{-1} for stochasticity on
/// each adjacent grid pair s < t. Singular intermediate maps are recorded
/// as indeterminate, not as failures.
PDivisibilityReport p_divisibility_check(const MapFamily& fam, const std::vector<double>& grid,
                                         double tol = 1e-9);

/// Integrates the linear flow dx/dt = L(t) x from an arbitrary real vector,
/// reporting x at each requested output time (sorted, nonnegative).
/// Adaptive Dormand-Prince 5(4) with relative tolerance 1e-10; a step-size
/// underflow throws ("stiff or singular generator"). No simplex
/// constraints: generators violating the Kolmogorov conditions may push
/// probability vectors off the simplex, but difference vectors and
/// Kolmogorov distances remain well-defined.
std::vector<std::vector<double>> propagate_linear(
    const std::function<GeneratorMatrix(double)>& generator, const std::vector<double>& x0,
    const std::vector<double>& output_times);

/// Integrates dp/dt = L(t) p from p0, reporting p at each requested output
/// time (sorted, nonnegative). Same integrator as propagate_linear; output
/// vectors are renormalized, and a normalization drift beyond 1e-8 throws
/// ("stiff or singular generator"), as does an off-simplex excursion.
std::vector<ProbabilityVector> propagate(const std::function<GeneratorMatrix(double)>& generator,
                                         const ProbabilityVector& p0,
                                         const std::vector<double>& output_times);

}  // namespace nmk
