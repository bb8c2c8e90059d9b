#include "nmk/polynomial.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "detail/complex_poly.hpp"

namespace nmk {

using detail::cplx;

Polynomial::Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.empty()) coeffs_.push_back(0.0);
    normalize();
}

void Polynomial::normalize() {
    // Only exact zeros are trimmed here: a small leading coefficient can be
    // perfectly meaningful next to large low-order ones. Cancellation-aware
    // trimming lives in operator+= / operator-=, which know the inputs.
    while (coeffs_.size() > 1 && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::eval(double u) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * u + *it;
    return acc;
}

std::complex<double> Polynomial::eval(std::complex<double> u) const {
    return detail::eval_poly(coeffs_, u);
}

Polynomial Polynomial::derivative() const {
    if (degree() == 0) return Polynomial(0.0);
    std::vector<double> d(coeffs_.size() - 1);
    for (size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = coeffs_[k] * static_cast<double>(k);
    return Polynomial(std::move(d));
}

double Polynomial::coeff_scale() const {
    double s = 0.0;
    for (double c : coeffs_) s = std::max(s, std::abs(c));
    return s;
}

namespace {

// Degree bookkeeping after a sum: a leading coefficient that is roundoff
// noise relative to the operands that produced it gets dropped.
void trim_cancelled_lead(std::vector<double>& out, const std::vector<double>& a,
                         const std::vector<double>& b) {
    while (out.size() > 1) {
        const size_t top = out.size() - 1;
        const double in_scale = (top < a.size() ? std::abs(a[top]) : 0.0) +
                                (top < b.size() ? std::abs(b[top]) : 0.0);
        if (std::abs(out.back()) > 1e-12 * in_scale) break;
        out.pop_back();
    }
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
    std::vector<double> lhs = coeffs_;
    coeffs_.resize(std::max(coeffs_.size(), rhs.coeffs_.size()), 0.0);
    for (size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] += rhs.coeffs_[k];
    trim_cancelled_lead(coeffs_, lhs, rhs.coeffs_);
    normalize();
    return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
    std::vector<double> lhs = coeffs_;
    coeffs_.resize(std::max(coeffs_.size(), rhs.coeffs_.size()), 0.0);
    for (size_t k = 0; k < rhs.coeffs_.size(); ++k) coeffs_[k] -= rhs.coeffs_[k];
    trim_cancelled_lead(coeffs_, lhs, rhs.coeffs_);
    normalize();
    return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return Polynomial();
    std::vector<double> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
    for (size_t i = 0; i < a.coeffs_.size(); ++i)
        for (size_t j = 0; j < b.coeffs_.size(); ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    return Polynomial(std::move(out));
}

Polynomial& Polynomial::operator*=(const Polynomial& rhs) {
    *this = *this * rhs;
    return *this;
}

Polynomial& Polynomial::operator*=(double s) {
    for (double& c : coeffs_) c *= s;
    normalize();
    return *this;
}

namespace {

// Derivative coefficient array of order n (monic input, lowest first).
std::vector<double> derivative_coeffs(const std::vector<double>& c, int order) {
    std::vector<double> d = c;
    for (int n = 0; n < order; ++n) {
        if (d.size() <= 1) return {0.0};
        std::vector<double> next(d.size() - 1);
        for (size_t k = 1; k < d.size(); ++k) next[k - 1] = d[k] * static_cast<double>(k);
        d.swap(next);
    }
    return d;
}

// Newton iteration on the (m-1)-th derivative: a root of multiplicity m of p
// is a simple, well-conditioned root of p^(m-1). Values use compensated
// Horner so cancellation in the monomial basis cannot stall convergence.
cplx polish_root(const std::vector<double>& monic, cplx z0, int m, double wander_cap) {
    const auto f = derivative_coeffs(monic, m - 1);
    const auto fp = derivative_coeffs(monic, m);
    cplx z = z0;
    cplx best = z0;
    double best_res = std::abs(detail::eval_poly_accurate(f, z0));
    for (int it = 0; it < 40; ++it) {
        cplx fv = detail::eval_poly_accurate(f, z);
        cplx fpv = detail::eval_poly(fp, z);
        if (std::abs(fpv) == 0.0) break;
        cplx step = fv / fpv;
        z -= step;
        if (std::abs(z - z0) > wander_cap) return best;  // diverging toward another root
        double res = std::abs(detail::eval_poly_accurate(f, z));
        if (res < best_res) {
            best_res = res;
            best = z;
        }
        if (std::abs(step) <= 1e-16 * (1.0 + std::abs(z))) break;
    }
    return best;
}

// Accepts (z, m) as an m-fold root when m successive deflations of p by
// (u - z) all leave remainders at cancellation level.
bool deflation_ok(const std::vector<double>& monic, cplx z, int m) {
    std::vector<cplx> cur(monic.begin(), monic.end());
    for (int j = 0; j < m; ++j) {
        double scale = detail::eval_scale(cur, z);
        cplx rho = detail::divide_linear(cur, z);
        if (std::abs(rho) > 1e-9 * std::max(scale, 1e-300)) return false;
    }
    return true;
}

struct Cluster {
    cplx center;
    int size = 1;
};

// Distance threshold under which an m-fold eigenvalue cluster is plausible:
// a multiple root perturbed at machine level splits over a radius ~eps^(1/m).
double merge_radius(int m, double local_scale) {
    double tau = std::pow(1e-12, 1.0 / static_cast<double>(m));
    return std::max(1e-7, tau) * local_scale;
}

// Single-linkage merge tree over the eigenvalues. Leaves are indices; inner
// nodes remember their children.
struct DendrogramNode {
    int left = -1, right = -1;  // node indices; -1, eig index for leaves
    int eig = -1;
    int size = 1;
};

// Accept the largest subtrees that survive trial deflation at their own
// multiplicity; everything else decomposes into its children.
void emit_clusters(int node, const std::vector<DendrogramNode>& tree,
                   const std::vector<cplx>& eigs, const std::vector<double>& monic,
                   std::vector<Cluster>& out) {
    const DendrogramNode& nd = tree[static_cast<size_t>(node)];
    if (nd.eig >= 0) {
        out.push_back({eigs[static_cast<size_t>(nd.eig)], 1});
        return;
    }
    // Gather members.
    std::vector<cplx> members;
    std::vector<int> stack{node};
    while (!stack.empty()) {
        const DendrogramNode& cur = tree[static_cast<size_t>(stack.back())];
        stack.pop_back();
        if (cur.eig >= 0) {
            members.push_back(eigs[static_cast<size_t>(cur.eig)]);
        } else {
            stack.push_back(cur.left);
            stack.push_back(cur.right);
        }
    }
    const int m = static_cast<int>(members.size());
    cplx mean = 0.0;
    for (cplx z : members) mean += z;
    mean /= static_cast<double>(m);
    double diam = 0.0;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j) diam = std::max(diam, std::abs(members[static_cast<size_t>(i)] - members[static_cast<size_t>(j)]));
    const double local = std::max(1.0, std::abs(mean));
    if (diam <= merge_radius(m, local)) {
        const cplx polished = polish_root(monic, mean, m, 4.0 * merge_radius(m, local) + 1e-6);
        if (deflation_ok(monic, polished, m)) {
            out.push_back({polished, m});
            return;
        }
    }
    emit_clusters(nd.left, tree, eigs, monic, out);
    emit_clusters(nd.right, tree, eigs, monic, out);
}

}  // namespace

std::vector<PolynomialRoot> roots(const Polynomial& p) {
    const int full_degree = p.degree();
    if (full_degree < 1) throw std::invalid_argument("roots: constant polynomial");

    std::vector<double> monic(p.coeffs());
    for (double& c : monic) c /= p.leading();

    // Exact zero roots: strip vanishing low-order coefficients up front.
    int zero_mult = 0;
    while (static_cast<int>(monic.size()) > 1 && monic.front() == 0.0) {
        monic.erase(monic.begin());
        ++zero_mult;
    }
    const int d = static_cast<int>(monic.size()) - 1;
    if (d < 1) {
        std::vector<PolynomialRoot> only_zero;
        if (zero_mult > 0) only_zero.push_back({cplx(0.0, 0.0), zero_mult});
        return only_zero;
    }

    // Variable scaling by the geometric mean of the root magnitudes,
    // |c0/cd|^(1/d), keeps the companion eigenproblem near the unit circle
    // where it is well conditioned. Clamped against the Fujiwara-style bound
    // so a noise-level constant coefficient cannot drag the scale to zero.
    double bound_max = 0.0;
    for (int k = 0; k < d; ++k)
        if (monic[static_cast<size_t>(k)] != 0.0)
            bound_max = std::max(bound_max, std::pow(std::abs(monic[static_cast<size_t>(k)]),
                                                     1.0 / static_cast<double>(d - k)));
    double scale = std::pow(std::abs(monic[0]), 1.0 / static_cast<double>(d));
    scale = std::clamp(scale, bound_max / 100.0, bound_max);
    if (scale > 0.5 && scale < 2.0) scale = 1.0;
    std::vector<double> scaled = monic;
    if (scale != 1.0) {
        // q(v) = p(scale*v)/scale^d stays monic with roots/scale.
        double f = 1.0;
        for (int k = d; k >= 0; --k) {
            scaled[static_cast<size_t>(k)] *= f;
            f /= scale;
        }
    }

    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(d, d);
    for (int i = 1; i < d; ++i) companion(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) companion(i, d - 1) = -scaled[static_cast<size_t>(i)];
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) throw std::runtime_error("roots: eigenvalue iteration failed");

    std::vector<cplx> eigs;
    eigs.reserve(d);
    for (int i = 0; i < d; ++i) eigs.push_back(cplx(solver.eigenvalues()[i]) * scale);

    // Single-linkage agglomeration: process pairwise gaps in ascending order
    // and link clusters whose gap is within the largest plausible multiple-
    // root radius. Multiplicity is then decided top-down per subtree by
    // trial deflation (emit_clusters).
    struct Edge {
        double dist;
        int a, b;
    };
    std::vector<Edge> edges;
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) {
            const double dist = std::abs(eigs[static_cast<size_t>(i)] - eigs[static_cast<size_t>(j)]);
            const double local =
                std::max(1.0, 0.5 * (std::abs(eigs[static_cast<size_t>(i)]) + std::abs(eigs[static_cast<size_t>(j)])));
            if (dist <= merge_radius(d, local)) edges.push_back({dist, i, j});
        }
    std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.dist < b.dist; });

    std::vector<DendrogramNode> tree;
    tree.reserve(static_cast<size_t>(2 * d));
    std::vector<int> owner(static_cast<size_t>(d));  // eig index -> current tree node
    std::vector<int> find_parent(static_cast<size_t>(2 * d), -1);
    for (int i = 0; i < d; ++i) {
        tree.push_back({-1, -1, i, 1});
        owner[static_cast<size_t>(i)] = i;
    }
    auto find_root = [&](int node) {
        while (find_parent[static_cast<size_t>(node)] >= 0) node = find_parent[static_cast<size_t>(node)];
        return node;
    };
    for (const Edge& e : edges) {
        const int ra = find_root(owner[static_cast<size_t>(e.a)]);
        const int rb = find_root(owner[static_cast<size_t>(e.b)]);
        if (ra == rb) continue;
        tree.push_back({ra, rb, -1, tree[static_cast<size_t>(ra)].size + tree[static_cast<size_t>(rb)].size});
        const int id = static_cast<int>(tree.size()) - 1;
        find_parent.resize(tree.size(), -1);
        find_parent[static_cast<size_t>(ra)] = id;
        find_parent[static_cast<size_t>(rb)] = id;
    }

    std::vector<Cluster> clusters;
    for (int i = 0; i < static_cast<int>(tree.size()); ++i)
        if (find_parent[static_cast<size_t>(i)] < 0) emit_clusters(i, tree, eigs, monic, clusters);

    for (auto& cl : clusters)
        cl.center = polish_root(monic, cl.center, cl.size, 5e-2 * (1.0 + std::abs(cl.center)));

    // Enforce the conjugate structure of real-coefficient polynomials.
    std::vector<PolynomialRoot> out;
    if (zero_mult > 0) out.push_back({cplx(0.0, 0.0), zero_mult});
    std::vector<Cluster> upper, lower;
    for (auto& cl : clusters) {
        if (std::abs(cl.center.imag()) <= 1e-9 * std::max(1.0, std::abs(cl.center))) {
            out.push_back({cplx(cl.center.real(), 0.0), cl.size});
        } else if (cl.center.imag() > 0) {
            upper.push_back(cl);
        } else {
            lower.push_back(cl);
        }
    }
    std::vector<bool> used(lower.size(), false);
    for (const auto& u : upper) {
        size_t pick = lower.size();
        double best = std::numeric_limits<double>::infinity();
        for (size_t i = 0; i < lower.size(); ++i) {
            if (used[i] || lower[i].size != u.size) continue;
            double dist = std::abs(std::conj(lower[i].center) - u.center);
            if (dist < best) {
                best = dist;
                pick = i;
            }
        }
        if (pick < lower.size()) {
            used[pick] = true;
            cplx z = 0.5 * (u.center + std::conj(lower[pick].center));
            out.push_back({z, u.size});
            out.push_back({std::conj(z), u.size});
        } else {
            out.push_back({u.center, u.size});  // unmatched; should not happen for real input
        }
    }
    for (size_t i = 0; i < lower.size(); ++i)
        if (!used[i]) out.push_back({lower[i].center, lower[i].size});

    std::sort(out.begin(), out.end(), [](const PolynomialRoot& a, const PolynomialRoot& b) {
        if (a.value.real() != b.value.real()) return a.value.real() < b.value.real();
        return a.value.imag() < b.value.imag();
    });
    return out;
}

}  // namespace nmk
