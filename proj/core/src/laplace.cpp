#include "nmk/laplace.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "detail/complex_poly.hpp"

namespace nmk {

using detail::cplx;

ExpPolynomial inverse_laplace(const RationalFunction& r) {
    if (r.is_zero()) return ExpPolynomial();
    if (r.num().degree() >= r.den().degree())
        throw std::invalid_argument("improper rational function");

    const double lead = r.den().leading();
    std::vector<cplx> num(r.num().coeffs().begin(), r.num().coeffs().end());
    for (auto& c : num) c /= lead;
    std::vector<cplx> den(r.den().coeffs().begin(), r.den().coeffs().end());
    for (auto& c : den) c /= lead;

    const auto poles = roots(r.den());

    const std::vector<double>& num_real = r.num().coeffs();
    const Polynomial den_deriv = r.den().derivative();

    std::vector<ExpPolynomial::Term> terms;
    for (const auto& pole : poles) {
        // Conjugate poles get mirrored coefficients; compute the upper one.
        if (pole.value.imag() < 0.0) continue;
        const int m = pole.multiplicity;
        const cplx p = pole.value;

        std::vector<cplx> laurent(static_cast<size_t>(m));
        if (m == 1) {
            // Residue N(p)/D'(p); compensated evaluation keeps this exact
            // even when the monomial basis cancels heavily.
            const cplx n_at = detail::eval_poly_accurate(num_real, p) / lead;
            const cplx d_at = detail::eval_poly_accurate(den_deriv.coeffs(), p) / lead;
            if (std::abs(d_at) == 0.0)
                throw std::runtime_error("inverse_laplace: repeated pole classified as simple");
            laurent[0] = n_at / d_at;
        } else {
            // Deflate: den = (u-p)^m s(u), then expand N/s as a power series
            // in (u-p); term k scales 1/(u-p)^(m-k).
            std::vector<cplx> s = den;
            for (int k = 0; k < m; ++k) detail::divide_linear(s, p);
            const auto a = detail::taylor_at(num, p, m);
            const auto b = detail::taylor_at(s, p, m);
            if (std::abs(b[0]) == 0.0)
                throw std::runtime_error("inverse_laplace: deflated denominator vanishes at pole");
            for (int k = 0; k < m; ++k) {
                cplx acc = a[static_cast<size_t>(k)];
                for (int j = 1; j <= k; ++j) acc -= b[static_cast<size_t>(j)] * laurent[static_cast<size_t>(k - j)];
                laurent[static_cast<size_t>(k)] = acc / b[0];
            }
        }

        double factorial = 1.0;
        for (int j = 1; j <= m; ++j) {
            // A_j / (j-1)! * t^(j-1) * e^(p t), with A_j = laurent[m-j].
            if (j > 1) factorial *= static_cast<double>(j - 1);
            cplx coeff = laurent[static_cast<size_t>(m - j)] / factorial;
            if (pole.value.imag() == 0.0) {
                terms.push_back({cplx(coeff.real(), 0.0), j - 1, cplx(p.real(), 0.0)});
            } else {
                terms.push_back({coeff, j - 1, p});
                terms.push_back({std::conj(coeff), j - 1, std::conj(p)});
            }
        }
    }
    return ExpPolynomial(std::move(terms));
}

double talbot_inverse(const RationalFunction& r, double t, int nodes) {
    if (t <= 0.0) throw std::invalid_argument("Talbot requires t > 0");
    if (nodes < 8) throw std::invalid_argument("Talbot needs at least 8 nodes");

    // Contour radius capped at 12.8/t: the summand scale e^{r t} amplifies
    // roundoff, so the usual 2*nodes/(5t) radius would waste the extra nodes
    // on cancellation noise in double precision. Extra nodes beyond 32 only
    // sharpen the trapezoid rule.
    const double shift = 2.0 * std::min(nodes, 32) / (5.0 * t);
    double acc = 0.5 * r.eval(shift) * std::exp(shift * t);
    for (int k = 1; k < nodes; ++k) {
        const double theta = k * std::numbers::pi / nodes;
        const double cot = std::cos(theta) / std::sin(theta);
        const cplx s(shift * theta * cot, shift * theta);
        const double sigma = theta + (theta * cot - 1.0) * cot;
        const cplx v = std::exp(s * t) * r.eval(s) * cplx(1.0, sigma);
        acc += v.real();
    }
    return acc * shift / nodes;
}

}  // namespace nmk
