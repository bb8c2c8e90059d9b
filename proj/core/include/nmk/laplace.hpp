#pragma once

#include "nmk/exp_polynomial.hpp"
#include "nmk/rational.hpp"

namespace nmk {

/// Exact inversion of a strictly proper rational Laplace transform via
/// partial fractions: each pole p of multiplicity m contributes terms
/// A_j t^(j-1) exp(p t) / (j-1)!, j = 1..m. Throws std::invalid_argument
/// ("improper rational function") unless deg num < deg den.
ExpPolynomial inverse_laplace(const RationalFunction& r);

/// Independent numerical inversion on the fixed Talbot contour with `nodes`
/// evaluation points. Needs no root finding, which keeps it independent of
/// the partial-fraction path. Accuracy is ~1e-10 for rational transforms
/// with poles of modulus <= 100, provided the contour still encloses every
/// pole (the contour shrinks like 2*nodes/(5t), so very large t combined
/// with strongly oscillatory poles degrades it). Throws for t <= 0.
double talbot_inverse(const RationalFunction& r, double t, int nodes = 64);

}  // namespace nmk
