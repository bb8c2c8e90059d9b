#pragma once

#include <complex>
#include <vector>

namespace nmk {

/// Finite sum of terms c * t^m * exp(p*t) with complex c, p. This is the
/// exact inverse Laplace transform of a strictly proper rational function.
/// Complex poles always occur in conjugate pairs with conjugate
/// coefficients, so evaluation at real t >= 0 is real up to roundoff.
class ExpPolynomial {
  public:
    struct Term {
        std::complex<double> coeff;
        int power = 0;  // exponent of t, >= 0
        std::complex<double> pole;
    };

    ExpPolynomial() = default;
    explicit ExpPolynomial(std::vector<Term> terms);

    const std::vector<Term>& terms() const { return terms_; }
    bool empty() const { return terms_.empty(); }

    /// Value at t >= 0. Throws std::invalid_argument("negative time") for
    /// t < 0 and std::runtime_error when the imaginary residue exceeds
    /// 1e-10 of the term-magnitude scale (broken conjugate closure).
    double eval(double t) const;

    /// Term-wise d/dt.
    ExpPolynomial derivative() const;

    /// Upper bound sum |c| t^m exp(Re(p) t); dominates |eval| for all t >= 0.
    double envelope(double t) const;

    /// Largest |Im(pole)| (0 for purely real poles): fastest oscillation.
    double max_imag_pole() const;
    /// Smallest -Re(pole) over terms (decay rate of the slowest mode).
    double slowest_decay() const;
    /// True when every pole has Re < 0 (the sum decays to zero).
    bool all_poles_decaying() const;

    /// True when complex-pole terms occur in conjugate pairs with conjugate
    /// coefficients (within `tol` relative).
    bool conjugate_closed(double tol = 1e-9) const;

  private:
    std::vector<Term> terms_;
};

}  // namespace nmk
