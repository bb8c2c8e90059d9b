#pragma once

#include <complex>

#include "nmk/polynomial.hpp"

namespace nmk {

/// Ratio of two real-coefficient polynomials in the Laplace variable.
/// Construction cancels numerator/denominator roots that agree within 1e-9
/// (relative to root magnitude), so values stay in reduced form.
class RationalFunction {
  public:
    RationalFunction() : num_(0.0), den_(1.0) {}
    RationalFunction(double constant) : num_(constant), den_(1.0) {}
    RationalFunction(Polynomial num, Polynomial den);

    const Polynomial& num() const { return num_; }
    const Polynomial& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }

    double eval(double u) const;
    std::complex<double> eval(std::complex<double> u) const;

    /// d/du, via the quotient rule.
    RationalFunction derivative() const;

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
    /// Throws std::domain_error("zero divisor") when b is identically zero.
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);

  private:
    void reduce();
    Polynomial num_;
    Polynomial den_;
};

/// x^n by repeated multiplication (n >= 0).
RationalFunction pow(const RationalFunction& x, int n);

}  // namespace nmk
