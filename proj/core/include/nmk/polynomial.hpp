#pragma once

#include <complex>
#include <vector>

namespace nmk {

/// Real-coefficient polynomial in the Laplace variable, coefficients stored
/// lowest degree first. Trailing coefficients that are negligible relative to
/// the largest one are trimmed on construction, so degree() is meaningful.
class Polynomial {
  public:
    Polynomial() : coeffs_{0.0} {}
    Polynomial(double constant) : coeffs_{constant} {}
    explicit Polynomial(std::vector<double> coeffs);

    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    bool is_zero() const { return coeffs_.size() == 1 && coeffs_[0] == 0.0; }
    double leading() const { return coeffs_.back(); }
    const std::vector<double>& coeffs() const { return coeffs_; }

    /// Coefficient of u^k; zero outside the stored range.
    double coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(coeffs_.size())) ? coeffs_[k] : 0.0;
    }

    double eval(double u) const;
    std::complex<double> eval(std::complex<double> u) const;

    Polynomial derivative() const;

    /// Largest coefficient magnitude (coefficient scale; 0 only for the zero
    /// polynomial).
    double coeff_scale() const;

    Polynomial& operator+=(const Polynomial& rhs);
    Polynomial& operator-=(const Polynomial& rhs);
    Polynomial& operator*=(const Polynomial& rhs);
    Polynomial& operator*=(double s);

    friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
    friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
    friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
    friend Polynomial operator*(Polynomial a, double s) { return a *= s; }
    friend Polynomial operator*(double s, Polynomial a) { return a *= s; }
    friend Polynomial operator-(Polynomial a) { return a *= -1.0; }

  private:
    void normalize();
    std::vector<double> coeffs_;
};

struct PolynomialRoot {
    std::complex<double> value;
    int multiplicity = 1;
};

/// All complex roots with multiplicities, via companion-matrix eigenvalues.
/// Eigenvalue clusters are merged into multiple roots only when trial
/// deflation confirms the candidate multiplicity; cluster centers are then
/// polished with Newton iterations on the (m-1)-th derivative. Conjugate
/// pairing is enforced exactly. Throws std::invalid_argument for constant
/// polynomials.
std::vector<PolynomialRoot> roots(const Polynomial& p);

}  // namespace nmk
