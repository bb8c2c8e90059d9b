#include "nmk/rational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace nmk {

namespace {

// Deflate by (u - r), discarding the (vanishing) remainder.
std::vector<double> divide_out_real_root(const std::vector<double>& c, double r) {
    const int d = static_cast<int>(c.size()) - 1;
    std::vector<double> quot(d);
    double carry = c[d];
    for (int k = d - 1; k >= 0; --k) {
        quot[k] = carry;
        carry = c[k] + r * carry;
    }
    return quot;
}

// Deflate by the real quadratic u^2 + b u + a (conjugate root pair).
std::vector<double> divide_out_quadratic(const std::vector<double>& c, double b, double a) {
    const int d = static_cast<int>(c.size()) - 1;
    std::vector<double> rem = c;  // high-first long division, in place
    std::vector<double> quot(d - 1, 0.0);
    for (int k = d; k >= 2; --k) {
        double f = rem[k];
        quot[k - 2] = f;
        rem[k] = 0.0;
        rem[k - 1] -= f * b;
        rem[k - 2] -= f * a;
    }
    return quot;
}

struct TaggedRoot {
    std::complex<double> value;
    int remaining;
};

}  // namespace

RationalFunction::RationalFunction(Polynomial num, Polynomial den)
    : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) throw std::invalid_argument("rational: denominator is identically zero");
    reduce();
}

void RationalFunction::reduce() {
    if (num_.is_zero()) {
        den_ = Polynomial(1.0);
        return;
    }
    if (den_.degree() == 0) {
        num_ *= 1.0 / den_.leading();
        den_ = Polynomial(1.0);
        return;
    }
    if (num_.degree() == 0) return;

    std::vector<PolynomialRoot> rn = roots(num_);
    std::vector<PolynomialRoot> rd = roots(den_);
    std::vector<TaggedRoot> nroots, droots;
    for (auto& r : rn) nroots.push_back({r.value, r.multiplicity});
    for (auto& r : rd) droots.push_back({r.value, r.multiplicity});

    // Shared factors to strip: (root, count), conjugates handled pairwise.
    struct Shared {
        std::complex<double> z;
        int count;
    };
    std::vector<Shared> shared;
    for (auto& a : nroots) {
        if (a.value.imag() < 0.0) continue;  // conjugate handled with its partner
        for (auto& b : droots) {
            if (b.value.imag() < 0.0) continue;
            double tol = 1e-9 * std::max({1.0, std::abs(a.value), std::abs(b.value)});
            if (std::abs(a.value - b.value) <= tol) {
                int c = std::min(a.remaining, b.remaining);
                if (c > 0) {
                    shared.push_back({0.5 * (a.value + b.value), c});
                    a.remaining -= c;
                    b.remaining -= c;
                }
            }
        }
    }
    if (shared.empty()) return;

    std::vector<double> ncoef = num_.coeffs();
    std::vector<double> dcoef = den_.coeffs();
    for (const auto& s : shared) {
        const bool real_root = std::abs(s.z.imag()) <= 1e-12 * std::max(1.0, std::abs(s.z));
        for (int k = 0; k < s.count; ++k) {
            if (real_root) {
                ncoef = divide_out_real_root(ncoef, s.z.real());
                dcoef = divide_out_real_root(dcoef, s.z.real());
            } else {
                // (u - z)(u - conj z) = u^2 - 2 Re(z) u + |z|^2
                ncoef = divide_out_quadratic(ncoef, -2.0 * s.z.real(), std::norm(s.z));
                dcoef = divide_out_quadratic(dcoef, -2.0 * s.z.real(), std::norm(s.z));
            }
        }
    }
    num_ = Polynomial(std::move(ncoef));
    den_ = Polynomial(std::move(dcoef));
    if (den_.degree() == 0) {
        num_ *= 1.0 / den_.leading();
        den_ = Polynomial(1.0);
    }
}

double RationalFunction::eval(double u) const { return num_.eval(u) / den_.eval(u); }

std::complex<double> RationalFunction::eval(std::complex<double> u) const {
    return num_.eval(u) / den_.eval(u);
}

RationalFunction RationalFunction::derivative() const {
    return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.num_.is_zero()) throw std::domain_error("zero divisor");
    return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

RationalFunction pow(const RationalFunction& x, int n) {
    if (n < 0) throw std::invalid_argument("pow: negative exponent");
    RationalFunction out(1.0);
    for (int k = 0; k < n; ++k) out = out * x;
    return out;
}

}  // namespace nmk
