#pragma once

#include <complex>
#include <vector>

// Small helpers for complex polynomial manipulation shared by the root
// finder and the partial-fraction expansion. Coefficients are stored lowest
// degree first throughout.
namespace nmk::detail {

using cplx = std::complex<double>;

inline cplx eval_poly(const std::vector<cplx>& c, cplx z) {
    cplx acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

inline cplx eval_poly(const std::vector<double>& c, cplx z) {
    cplx acc = 0.0;
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
    return acc;
}

/// Divides p by (u - z) in place; returns the remainder p(z). After the call
/// `c` holds the quotient (one degree lower).
inline cplx divide_linear(std::vector<cplx>& c, cplx z) {
    const int d = static_cast<int>(c.size()) - 1;
    cplx carry = c[d];
    for (int k = d - 1; k >= 0; --k) {
        cplx next = c[k] + z * carry;
        c[k] = carry;
        carry = next;
    }
    // c[d-1..0] now hold the quotient shifted by one; drop the top slot.
    std::vector<cplx> q(c.begin(), c.begin() + d);
    c.swap(q);
    return carry;
}

/// First `count` Taylor coefficients of p around z (i.e. p(z+h) = sum a_k h^k).
inline std::vector<cplx> taylor_at(std::vector<cplx> c, cplx z, int count) {
    std::vector<cplx> out;
    out.reserve(count);
    for (int k = 0; k < count; ++k) {
        if (c.empty()) {
            out.push_back(0.0);
            continue;
        }
        if (c.size() == 1) {
            out.push_back(c[0]);
            c.clear();
            continue;
        }
        out.push_back(divide_linear(c, z));
    }
    return out;
}

/// Magnitude scale of evaluating p at z: sum of |c_k| |z|^k. A remainder much
/// smaller than this is indistinguishable from cancellation noise.
inline double eval_scale(const std::vector<cplx>& c, cplx z) {
    double az = std::abs(z);
    double pw = 1.0, s = 0.0;
    for (const auto& ck : c) {
        s += std::abs(ck) * pw;
        pw *= az;
    }
    return s;
}

// Double-double arithmetic, enough bits to evaluate heavily cancelling
// monomial-basis polynomials ((u+1)^n + 1 near u = -1 loses ~n digits in
// plain Horner, which would cap root polishing far above 1e-9).
struct DD {
    double hi = 0.0, lo = 0.0;
};

inline DD two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    return {s, (a - (s - bb)) + (b - bb)};
}

inline DD two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline DD dd_add(DD a, DD b) {
    DD s = two_sum(a.hi, b.hi);
    double lo = a.lo + b.lo + s.lo;
    const double hi = s.hi + lo;
    lo -= hi - s.hi;
    return {hi, lo};
}

inline DD dd_add(DD a, double b) {
    DD s = two_sum(a.hi, b);
    double lo = a.lo + s.lo;
    const double hi = s.hi + lo;
    lo -= hi - s.hi;
    return {hi, lo};
}

inline DD dd_neg(DD a) { return {-a.hi, -a.lo}; }

inline DD dd_mul(DD a, DD b) {
    DD p = two_prod(a.hi, b.hi);
    double lo = p.lo + (a.hi * b.lo + a.lo * b.hi);
    const double hi = p.hi + lo;
    lo -= hi - p.hi;
    return {hi, lo};
}

/// Compensated complex Horner for a real-coefficient polynomial: accurate to
/// ~eps^2 * condition, i.e. effectively exact for our degrees.
inline cplx eval_poly_accurate(const std::vector<double>& c, cplx z) {
    const DD zr{z.real(), 0.0}, zi{z.imag(), 0.0};
    DD re{0.0, 0.0}, im{0.0, 0.0};
    for (auto it = c.rbegin(); it != c.rend(); ++it) {
        const DD nre = dd_add(dd_add(dd_mul(re, zr), dd_neg(dd_mul(im, zi))), *it);
        const DD nim = dd_add(dd_mul(re, zi), dd_mul(im, zr));
        re = nre;
        im = nim;
    }
    return {re.hi + re.lo, im.hi + im.lo};
}

}  // namespace nmk::detail
