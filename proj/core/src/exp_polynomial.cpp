#include "nmk/exp_polynomial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace nmk {

namespace {

// Canonical term order: by pole (Re, Im), then power.
bool term_less(const ExpPolynomial::Term& a, const ExpPolynomial::Term& b) {
    if (a.pole.real() != b.pole.real()) return a.pole.real() < b.pole.real();
    if (a.pole.imag() != b.pole.imag()) return a.pole.imag() < b.pole.imag();
    return a.power < b.power;
}

}  // namespace

ExpPolynomial::ExpPolynomial(std::vector<Term> terms) : terms_(std::move(terms)) {
    // Merge terms sharing (pole, power) and drop exact zeros.
    std::sort(terms_.begin(), terms_.end(), term_less);
    std::vector<Term> merged;
    for (const auto& t : terms_) {
        if (!merged.empty() && merged.back().pole == t.pole && merged.back().power == t.power) {
            merged.back().coeff += t.coeff;
        } else {
            merged.push_back(t);
        }
    }
    std::erase_if(merged, [](const Term& t) { return t.coeff == std::complex<double>(0.0, 0.0); });
    terms_ = std::move(merged);
}

double ExpPolynomial::eval(double t) const {
    if (t < 0.0) throw std::invalid_argument("negative time");
    std::complex<double> sum = 0.0;
    double amplitude = 0.0;
    for (const auto& term : terms_) {
        std::complex<double> v = term.coeff * std::exp(term.pole * t);
        for (int k = 0; k < term.power; ++k) v *= t;
        sum += v;
        amplitude += std::abs(v);
    }
    if (std::abs(sum.imag()) > 1e-10 * std::max(amplitude, 1e-300))
        throw std::runtime_error("exp-polynomial evaluation has non-negligible imaginary part");
    return sum.real();
}

ExpPolynomial ExpPolynomial::derivative() const {
    std::vector<Term> out;
    out.reserve(2 * terms_.size());
    for (const auto& term : terms_) {
        out.push_back({term.coeff * term.pole, term.power, term.pole});
        if (term.power > 0)
            out.push_back({term.coeff * static_cast<double>(term.power), term.power - 1, term.pole});
    }
    return ExpPolynomial(std::move(out));
}

double ExpPolynomial::envelope(double t) const {
    double s = 0.0;
    for (const auto& term : terms_)
        s += std::abs(term.coeff) * std::pow(t, term.power) * std::exp(term.pole.real() * t);
    return s;
}

double ExpPolynomial::max_imag_pole() const {
    double m = 0.0;
    for (const auto& term : terms_) m = std::max(m, std::abs(term.pole.imag()));
    return m;
}

double ExpPolynomial::slowest_decay() const {
    double m = std::numeric_limits<double>::infinity();
    for (const auto& term : terms_) m = std::min(m, -term.pole.real());
    return m;
}

bool ExpPolynomial::all_poles_decaying() const {
    return std::all_of(terms_.begin(), terms_.end(),
                       [](const Term& t) { return t.pole.real() < 0.0; });
}

bool ExpPolynomial::conjugate_closed(double tol) const {
    for (const auto& a : terms_) {
        if (a.pole.imag() == 0.0) {
            if (std::abs(a.coeff.imag()) > tol * std::max(1.0, std::abs(a.coeff))) return false;
            continue;
        }
        bool found = false;
        for (const auto& b : terms_) {
            if (b.power != a.power) continue;
            if (std::abs(b.pole - std::conj(a.pole)) > tol * std::max(1.0, std::abs(a.pole))) continue;
            if (std::abs(b.coeff - std::conj(a.coeff)) > tol * std::max(1.0, std::abs(a.coeff))) continue;
            found = true;
            break;
        }
        if (!found) return false;
    }
    return true;
}

}  // namespace nmk
