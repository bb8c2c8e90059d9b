#include "nmk/waiting_time.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace nmk {

namespace {

void collect_violations(const WaitingTimeSpec& spec, std::vector<std::string>& out) {
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ExponentialWtd>) {
                if (!(node.rate > 0.0) || !std::isfinite(node.rate))
                    out.push_back("rate must be positive");
            } else if constexpr (std::is_same_v<T, ErlangWtd>) {
                if (node.shape < 1) out.push_back("erlang shape must be >= 1");
                if (!(node.rate > 0.0) || !std::isfinite(node.rate))
                    out.push_back("rate must be positive");
            } else if constexpr (std::is_same_v<T, ConvolutionWtd>) {
                if (node.children.size() < 2)
                    out.push_back("convolution needs at least 2 children");
                for (const auto& child : node.children) collect_violations(child, out);
            } else {
                if (node.children.size() < 2 || node.weights.size() != node.children.size())
                    out.push_back("mixture needs at least 2 weighted branches");
                double sum = 0.0;
                for (double w : node.weights) {
                    if (w < 0.0 || !std::isfinite(w)) out.push_back("mixture weight must be >= 0");
                    sum += w;
                }
                if (std::abs(sum - 1.0) > 1e-12) {
                    std::ostringstream msg;
                    msg << "weights sum to " << sum;
                    out.push_back(msg.str());
                }
                for (const auto& child : node.children) collect_violations(child, out);
            }
        },
        spec.node);
}

RationalFunction transform_unchecked(const WaitingTimeSpec& spec) {
    return std::visit(
        [&](const auto& node) -> RationalFunction {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ExponentialWtd>) {
                return RationalFunction(Polynomial(node.rate),
                                        Polynomial(std::vector<double>{node.rate, 1.0}));
            } else if constexpr (std::is_same_v<T, ErlangWtd>) {
                RationalFunction base(Polynomial(node.rate),
                                      Polynomial(std::vector<double>{node.rate, 1.0}));
                return pow(base, node.shape);
            } else if constexpr (std::is_same_v<T, ConvolutionWtd>) {
                RationalFunction acc(1.0);
                for (const auto& child : node.children) acc = acc * transform_unchecked(child);
                return acc;
            } else {
                RationalFunction acc(0.0);
                for (size_t i = 0; i < node.children.size(); ++i)
                    acc = acc + RationalFunction(node.weights[i]) * transform_unchecked(node.children[i]);
                return acc;
            }
        },
        spec.node);
}

}  // namespace

std::vector<std::string> validate(const WaitingTimeSpec& spec) {
    std::vector<std::string> out;
    collect_violations(spec, out);
    if (out.empty()) {
        // Density normalization: f̂(0) = 1.
        const RationalFunction f = transform_unchecked(spec);
        const double at_zero = f.eval(0.0);
        if (std::abs(at_zero - 1.0) > 1e-10) {
            std::ostringstream msg;
            msg << "transform at u=0 is " << at_zero << ", expected 1";
            out.push_back(msg.str());
        }
    }
    return out;
}

RationalFunction laplace(const WaitingTimeSpec& spec) {
    const auto violations = validate(spec);
    if (!violations.empty()) {
        std::string joined = "invalid waiting-time spec:";
        for (const auto& v : violations) joined += " " + v + ";";
        throw std::invalid_argument(joined);
    }
    return transform_unchecked(spec);
}

double mean(const WaitingTimeSpec& spec) {
    const RationalFunction f = laplace(spec);
    const double n0 = f.num().eval(0.0);
    const double d0 = f.den().eval(0.0);
    const double dn0 = f.num().derivative().eval(0.0);
    const double dd0 = f.den().derivative().eval(0.0);
    return -(dn0 * d0 - n0 * dd0) / (d0 * d0);
}

double sample(const WaitingTimeSpec& spec, Rng& rng) {
    return std::visit(
        [&](const auto& node) -> double {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ExponentialWtd>) {
                return rng.exponential(node.rate);
            } else if constexpr (std::is_same_v<T, ErlangWtd>) {
                double acc = 0.0;
                for (int k = 0; k < node.shape; ++k) acc += rng.exponential(node.rate);
                return acc;
            } else if constexpr (std::is_same_v<T, ConvolutionWtd>) {
                double acc = 0.0;
                for (const auto& child : node.children) acc += sample(child, rng);
                return acc;
            } else {
                const double u = rng.next_unit();
                double cum = 0.0;
                for (size_t i = 0; i + 1 < node.children.size(); ++i) {
                    cum += node.weights[i];
                    if (u < cum) return sample(node.children[i], rng);
                }
                return sample(node.children.back(), rng);
            }
        },
        spec.node);
}

}  // namespace nmk
