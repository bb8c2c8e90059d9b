#pragma once

#include <string>
#include <variant>
#include <vector>

#include "nmk/rational.hpp"
#include "nmk/rng.hpp"

namespace nmk {

struct WaitingTimeSpec;

struct ExponentialWtd {
    double rate = 1.0;
    bool operator==(const ExponentialWtd&) const = default;
};

struct ErlangWtd {
    int shape = 1;
    double rate = 1.0;
    bool operator==(const ErlangWtd&) const = default;
};

struct ConvolutionWtd {
    std::vector<WaitingTimeSpec> children;
    bool operator==(const ConvolutionWtd&) const = default;
};

struct MixtureWtd {
    std::vector<double> weights;
    std::vector<WaitingTimeSpec> children;  // parallel to weights
    bool operator==(const MixtureWtd&) const = default;
};

/// Waiting-time distribution as a closed expression tree over exponentials
/// under convolution and mixture. The tree fully determines a two-site
/// semi-Markov process.
struct WaitingTimeSpec {
    std::variant<ExponentialWtd, ErlangWtd, ConvolutionWtd, MixtureWtd> node;

    static WaitingTimeSpec exponential(double rate) { return {ExponentialWtd{rate}}; }
    static WaitingTimeSpec erlang(int shape, double rate) { return {ErlangWtd{shape, rate}}; }
    static WaitingTimeSpec convolution(std::vector<WaitingTimeSpec> children) {
        return {ConvolutionWtd{std::move(children)}};
    }
    static WaitingTimeSpec mixture(std::vector<double> weights,
                                   std::vector<WaitingTimeSpec> children) {
        return {MixtureWtd{std::move(weights), std::move(children)}};
    }

    bool operator==(const WaitingTimeSpec&) const = default;
};

/// All invariant violations, human-readable; empty means the spec is valid.
/// Never throws.
std::vector<std::string> validate(const WaitingTimeSpec& spec);

/// Laplace transform f̂(u) of the waiting-time density: exp(λ) -> λ/(u+λ),
/// erlang(n,λ) -> (λ/(u+λ))^n, convolution -> product, mixture -> weighted
/// sum. Throws std::invalid_argument listing violations for invalid specs.
RationalFunction laplace(const WaitingTimeSpec& spec);

/// Mean waiting time, computed as -d f̂/du at u = 0.
double mean(const WaitingTimeSpec& spec);

/// One exact draw from the distribution (inverse-CDF exponentials composed
/// along the tree). The rng must not be shared across threads.
double sample(const WaitingTimeSpec& spec, Rng& rng);

}  // namespace nmk
