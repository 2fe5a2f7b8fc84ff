#ifndef SQQ_GAUSS_HPP
#define SQQ_GAUSS_HPP

#include <cmath>
#include <cstdint>

#include "sqq/error.hpp"
#include "sqq/search.hpp"

namespace sqq {

// Independence model for W(p, x): each of the S(x) square requirements holds
// with probability P, over p^(x-1) free choices. All logarithms are natural.

/// P = (p + 1) / (2p), the share of squares (zero included) in F_p.
inline double success_probability(double p) { return (p + 1.0) / (2.0 * p); }

/// S(x) = 2 + 3 + ... + x.
inline std::uint64_t requirement_count(std::uint64_t x) {
    if (x < 2) throw precondition_error("requirement_count needs x >= 2");
    return (x * x + x - 2) / 2;
}

/// Q(p, x) = log G(p, x), a quadratic in x vanishing at x = 1.
inline double gauss_exponent(double p, double x) {
    return -0.5 * x * x * std::log(2.0 * p / (p + 1.0)) + 0.5 * x * std::log(p * (p + 1.0) / 2.0) -
           std::log((p + 1.0) / 2.0);
}

inline double gauss_estimate(double p, double x) { return std::exp(gauss_exponent(p, x)); }

/// The root of Q(p, .) other than 1.
inline double second_root(double p) {
    return 2.0 * (std::log(p + 1.0) - std::log(2.0)) / (std::log(2.0) - std::log1p(1.0 / p));
}

struct GaussianModel {
    std::uint32_t p;
    double P;
    double a2, a1, a0;  // Q(p, x) = a2 x^2 + a1 x + a0

    double exponent(double x) const { return (a2 * x + a1) * x + a0; }
};

inline GaussianModel gaussian_model(OddPrime prime) {
    const double p = prime.value();
    return GaussianModel{prime.value(), success_probability(p), -0.5 * std::log(2.0 * p / (p + 1.0)),
                         0.5 * std::log(p * (p + 1.0) / 2.0), -std::log((p + 1.0) / 2.0)};
}

/// sigma(p) = sum of log W(p, x) over the profile's columns.
inline double log_size(const WProfile& profile) {
    if (!profile.stabilized) throw precondition_error("log_size needs a stabilized profile");
    double s = 0;
    for (const auto& [x, w] : profile.counts) s += std::log(static_cast<double>(w));
    return s;
}

/// g(p), the model's prediction for sigma(p).
inline double gauss_log_size(double p) {
    const double r = std::log((p + 1.0) / (2.0 * p));
    const double num = 2.0 * std::log(p) + 3.0 * r;
    return num * num * num / (12.0 * r * r);
}

struct SizeReport {
    std::uint32_t p;
    double sigma;
    double g;
    double discrepancy;
};

inline SizeReport size_report(const WProfile& profile) {
    const double sigma = log_size(profile);
    const double g = gauss_log_size(profile.p.value());
    return SizeReport{profile.p.value(), sigma, g, sigma - g};
}

}  // namespace sqq

#endif  // SQQ_GAUSS_HPP
