#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace fnls {

/// Sign of the fractional part of the dispersion law: elliptic keeps
/// xi^2 + |n|^{2a}, hyperbolic flips it to xi^2 - |n|^{2a}.
enum class Sign { elliptic, hyperbolic };

inline const char* to_string(Sign s) {
    return s == Sign::elliptic ? "elliptic" : "hyperbolic";
}

inline Sign sign_from_string(const std::string& s) {
    if (s == "elliptic") return Sign::elliptic;
    if (s == "hyperbolic") return Sign::hyperbolic;
    throw std::invalid_argument("sign must be 'elliptic' or 'hyperbolic', got '" + s + "'");
}

/// Dispersion law omega(xi, n) = xi^2 +- |n|^{2*alpha}.
struct SymbolSpec {
    double alpha = 1.0;
    Sign sign = Sign::elliptic;

    SymbolSpec() = default;
    SymbolSpec(double a, Sign s) : alpha(a), sign(s) {
        if (!(a > 0.0))
            throw std::invalid_argument("SymbolSpec: alpha must be positive, got " +
                                        std::to_string(a));
    }
};

/// omega evaluated at a continuous transverse frequency (planar-box mode);
/// on the torus the transverse frequencies are the integers.
inline double omega(const SymbolSpec& spec, double xi, double eta) {
    const double frac = std::pow(std::abs(eta), 2.0 * spec.alpha);
    return spec.sign == Sign::elliptic ? xi * xi + frac : xi * xi - frac;
}

inline double dispersion(const SymbolSpec& spec, double xi, long n) {
    return omega(spec, xi, static_cast<double>(n));
}

/// The boundedness results require alpha >= 1 (elliptic) or alpha > 1
/// (hyperbolic); probes outside this range run in exploration mode only.
inline bool within_hypotheses(const SymbolSpec& spec) {
    return spec.sign == Sign::elliptic ? spec.alpha >= 1.0 : spec.alpha > 1.0;
}

/// Sobolev index left invariant by the scaling u -> lambda u(lambda^2 t,
/// lambda x, lambda^{1/alpha} y).  Continuous at alpha = 1.
inline double critical_index(double alpha) {
    if (!(alpha > 0.0))
        throw std::invalid_argument("critical_index: alpha must be positive");
    if (alpha < 1.0) return (1.0 - alpha) / 2.0;
    if (alpha > 1.0) return (1.0 - alpha) / (2.0 * alpha);
    return 0.0;
}

} // namespace fnls
