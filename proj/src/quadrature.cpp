#include "fnls/quadrature.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace fnls {

double simpson(const std::function<double(double)>& f, double a, double b, int n) {
    if (n < 2 || n % 2 != 0) throw std::invalid_argument("simpson: n must be even and >= 2");
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

// Map (-1, 1) -> (a, b); abscissas are generated as offsets from the
// endpoints to keep precision near integrable singularities.
double tanh_sinh(const std::function<double(double)>& f, double a, double b, double rel_tol,
                 int max_level) {
    const double half = 0.5 * (b - a);
    const double pi_half = 0.5 * std::numbers::pi;

    // Weighted sample pair at node t (symmetric +-t); returns w(t) * (f_a + f_b).
    const auto pair_at = [&](double t) {
        const double sh = pi_half * std::sinh(t);
        const double x_off = half / (std::exp(sh) * std::cosh(sh)); // half*(1 - tanh(sh))
        const double w = pi_half * std::cosh(t) / (std::cosh(sh) * std::cosh(sh));
        if (x_off == 0.0 || w < 1e-300) return 0.0;
        const double fa = f(a + x_off);
        const double fb = f(b - x_off);
        double term = 0.0;
        if (std::isfinite(fa)) term += fa;
        if (std::isfinite(fb)) term += fb;
        return w * term;
    };

    // Level 0: all integer nodes at h = 1.
    double h = 1.0;
    double sum = pi_half * f(a + half); // node t = 0
    for (int k = 1; k <= 7; ++k) {
        const double add = pair_at(static_cast<double>(k));
        sum += add;
        if (add == 0.0) break;
    }
    double prev = sum * half * h;

    double integral = prev;
    for (int level = 1; level <= max_level; ++level) {
        h *= 0.5;
        // Refinement adds the odd multiples of the new h.
        double add = 0.0;
        for (int k = 1; k * h <= 7.0; k += 2) {
            const double term = pair_at(k * h);
            add += term;
            if (term == 0.0 && k * h > 3.0) break;
        }
        sum += add;
        integral = sum * half * h;
        if (level >= 4 && std::abs(integral - prev) <= rel_tol * std::abs(integral))
            return integral;
        prev = integral;
    }
    return integral;
}

} // namespace fnls
