#include "fnls/propagator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace fnls {

std::vector<double> omega_table(const Grid& grid, const SymbolSpec& spec) {
    std::vector<double> w(static_cast<size_t>(grid.size()));
    for (int j = 0; j < grid.nx; ++j)
        for (int q = 0; q < grid.ny; ++q)
            w[static_cast<size_t>(j) * grid.ny + q] = omega(spec, grid.xi[j], grid.yfreq[q]);
    return w;
}

std::vector<cdouble> phase_table(const Grid& grid, const SymbolSpec& spec, double t) {
    const auto w = omega_table(grid, spec);
    std::vector<cdouble> ph(w.size());
    for (size_t i = 0; i < w.size(); ++i) ph[i] = std::polar(1.0, -t * w[i]);
    return ph;
}

Field linear_propagate(const Field& phi, double t, const SymbolSpec& spec) {
    if (t == 0.0) return phi;
    const bool physical = phi.repr == Representation::physical;
    Field uhat = physical ? forward(phi) : phi;
    const auto ph = phase_table(*phi.grid, spec, t);
    for (size_t i = 0; i < uhat.data.size(); ++i) uhat.data[i] *= ph[i];
    return physical ? inverse(uhat) : uhat;
}

namespace {

int lattice_index(const TimeWindow& window, double t, const char* what) {
    const double dt = window.closed_dt();
    const double pos = (t - window.t0) / dt;
    const long i = std::lround(pos);
    if (i < 0 || i >= window.nt || std::abs(pos - static_cast<double>(i)) > 1e-6)
        throw std::invalid_argument(std::string("duhamel: ") + what + " = " + std::to_string(t) +
                                    " is not on the window's sample lattice");
    return static_cast<int>(i);
}

std::vector<Field> to_spectral(const std::vector<Field>& f) {
    std::vector<Field> s;
    s.reserve(f.size());
    for (const auto& u : f) s.push_back(u.repr == Representation::spectral ? u : forward(u));
    return s;
}

// Modulated samples g_i = e^{+i t_i omega} f_hat(t_i); then
// int_0^t U(t-s) f ds = e^{-i t omega} * int_0^t g(s) ds per coefficient.
std::vector<Field> modulated(const std::vector<Field>& fhat, const TimeWindow& window,
                             const std::vector<double>& w) {
    std::vector<Field> g = fhat;
    for (int i = 0; i < window.nt; ++i) {
        const double t = window.closed_time(i);
        for (size_t k = 0; k < g[i].data.size(); ++k)
            g[i].data[k] *= std::polar(1.0, t * w[k]);
    }
    return g;
}

void accumulate(Field& acc, const Field& a, const Field& b, double ha, double hb) {
    for (size_t k = 0; k < acc.data.size(); ++k)
        acc.data[k] += ha * a.data[k] + hb * b.data[k];
}

} // namespace

Field duhamel(const std::vector<Field>& f, const TimeWindow& window, double t,
              const SymbolSpec& spec, QuadRule rule) {
    if (window.nt < 2) throw std::invalid_argument("duhamel: nt must be >= 2");
    if (f.size() != static_cast<size_t>(window.nt))
        throw std::invalid_argument("duhamel: expected " + std::to_string(window.nt) +
                                    " samples, got " + std::to_string(f.size()));
    if (!window.contains(t))
        throw std::invalid_argument("duhamel: t = " + std::to_string(t) + " outside window [" +
                                    std::to_string(window.t0) + ", " + std::to_string(window.t1) +
                                    "]");
    const int i0 = lattice_index(window, 0.0, "0");
    const int it = lattice_index(window, t, "t");
    const bool physical = f.front().repr == Representation::physical;

    const auto fhat = to_spectral(f);
    const auto w = omega_table(*f.front().grid, spec);
    const auto g = modulated(fhat, window, w);

    Field acc = make_field(f.front().grid, Representation::spectral);
    const int lo = std::min(i0, it), hi = std::max(i0, it);
    const double dt = window.closed_dt();
    const double dir = it >= i0 ? 1.0 : -1.0;
    const int m = hi - lo;

    if (rule == QuadRule::trapezoid || m == 1) {
        for (int i = lo; i < hi; ++i)
            accumulate(acc, g[i], g[i + 1], dir * dt / 2.0, dir * dt / 2.0);
    } else {
        // Composite Simpson; an odd interval count gets a trapezoid tail.
        int i = lo;
        for (; i + 2 <= hi; i += 2) {
            for (size_t k = 0; k < acc.data.size(); ++k)
                acc.data[k] += dir * dt / 3.0 *
                               (g[i].data[k] + 4.0 * g[i + 1].data[k] + g[i + 2].data[k]);
        }
        if (i < hi) accumulate(acc, g[i], g[i + 1], dir * dt / 2.0, dir * dt / 2.0);
    }

    const double tt = window.closed_time(it);
    for (size_t k = 0; k < acc.data.size(); ++k) acc.data[k] *= std::polar(1.0, -tt * w[k]);
    return physical ? inverse(acc) : acc;
}

std::vector<Field> duhamel_all_samples(const std::vector<Field>& f, const TimeWindow& window,
                                       const SymbolSpec& spec) {
    if (window.nt < 2) throw std::invalid_argument("duhamel: nt must be >= 2");
    if (f.size() != static_cast<size_t>(window.nt))
        throw std::invalid_argument("duhamel: sample count mismatch");
    const int i0 = lattice_index(window, 0.0, "0");
    const bool physical = f.front().repr == Representation::physical;

    const auto fhat = to_spectral(f);
    const auto w = omega_table(*f.front().grid, spec);
    const auto g = modulated(fhat, window, w);
    const double dt = window.closed_dt();

    std::vector<Field> prefix(f.size(), make_field(f.front().grid, Representation::spectral));
    for (int i = i0 + 1; i < window.nt; ++i) {
        prefix[i] = prefix[i - 1];
        accumulate(prefix[i], g[i - 1], g[i], dt / 2.0, dt / 2.0);
    }
    for (int i = i0 - 1; i >= 0; --i) {
        prefix[i] = prefix[i + 1];
        accumulate(prefix[i], g[i], g[i + 1], -dt / 2.0, -dt / 2.0);
    }

    for (int i = 0; i < window.nt; ++i) {
        const double t = window.closed_time(i);
        for (size_t k = 0; k < prefix[i].data.size(); ++k)
            prefix[i].data[k] *= std::polar(1.0, -t * w[k]);
        if (physical) prefix[i] = inverse(prefix[i]);
    }
    return prefix;
}

} // namespace fnls
