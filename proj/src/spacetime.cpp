#include "fnls/spacetime.hpp"

#include <cmath>
#include <stdexcept>

#include "fnls/fft.hpp"
#include "fnls/propagator.hpp"
#include "raw_fft.hpp"

namespace fnls {

SpaceTimeField make_spacetime_field(GridPtr grid, const TimeWindow& window,
                                    Representation repr) {
    SpaceTimeField u;
    u.grid = std::move(grid);
    u.window = window;
    u.repr = repr;
    u.data.assign(static_cast<size_t>(u.size()), cdouble{0.0, 0.0});
    return u;
}

namespace {

inline double axsign(int j) { return j % 2 == 0 ? 1.0 : -1.0; }

// Combined transform phase of time offset t0 and the centered x (and planar
// y) boxes.  The t0 phase is e^{-i tau_m t0}; for the symmetric window
// t0 = -T/2 this is exactly (-1)^m.
std::vector<cdouble> tphase(const SpaceTimeField& u) {
    const int nt = u.window.nt;
    std::vector<cdouble> ph(nt);
    const bool symmetric = u.window.t0 == -0.5 * u.window.length();
    for (int m = 0; m < nt; ++m) {
        if (u.window.t0 == 0.0)
            ph[m] = cdouble{1.0, 0.0};
        else if (symmetric)
            ph[m] = cdouble{axsign(m), 0.0};
        else
            ph[m] = std::polar(1.0, -u.tau(m) * u.window.t0);
    }
    return ph;
}

} // namespace

SpaceTimeField spacetime_forward(const SpaceTimeField& u) {
    if (u.repr != Representation::physical)
        throw std::invalid_argument("spacetime_forward: physical representation required");
    const Grid& g = *u.grid;
    SpaceTimeField out = u;
    out.repr = Representation::spectral;
    detail::raw_dft({u.window.nt, g.nx, g.ny}, u.data.data(), out.data.data(), -1);
    const auto tp = tphase(u);
    const double norm = 1.0 / static_cast<double>(u.size());
    size_t idx = 0;
    for (int m = 0; m < u.window.nt; ++m) {
        const cdouble cm = tp[m] * norm;
        for (int j = 0; j < g.nx; ++j) {
            const cdouble cj = cm * axsign(j);
            for (int q = 0; q < g.ny; ++q, ++idx)
                out.data[idx] *= g.planar ? cj * axsign(q) : cj;
        }
    }
    return out;
}

SpaceTimeField spacetime_inverse(const SpaceTimeField& uhat) {
    if (uhat.repr != Representation::spectral)
        throw std::invalid_argument("spacetime_inverse: spectral representation required");
    const Grid& g = *uhat.grid;
    std::vector<cdouble> tmp(uhat.data.size());
    const auto tp = tphase(uhat);
    size_t idx = 0;
    for (int m = 0; m < uhat.window.nt; ++m) {
        const cdouble cm = std::conj(tp[m]);
        for (int j = 0; j < g.nx; ++j) {
            const cdouble cj = cm * axsign(j);
            for (int q = 0; q < g.ny; ++q, ++idx)
                tmp[idx] = uhat.data[idx] * (g.planar ? cj * axsign(q) : cj);
        }
    }
    SpaceTimeField out = uhat;
    out.repr = Representation::physical;
    detail::raw_dft({uhat.window.nt, g.nx, g.ny}, tmp.data(), out.data.data(), +1);
    return out;
}

SpaceTimeField sample_free_wave(const Field& phi, const TimeWindow& window,
                                const SymbolSpec& spec) {
    const Field phihat = phi.repr == Representation::spectral ? phi : forward(phi);
    const auto w = omega_table(*phi.grid, spec);
    SpaceTimeField u = make_spacetime_field(phi.grid, window);
    Field slice = make_field(phi.grid, Representation::spectral);
    for (int i = 0; i < window.nt; ++i) {
        const double t = window.periodic_time(i);
        for (size_t k = 0; k < slice.data.size(); ++k)
            slice.data[k] = phihat.data[k] * std::polar(1.0, -t * w[k]);
        const Field ui = inverse(slice);
        std::copy(ui.data.begin(), ui.data.end(),
                  u.data.begin() + static_cast<size_t>(i) * phi.grid->size());
    }
    return u;
}

double st_l2_norm(const SpaceTimeField& u) {
    double s = 0.0;
    for (const auto& z : u.data) s += std::norm(z);
    const double w = u.repr == Representation::physical ? u.cell() : u.volume();
    return std::sqrt(s * w);
}

double st_l2_distance(const SpaceTimeField& a, const SpaceTimeField& b) {
    if (a.data.size() != b.data.size() || a.repr != b.repr)
        throw std::invalid_argument("st_l2_distance: incompatible fields");
    double s = 0.0;
    for (size_t i = 0; i < a.data.size(); ++i) s += std::norm(a.data[i] - b.data[i]);
    const double w = a.repr == Representation::physical ? a.cell() : a.volume();
    return std::sqrt(s * w);
}

double lp_spacetime_norm(const SpaceTimeField& u, double p) {
    if (p != 2.0 && p != 4.0 && std::abs(p - 4.0 / 3.0) > 1e-12)
        throw std::invalid_argument("lp_spacetime_norm: p must be 4/3, 2 or 4, got " +
                                    std::to_string(p));
    if (u.repr != Representation::physical)
        throw std::invalid_argument("lp_spacetime_norm: physical representation required");
    double s = 0.0;
    if (p == 2.0) {
        for (const auto& z : u.data) s += std::norm(z);
    } else if (p == 4.0) {
        for (const auto& z : u.data) {
            const double m2 = std::norm(z);
            s += m2 * m2;
        }
    } else {
        for (const auto& z : u.data) s += std::pow(std::abs(z), 4.0 / 3.0);
    }
    return std::pow(s * u.cell(), 1.0 / p);
}

double modulation(const SpaceTimeField& u, int it, int ix, int iy, const SymbolSpec& spec) {
    return std::abs(u.tau(it) + omega(spec, u.grid->xi[ix], u.grid->yfreq[iy]));
}

int shell_index(double mod) {
    if (mod < 1.0) return -1;
    return static_cast<int>(std::floor(std::log2(mod)));
}

namespace {

void check_dyadic(double K) {
    if (K == 0.0) return;
    if (K < 1.0) throw std::invalid_argument("modulation_project: K must be 0 or a dyadic >= 1");
    const double l = std::log2(K);
    if (std::abs(l - std::round(l)) > 1e-12)
        throw std::invalid_argument("modulation_project: K = " + std::to_string(K) +
                                    " is not dyadic");
}

template <typename Keep>
SpaceTimeField project(const SpaceTimeField& u, const SymbolSpec& spec, Keep keep) {
    const bool physical = u.repr == Representation::physical;
    SpaceTimeField uhat = physical ? spacetime_forward(u) : u;
    const Grid& g = *u.grid;
    size_t idx = 0;
    for (int m = 0; m < u.window.nt; ++m) {
        const double tau = uhat.tau(m);
        for (int j = 0; j < g.nx; ++j) {
            const double xx = g.xi[j] * g.xi[j];
            for (int q = 0; q < g.ny; ++q, ++idx) {
                const double frac = std::pow(std::abs(g.yfreq[q]), 2.0 * spec.alpha);
                const double w = spec.sign == Sign::elliptic ? xx + frac : xx - frac;
                if (!keep(std::abs(tau + w))) uhat.data[idx] = cdouble{0.0, 0.0};
            }
        }
    }
    return physical ? spacetime_inverse(uhat) : uhat;
}

} // namespace

SpaceTimeField modulation_project(const SpaceTimeField& u, double K, const SymbolSpec& spec) {
    check_dyadic(K);
    if (K == 0.0) return project(u, spec, [](double m) { return m < 1.0; });
    return project(u, spec, [K](double m) { return m >= K && m < 2.0 * K; });
}

SpaceTimeField overlapping_shell_project(const SpaceTimeField& u, double K, const SymbolSpec& spec) {
    if (!(K >= 1.0))
        throw std::invalid_argument("overlapping_shell_project: K must be >= 1");
    return project(u, spec, [K](double m) { return m >= 0.5 * K && m <= 2.0 * K; });
}

double max_grid_modulation(const SpaceTimeField& u, const SymbolSpec& spec) {
    const Grid& g = *u.grid;
    double m = 0.0;
    for (int it = 0; it < u.window.nt; ++it)
        for (int j = 0; j < g.nx; ++j)
            for (int q = 0; q < g.ny; ++q)
                m = std::max(m, modulation(u, it, j, q, spec));
    return m;
}

std::vector<std::pair<double, SpaceTimeField>> dyadic_decompose(const SpaceTimeField& u,
                                                                const SymbolSpec& spec) {
    const double maxmod = max_grid_modulation(u, spec);
    std::vector<std::pair<double, SpaceTimeField>> pieces;
    pieces.emplace_back(0.0, modulation_project(u, 0.0, spec));
    for (double K = 1.0; K <= maxmod; K *= 2.0)
        pieces.emplace_back(K, modulation_project(u, K, spec));
    return pieces;
}

double bourgain_norm(const SpaceTimeField& u, const BourgainParams& params,
                     const SymbolSpec& spec) {
    const SpaceTimeField uhat = u.repr == Representation::spectral ? u : spacetime_forward(u);
    const Grid& g = *u.grid;
    double s = 0.0;
    size_t idx = 0;
    for (int m = 0; m < u.window.nt; ++m) {
        const double tau = uhat.tau(m);
        for (int j = 0; j < g.nx; ++j) {
            for (int q = 0; q < g.ny; ++q, ++idx) {
                const double c2 = std::norm(uhat.data[idx]);
                if (c2 == 0.0) continue;
                const double mod = std::abs(tau + omega(spec, g.xi[j], g.yfreq[q]));
                const double wfreq = 1.0 + std::abs(g.xi[j]) + std::abs(g.yfreq[q]);
                s += std::pow(wfreq, 2.0 * params.s) * std::pow(1.0 + mod, 2.0 * params.b) * c2;
            }
        }
    }
    return std::sqrt(s * u.volume());
}

} // namespace fnls
