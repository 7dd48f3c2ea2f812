#include "fnls/fft.hpp"

#include <cmath>
#include <stdexcept>

#include "raw_fft.hpp"

namespace fnls {

namespace {

// x_0 = -lx/2 shifts the transform phase by e^{+-i pi j} = (-1)^j per line
// mode; same for the planar y direction.  Exact +-1 factors, so on-grid
// plane waves map to exactly unit coefficients.
inline double xsign(int j) { return j % 2 == 0 ? 1.0 : -1.0; }

} // namespace

Field forward(const Field& u) {
    if (u.repr != Representation::physical)
        throw std::invalid_argument("forward: physical representation required");
    const Grid& g = *u.grid;
    Field out;
    out.grid = u.grid;
    out.repr = Representation::spectral;
    out.data.resize(u.data.size());
    detail::raw_dft({g.nx, g.ny}, u.data.data(), out.data.data(), -1);
    const double norm = 1.0 / static_cast<double>(g.size());
    for (int j = 0; j < g.nx; ++j) {
        const double sx = xsign(j) * norm;
        for (int q = 0; q < g.ny; ++q) {
            const double s = g.planar ? sx * xsign(q) : sx;
            out.data[static_cast<size_t>(j) * g.ny + q] *= s;
        }
    }
    return out;
}

Field inverse(const Field& uhat) {
    if (uhat.repr != Representation::spectral)
        throw std::invalid_argument("inverse: spectral representation required");
    const Grid& g = *uhat.grid;
    std::vector<cdouble> tmp(uhat.data.size());
    for (int j = 0; j < g.nx; ++j) {
        const double sx = xsign(j);
        for (int q = 0; q < g.ny; ++q) {
            const double s = g.planar ? sx * xsign(q) : sx;
            tmp[static_cast<size_t>(j) * g.ny + q] =
                uhat.data[static_cast<size_t>(j) * g.ny + q] * s;
        }
    }
    Field out;
    out.grid = uhat.grid;
    out.repr = Representation::physical;
    out.data.resize(uhat.data.size());
    detail::raw_dft({g.nx, g.ny}, tmp.data(), out.data.data(), +1);
    return out;
}

const char* to_string(DealiasRule r) {
    switch (r) {
        case DealiasRule::none: return "none";
        case DealiasRule::two_thirds: return "two_thirds";
        case DealiasRule::half: return "half";
    }
    return "?";
}

DealiasRule dealias_rule_from_string(const std::string& s) {
    if (s == "none") return DealiasRule::none;
    if (s == "two_thirds") return DealiasRule::two_thirds;
    if (s == "half") return DealiasRule::half;
    throw std::invalid_argument("dealias rule must be none|two_thirds|half, got '" + s + "'");
}

bool dealias_keeps(int mode_abs, int n_modes, DealiasRule rule) {
    if (rule == DealiasRule::none) return true;
    const double frac = rule == DealiasRule::two_thirds ? 2.0 / 3.0 : 0.5;
    return mode_abs <= frac * (n_modes / 2);
}

Field dealias(const Field& uhat, DealiasRule rule) {
    if (uhat.repr != Representation::spectral)
        throw std::invalid_argument("dealias: spectral representation required");
    Field out = uhat;
    if (rule == DealiasRule::none) return out;
    const Grid& g = *uhat.grid;
    for (int j = 0; j < g.nx; ++j) {
        const bool keep_x = dealias_keeps(static_cast<int>(std::labs(Grid::signed_index(j, g.nx))),
                                          g.nx, rule);
        for (int q = 0; q < g.ny; ++q) {
            const bool keep =
                keep_x && dealias_keeps(static_cast<int>(std::labs(g.nmode[q])), g.ny, rule);
            if (!keep) out.data[static_cast<size_t>(j) * g.ny + q] = cdouble{0.0, 0.0};
        }
    }
    return out;
}

} // namespace fnls
