#pragma once

#include <numbers>
#include <vector>

#include "fnls/field.hpp"
#include "fnls/symbol.hpp"
#include "fnls/timewindow.hpp"

namespace fnls {

/// Field sampled over a time window, with its (tau; xi, n) transform for
/// modulation analysis.  The window is treated as a time-torus: samples sit
/// at t0 + i*(t1-t0)/nt and the discrete time frequencies are
/// tau_m = 2*pi*m/(t1-t0), m in [-nt/2, nt/2).
///
/// Storage: data[(it*nx + ix)*ny + iy], double-precision complex.
/// Plancherel: ||u||_2^2 = sum |u|^2 dt dx dy = V * sum |u_hat|^2 with
/// V = (t1-t0)*lx*ly.
struct SpaceTimeField {
    GridPtr grid;
    TimeWindow window;
    Representation repr = Representation::physical;
    std::vector<cdouble> data;

    long size() const { return static_cast<long>(window.nt) * grid->size(); }
    double volume() const { return window.length() * grid->area(); }
    double cell() const { return window.periodic_dt() * grid->cell(); }

    cdouble& at(int it, int ix, int iy) {
        return data[(static_cast<size_t>(it) * grid->nx + ix) * grid->ny + iy];
    }
    const cdouble& at(int it, int ix, int iy) const {
        return data[(static_cast<size_t>(it) * grid->nx + ix) * grid->ny + iy];
    }

    /// tau value of time-storage index it.
    double tau(int it) const {
        return 2.0 * std::numbers::pi *
               static_cast<double>(Grid::signed_index(it, window.nt)) / window.length();
    }
};

SpaceTimeField make_spacetime_field(GridPtr grid, const TimeWindow& window,
                                    Representation repr = Representation::physical);

SpaceTimeField spacetime_forward(const SpaceTimeField& u);
SpaceTimeField spacetime_inverse(const SpaceTimeField& uhat);

/// Sample the free wave U(t)phi on the window's periodic lattice (physical).
SpaceTimeField sample_free_wave(const Field& phi, const TimeWindow& window,
                                const SymbolSpec& spec);

double st_l2_norm(const SpaceTimeField& u);
double st_l2_distance(const SpaceTimeField& a, const SpaceTimeField& b);

/// Space-time Lp norm, p in {4/3, 2, 4}; physical side quadrature with cell
/// measure dt*dx*dy.
double lp_spacetime_norm(const SpaceTimeField& u, double p);

/// Modulation |tau + omega(xi, n)| distance of a space-time frequency from
/// the characteristic surface.
double modulation(const SpaceTimeField& u, int it, int ix, int iy, const SymbolSpec& spec);

/// Disjoint dyadic shell index for a modulation value: -1 is the core
/// [0, 1), k >= 0 the half-open shell [2^k, 2^{k+1}).
int shell_index(double mod);

/// Restrict to the disjoint dyadic shell; K = 0 is the core |mod| < 1,
/// otherwise K must be a dyadic value >= 1 and the shell is [K, 2K).
/// Idempotent; distinct-shell projections are orthogonal.
SpaceTimeField modulation_project(const SpaceTimeField& u, double K, const SymbolSpec& spec);

/// Restrict to the overlapping shell K/2 <= |mod| <= 2K used by the bilinear
/// estimates' hypothesis.
SpaceTimeField overlapping_shell_project(const SpaceTimeField& u, double K, const SymbolSpec& spec);

/// Complete disjoint decomposition: (K, piece) for K = 0, 1, 2, 4, ... up to
/// the largest shell the grid supports.  Pieces sum to u exactly.
std::vector<std::pair<double, SpaceTimeField>> dyadic_decompose(const SpaceTimeField& u,
                                                                const SymbolSpec& spec);

/// Largest modulation representable on the lattice (data-independent).
double max_grid_modulation(const SpaceTimeField& u, const SymbolSpec& spec);

struct BourgainParams {
    double b = 0.55;
    double s = 0.0;
};

/// Weighted Plancherel sum
///   ||u||^2 = V * sum (1+|xi|+|n|)^{2s} (1+|tau+omega|)^{2b} |u_hat|^2.
double bourgain_norm(const SpaceTimeField& u, const BourgainParams& params,
                     const SymbolSpec& spec);

} // namespace fnls
