#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fnls/rng.hpp"
#include "fnls/spacetime.hpp"

namespace fnls {

/// One row of an inequality probe: inputs, the two norms, their ratio and
/// metadata.  CSV columns: probe_id, alpha, sign, b, s, K1, K2, delta, Nx,
/// Ny, Nt, Lx, data_kind, seed, numerator, denominator, ratio,
/// outside_hypotheses; probe-specific extras are appended after those.
struct ProbeReport {
    std::string probe_id;
    double alpha = 0.0;
    Sign sign = Sign::elliptic;
    double b = 0.0;
    double s = 0.0;
    double K1 = 0.0;
    double K2 = 0.0;
    double delta = 0.0;
    int Nx = 0;
    int Ny = 0;
    int Nt = 0;
    double Lx = 0.0;
    std::string data_kind;
    uint64_t seed = 0;
    double numerator = 0.0;
    double denominator = 0.0;
    double ratio = 0.0;
    bool outside_hypotheses = false;
    std::vector<std::pair<std::string, double>> extras;
};

/// Descriptor of the probe data, set by the ensemble driver.
struct DataDesc {
    std::string probe_id;
    std::string kind;
    uint64_t seed = 0;
};

/// ||U(t)phi||_{L4(I x box)} / ||phi||_2 on the window's periodic lattice.
ProbeReport strichartz_ratio(const Field& phi, const TimeWindow& window, const SymbolSpec& spec,
                             const DataDesc& desc = {});

/// ||u1 u2||_2 / ((K1 K2)^{1/2} ||u1||_2 ||u2||_2) with the inputs projected
/// onto the overlapping shells [K_i/2, 2K_i]; the discarded input mass
/// fraction and the |J1 cap J2| * m(B) bound chain are reported as extras.
ProbeReport bilinear_ratio(const SpaceTimeField& u1, const SpaceTimeField& u2, double K1,
                           double K2, const SymbolSpec& spec, const DataDesc& desc = {});

/// || int_0^t U(t-s) f ds ||_{L4} / ||f||_{L4/3} over the window.  The
/// forcing's window must contain t = 0 on its periodic lattice.
ProbeReport inhomog_ratio(const SpaceTimeField& f, const SymbolSpec& spec,
                          const DataDesc& desc = {});

/// ||u||_{L4} / ||u||_{X^{b,0}}; requires b > 1/2.
ProbeReport embedding_ratio(const SpaceTimeField& u, const BourgainParams& params,
                            const SymbolSpec& spec, const DataDesc& desc = {});

// --- ensemble data -------------------------------------------------------

/// Gaussian random spectral coefficients, flat on |j| <= jmax, |n| <= nmax,
/// normalized to unit L2.
Field gaussian_field(GridPtr grid, int jmax, int nmax, const CounterRng& rng);

/// Gaussian spectral bump of widths (sj, sn) centered at mode (j0, n0),
/// random phases, unit L2.
Field wave_packet(GridPtr grid, int j0, int n0, double sj, double sn, const CounterRng& rng);

/// Indicator of an anisotropic frequency rectangle |j - j0| <= wj,
/// |n - n0| <= wn (constant coefficients), unit L2.
Field knapp_tube(GridPtr grid, int j0, int n0, int wj, int wn);

/// Gaussian random coefficients supported on the overlapping shell
/// [K/2, 2K]; unit space-time L2; physical representation.
/// Throws if the shell is empty on this lattice.
SpaceTimeField shell_localized(GridPtr grid, const TimeWindow& window, double K,
                               const SymbolSpec& spec, const CounterRng& rng);

/// psi_delta(t) U(t) phi with the smooth cutoff psi(t/delta); physical.
SpaceTimeField sample_cutoff_free_wave(const Field& phi, const TimeWindow& window,
                                       const SymbolSpec& spec, double delta);

/// Smooth cutoff: 1 on [-1, 1], 0 outside (-2, 2), C-infinity transition.
double smooth_cutoff(double t);

} // namespace fnls
