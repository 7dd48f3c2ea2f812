#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "fnls/fft.hpp"
#include "fnls/field.hpp"
#include "fnls/propagator.hpp"
#include "fnls/symbol.hpp"
#include "fnls/timewindow.hpp"

namespace fnls {

struct SimulationConfig {
    SymbolSpec spec;
    GridPtr grid;
    double nu = 0.0; // focusing nu < 0, defocusing nu > 0
    double dt = 1e-3;
    double t_end = 1.0;
    DealiasRule dealias_rule = DealiasRule::two_thirds;
    int snapshot_stride = 0; // 0 = final snapshot only

    void validate() const {
        if (!grid) throw std::invalid_argument("SimulationConfig: grid not set");
        if (!(dt > 0.0)) throw std::invalid_argument("SimulationConfig: dt must be positive");
    }
};

/// The field turned non-finite during time stepping.
struct BlowUpError : std::runtime_error {
    int step;
    double t;
    BlowUpError(int step_, double t_)
        : std::runtime_error("evolve: field became non-finite at step " + std::to_string(step_) +
                             ", t = " + std::to_string(t_)),
          step(step_), t(t_) {}
};

/// Exact pointwise solution of i u_t = nu |u|^2 u over dt:
/// u -> u * e^{-i nu |u|^2 dt}.  Modulus-preserving.
Field nonlinear_phase_step(const Field& u, double dt, double nu);

/// One Strang step U(dt/2) . N(dt) . U(dt/2), dealiasing after the
/// nonlinear substep.  Representation-preserving.
Field strang_step(const Field& u, double dt, const SimulationConfig& config);

struct DiagnosticsRow {
    int step;
    double t;
    double mass;
    double mass_drift_rel;
    double l4_space_norm;
};

struct TrajectorySnapshot {
    int step;
    double t;
    Field field; // physical
};

struct Trajectory {
    std::vector<TrajectorySnapshot> snapshots;
    std::vector<DiagnosticsRow> diagnostics;
    Field final_state; // physical
};

/// Split-step evolution to t_end with per-step mass and spatial-L4
/// diagnostics.  t_end/dt must be a positive integer; initial data is
/// dealiased once up front.  Throws BlowUpError naming the step on
/// NaN/overflow.
Trajectory evolve(const Field& phi, const SimulationConfig& config);

struct PicardReport {
    std::vector<double> distances; // sup-in-time L2 between consecutive iterates
    double contraction_factor = 0.0; // geometric fit of d_{k+1}/d_k
    bool converged = false;
    bool diverged = false; // distances grew for 3 consecutive iterations
    int iterations = 0;
    double phi_l2 = 0.0;
};

struct PicardResult {
    std::vector<Field> iterate; // physical, on the window's closed lattice
    PicardReport report;
};

/// Picard iteration of the integral equation
///   u = U(t) phi - i nu int_0^t U(t-s) |u|^2 u(s) ds
/// on the window's closed sample lattice, starting from the free wave.
/// The window must contain 0 on its lattice.
PicardResult picard_iterate(const Field& phi, const SimulationConfig& config,
                            const TimeWindow& window, int max_iter, double tol);

struct ScalingParams {
    double lambda = 1.0;
    double s = 0.0;
    ScalingParams() = default;
    ScalingParams(double l, double s_) : lambda(l), s(s_) {
        if (!(l > 0.0)) throw std::invalid_argument("ScalingParams: lambda must be positive");
    }
};

/// Rescaled support left the box (checked on the output's border band).
struct SupportEscapeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Zoom map u(x,y) -> lambda * u(lambda x, lambda^{1/alpha} y) on a planar
/// grid, resampled by direct spectral interpolation.  The L2 norm scales by
/// lambda^{(1-1/alpha)/2}.
Field rescale(const Field& phi, const ScalingParams& params, const SymbolSpec& spec);

} // namespace fnls
