#include "fnls/solver.hpp"

#include <cmath>

namespace fnls {

Field nonlinear_phase_step(const Field& u, double dt, double nu) {
    if (u.repr != Representation::physical)
        throw std::invalid_argument("nonlinear_phase_step: physical representation required");
    Field out = u;
    if (nu == 0.0 || dt == 0.0) return out;
    for (auto& z : out.data) z *= std::polar(1.0, -nu * std::norm(z) * dt);
    return out;
}

namespace {

// Reusable per-step state for the splitting: half-step phase table and the
// dealias pass, shared by strang_step and evolve.
struct StrangWorkspace {
    std::vector<cdouble> half_phase;
    DealiasRule rule;
    double dt;
    double nu;

    StrangWorkspace(const Grid& grid, const SimulationConfig& config, double dt_)
        : half_phase(phase_table(grid, config.spec, dt_ / 2.0)),
          rule(config.dealias_rule), dt(dt_), nu(config.nu) {}

    // uhat -> uhat, spectral in/out.
    Field step(const Field& uhat) const {
        Field v = uhat;
        for (size_t i = 0; i < v.data.size(); ++i) v.data[i] *= half_phase[i];
        Field w = forward(nonlinear_phase_step(inverse(v), dt, nu));
        w = dealias(w, rule);
        for (size_t i = 0; i < w.data.size(); ++i) w.data[i] *= half_phase[i];
        return w;
    }
};

} // namespace

Field strang_step(const Field& u, double dt, const SimulationConfig& config) {
    config.validate();
    const StrangWorkspace ws(*u.grid, config, dt);
    const bool physical = u.repr == Representation::physical;
    Field uhat = physical ? forward(u) : u;
    uhat = ws.step(uhat);
    return physical ? inverse(uhat) : uhat;
}

Trajectory evolve(const Field& phi, const SimulationConfig& config) {
    config.validate();
    const double steps_real = config.t_end / config.dt;
    const long nsteps = std::lround(steps_real);
    if (nsteps < 1 || std::abs(steps_real - static_cast<double>(nsteps)) > 1e-9 * steps_real)
        throw std::invalid_argument("evolve: t_end/dt must be a positive integer, got " +
                                    std::to_string(steps_real));

    const StrangWorkspace ws(*phi.grid, config, config.dt);
    Field uhat = dealias(phi.repr == Representation::spectral ? phi : forward(phi),
                         config.dealias_rule);

    Trajectory traj;
    Field u0 = inverse(uhat);
    const double mass0 = mass(u0);
    traj.diagnostics.push_back({0, 0.0, mass0, 0.0, l4_norm(u0)});
    if (config.snapshot_stride > 0) traj.snapshots.push_back({0, 0.0, u0});

    for (long s = 1; s <= nsteps; ++s) {
        uhat = ws.step(uhat);
        const double t = static_cast<double>(s) * config.dt;
        Field u = inverse(uhat);
        if (!all_finite(u)) throw BlowUpError(static_cast<int>(s), t);
        const double m = mass(u);
        traj.diagnostics.push_back(
            {static_cast<int>(s), t, m, std::abs(m - mass0) / mass0, l4_norm(u)});
        const bool snap = config.snapshot_stride > 0 && s % config.snapshot_stride == 0;
        if (snap || s == nsteps) {
            if (snap) traj.snapshots.push_back({static_cast<int>(s), t, u});
            if (s == nsteps) traj.final_state = std::move(u);
        }
    }
    return traj;
}

namespace {

std::vector<Field> free_wave_samples(const Field& phi, const SimulationConfig& config,
                                     const TimeWindow& window) {
    Field phihat = phi.repr == Representation::spectral ? phi : forward(phi);
    std::vector<Field> u;
    u.reserve(window.nt);
    for (int i = 0; i < window.nt; ++i)
        u.push_back(inverse(linear_propagate(phihat, window.closed_time(i), config.spec)));
    return u;
}

std::vector<Field> cubic_samples(const std::vector<Field>& u) {
    std::vector<Field> w;
    w.reserve(u.size());
    for (const auto& ui : u) {
        Field wi = ui;
        for (auto& z : wi.data) z *= std::norm(z);
        w.push_back(std::move(wi));
    }
    return w;
}

} // namespace

PicardResult picard_iterate(const Field& phi, const SimulationConfig& config,
                            const TimeWindow& window, int max_iter, double tol) {
    config.validate();
    if (max_iter < 1) throw std::invalid_argument("picard_iterate: max_iter must be >= 1");
    if (!window.contains(0.0))
        throw std::invalid_argument("picard_iterate: window must contain t = 0");

    const auto free_wave = free_wave_samples(phi, config, window);
    PicardResult res;
    res.iterate = free_wave;
    res.report.phi_l2 = l2_norm(phi);

    int grew = 0;
    for (int k = 1; k <= max_iter; ++k) {
        const auto w = cubic_samples(res.iterate);
        const auto integral = duhamel_all_samples(w, window, config.spec);
        std::vector<Field> next(free_wave);
        const cdouble factor{0.0, -config.nu}; // -i nu
        for (int i = 0; i < window.nt; ++i)
            for (size_t j = 0; j < next[i].data.size(); ++j)
                next[i].data[j] += factor * integral[i].data[j];

        double d = 0.0;
        for (int i = 0; i < window.nt; ++i)
            d = std::max(d, l2_distance(next[i], res.iterate[i]));
        res.report.distances.push_back(d);
        res.report.iterations = k;
        res.iterate = std::move(next);

        if (res.report.distances.size() >= 2 &&
            d > res.report.distances[res.report.distances.size() - 2]) {
            if (++grew >= 3) {
                res.report.diverged = true;
                break;
            }
        } else {
            grew = 0;
        }
        if (d <= tol) {
            res.report.converged = true;
            break;
        }
    }

    // Geometric-mean fit of the contraction factor over positive distances.
    const auto& dd = res.report.distances;
    double acc = 0.0;
    int cnt = 0;
    for (size_t i = 1; i < dd.size(); ++i) {
        if (dd[i] > 0.0 && dd[i - 1] > 0.0) {
            acc += std::log(dd[i] / dd[i - 1]);
            ++cnt;
        }
    }
    res.report.contraction_factor = cnt > 0 ? std::exp(acc / cnt) : 0.0;
    return res;
}

Field rescale(const Field& phi, const ScalingParams& params, const SymbolSpec& spec) {
    const Grid& g = *phi.grid;
    if (!g.planar)
        throw std::invalid_argument("rescale: defined on planar grids (make_planar_grid)");
    const double lambda = params.lambda;
    if (lambda == 1.0) return phi;

    const Field phihat = phi.repr == Representation::spectral ? phi : forward(phi);
    const double ry = std::pow(lambda, 1.0 / spec.alpha);

    // Separable direct evaluation of the Fourier series at the scaled
    // sample points: E_x[j][p] = e^{i xi_j (lambda x_p)}, same in y.
    // Scaled points outside the fundamental domain evaluate to zero rather
    // than to the periodic wrap: the data is assumed to decay before the box
    // edge, and wrapping would fold its copies back in.
    std::vector<cdouble> ex(static_cast<size_t>(g.nx) * g.nx);
    for (int j = 0; j < g.nx; ++j)
        for (int p = 0; p < g.nx; ++p) {
            const double xs = lambda * g.x(p);
            ex[static_cast<size_t>(j) * g.nx + p] =
                std::abs(xs) <= 0.5 * g.lx ? std::polar(1.0, g.xi[j] * xs) : cdouble{0.0, 0.0};
        }
    std::vector<cdouble> ey(static_cast<size_t>(g.ny) * g.ny);
    for (int q = 0; q < g.ny; ++q)
        for (int m = 0; m < g.ny; ++m) {
            const double ys = ry * g.y(q);
            ey[static_cast<size_t>(m) * g.ny + q] =
                std::abs(ys) <= 0.5 * g.ly ? std::polar(1.0, g.yfreq[m] * ys) : cdouble{0.0, 0.0};
        }

    // tmp[j][q] = sum_m phihat[j][m] ey[m][q]
    std::vector<cdouble> tmp(static_cast<size_t>(g.nx) * g.ny, cdouble{0, 0});
    for (int j = 0; j < g.nx; ++j)
        for (int m = 0; m < g.ny; ++m) {
            const cdouble c = phihat.data[static_cast<size_t>(j) * g.ny + m];
            if (c == cdouble{0.0, 0.0}) continue;
            const cdouble* row = &ey[static_cast<size_t>(m) * g.ny];
            cdouble* dst = &tmp[static_cast<size_t>(j) * g.ny];
            for (int q = 0; q < g.ny; ++q) dst[q] += c * row[q];
        }

    Field out = make_field(phi.grid, Representation::physical);
    for (int p = 0; p < g.nx; ++p)
        for (int j = 0; j < g.nx; ++j) {
            const cdouble e = ex[static_cast<size_t>(j) * g.nx + p];
            const cdouble* src = &tmp[static_cast<size_t>(j) * g.ny];
            cdouble* dst = &out.data[static_cast<size_t>(p) * g.ny];
            for (int q = 0; q < g.ny; ++q) dst[q] += lambda * e * src[q];
        }

    // Border-band mass fraction flags data escaping the box.
    double border = 0.0, total = 0.0;
    for (int p = 0; p < g.nx; ++p)
        for (int q = 0; q < g.ny; ++q) {
            const double m2 = std::norm(out.at(p, q));
            total += m2;
            if (p < 2 || p >= g.nx - 2 || q < 2 || q >= g.ny - 2) border += m2;
        }
    if (total > 0.0 && border / total > 1e-8)
        throw SupportEscapeError("rescale: support escaped the box (border mass fraction " +
                                 std::to_string(border / total) + " at lambda = " +
                                 std::to_string(lambda) + ")");
    return out;
}

} // namespace fnls
