#include "fnls/probes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "fnls/fft.hpp"
#include "fnls/measure.hpp"
#include "fnls/propagator.hpp"

namespace fnls {

namespace {

void fill_common(ProbeReport& r, const SpaceTimeField& u, const SymbolSpec& spec,
                 const DataDesc& desc) {
    r.probe_id = desc.probe_id;
    r.data_kind = desc.kind;
    r.seed = desc.seed;
    r.alpha = spec.alpha;
    r.sign = spec.sign;
    r.delta = u.window.half_width();
    r.Nx = u.grid->nx;
    r.Ny = u.grid->ny;
    r.Nt = u.window.nt;
    r.Lx = u.grid->lx;
    r.outside_hypotheses = !within_hypotheses(spec);
}

} // namespace

ProbeReport strichartz_ratio(const Field& phi, const TimeWindow& window, const SymbolSpec& spec,
                             const DataDesc& desc) {
    const double den = l2_norm(phi);
    if (!(den > 0.0)) throw std::invalid_argument("strichartz_ratio: zero data");
    const SpaceTimeField u = sample_free_wave(phi, window, spec);
    ProbeReport r;
    fill_common(r, u, spec, desc);
    r.numerator = lp_spacetime_norm(u, 4.0);
    r.denominator = den;
    r.ratio = r.numerator / r.denominator;
    return r;
}

ProbeReport bilinear_ratio(const SpaceTimeField& u1, const SpaceTimeField& u2, double K1,
                           double K2, const SymbolSpec& spec, const DataDesc& desc) {
    if (!(K1 >= 1.0) || !(K2 >= 1.0))
        throw std::invalid_argument("bilinear_ratio: K1, K2 must be >= 1");

    const double n1_before = st_l2_norm(u1);
    const double n2_before = st_l2_norm(u2);
    SpaceTimeField v1 = overlapping_shell_project(u1, K1, spec);
    SpaceTimeField v2 = overlapping_shell_project(u2, K2, spec);
    if (v1.repr == Representation::spectral) v1 = spacetime_inverse(v1);
    if (v2.repr == Representation::spectral) v2 = spacetime_inverse(v2);
    const double n1 = st_l2_norm(v1);
    const double n2 = st_l2_norm(v2);
    if (!(n1 > 0.0) || !(n2 > 0.0))
        throw std::invalid_argument("bilinear_ratio: empty support after shell projection");

    SpaceTimeField prod = v1;
    for (size_t i = 0; i < prod.data.size(); ++i) prod.data[i] *= v2.data[i];

    ProbeReport r;
    fill_common(r, v1, spec, desc);
    r.K1 = K1;
    r.K2 = K2;
    r.b = 0.0;
    r.s = 0.0;
    r.numerator = st_l2_norm(prod);
    r.denominator = std::sqrt(K1 * K2) * n1 * n2;
    r.ratio = r.numerator / r.denominator;
    r.extras.emplace_back("discarded_frac1",
                          n1_before > 0.0 ? 1.0 - (n1 * n1) / (n1_before * n1_before) : 0.0);
    r.extras.emplace_back("discarded_frac2",
                          n2_before > 0.0 ? 1.0 - (n2 * n2) / (n2_before * n2_before) : 0.0);

    // Bound chain |J1 cap J2| * m(B) at the dominant output frequency, with
    // the substitutions xi0 = xi/2, n0 = n and C = |tau/2 - xi^2/4| - (K1+K2)
    // (epsilon-limit when C <= 0).  Reported, not asserted.
    const SpaceTimeField phat = spacetime_forward(prod);
    size_t best = 0;
    double best_mag = -1.0;
    for (size_t i = 0; i < phat.data.size(); ++i) {
        const double m = std::norm(phat.data[i]);
        if (m > best_mag) {
            best_mag = m;
            best = i;
        }
    }
    const Grid& g = *prod.grid;
    const int iy = static_cast<int>(best % g.ny);
    const int jx = static_cast<int>((best / g.ny) % g.nx);
    const int mt = static_cast<int>(best / (static_cast<size_t>(g.nx) * g.ny));
    const double tau = phat.tau(mt);
    const double xi = g.xi[jx];
    const long nout = g.nmode[iy];

    double chain_c = std::abs(0.5 * tau - 0.25 * xi * xi) - (K1 + K2);
    double chain_upper = -1.0;
    const bool chain_ok = spec.sign == Sign::hyperbolic
                              ? spec.alpha > 1.0
                              : (spec.alpha >= 1.0 && chain_c >= 1.0);
    if (chain_ok) {
        MeasureQuery q;
        q.spec = spec;
        q.xi0 = 0.5 * xi;
        q.n0 = nout;
        q.K = 2.0 * (K1 + K2);
        q.C = chain_c > 0.0 ? chain_c : 1e-9;
        q.trunc_N = 10000;
        chain_upper = measure_set(q).upper;
    }
    r.extras.emplace_back("chain_c", chain_c);
    r.extras.emplace_back("chain_measure_upper", chain_upper);
    r.extras.emplace_back("chain_value",
                          chain_upper >= 0.0 ? 4.0 * std::min(K1, K2) * chain_upper : -1.0);
    return r;
}

ProbeReport inhomog_ratio(const SpaceTimeField& f, const SymbolSpec& spec,
                          const DataDesc& desc) {
    if (f.repr != Representation::physical)
        throw std::invalid_argument("inhomog_ratio: physical forcing required");
    const double den = lp_spacetime_norm(f, 4.0 / 3.0);
    if (!(den > 0.0)) throw std::invalid_argument("inhomog_ratio: zero forcing");

    // The periodic lattice doubles as a closed lattice of the shrunk window
    // [t0, t1 - dt]; Duhamel prefix sums run on it directly.
    const double dt = f.window.periodic_dt();
    const TimeWindow lattice(f.window.t0, f.window.t0 + dt * (f.window.nt - 1), f.window.nt);

    std::vector<Field> samples(f.window.nt, make_field(f.grid));
    for (int i = 0; i < f.window.nt; ++i)
        std::copy(f.data.begin() + static_cast<size_t>(i) * f.grid->size(),
                  f.data.begin() + static_cast<size_t>(i + 1) * f.grid->size(),
                  samples[i].data.begin());
    const auto duh = duhamel_all_samples(samples, lattice, spec);

    SpaceTimeField out = make_spacetime_field(f.grid, f.window);
    for (int i = 0; i < f.window.nt; ++i)
        std::copy(duh[i].data.begin(), duh[i].data.end(),
                  out.data.begin() + static_cast<size_t>(i) * f.grid->size());

    ProbeReport r;
    fill_common(r, f, spec, desc);
    r.numerator = lp_spacetime_norm(out, 4.0);
    r.denominator = den;
    r.ratio = r.numerator / r.denominator;
    return r;
}

ProbeReport embedding_ratio(const SpaceTimeField& u, const BourgainParams& params,
                            const SymbolSpec& spec, const DataDesc& desc) {
    if (!(params.b > 0.5))
        throw std::invalid_argument(
            "embedding_ratio: the X^{b,0} embedding requires b > 1/2, got b = " +
            std::to_string(params.b));
    const SpaceTimeField uphys = u.repr == Representation::physical ? u : spacetime_inverse(u);
    ProbeReport r;
    fill_common(r, u, spec, desc);
    r.b = params.b;
    r.s = params.s;
    r.numerator = lp_spacetime_norm(uphys, 4.0);
    r.denominator = bourgain_norm(u, params, spec);
    if (!(r.denominator > 0.0)) throw std::invalid_argument("embedding_ratio: zero data");
    r.ratio = r.numerator / r.denominator;
    return r;
}

// --- ensemble data -------------------------------------------------------

namespace {

void normalize_l2(Field& f) {
    const double n = l2_norm(f);
    if (n > 0.0)
        for (auto& z : f.data) z /= n;
}

} // namespace

Field gaussian_field(GridPtr grid, int jmax, int nmax, const CounterRng& rng) {
    Field f = make_field(grid, Representation::spectral);
    const Grid& g = *grid;
    uint64_t ctr = 0;
    for (int j = 0; j < g.nx; ++j) {
        const long jj = Grid::signed_index(j, g.nx);
        for (int q = 0; q < g.ny; ++q, ++ctr) {
            if (std::labs(jj) > jmax || std::labs(g.nmode[q]) > nmax) continue;
            f.data[static_cast<size_t>(j) * g.ny + q] =
                cdouble{rng.gaussian(2 * ctr), rng.gaussian(2 * ctr + 1)};
        }
    }
    normalize_l2(f);
    return f;
}

Field wave_packet(GridPtr grid, int j0, int n0, double sj, double sn, const CounterRng& rng) {
    Field f = make_field(grid, Representation::spectral);
    const Grid& g = *grid;
    uint64_t ctr = 0;
    for (int j = 0; j < g.nx; ++j) {
        const double dj = static_cast<double>(Grid::signed_index(j, g.nx) - j0) / sj;
        for (int q = 0; q < g.ny; ++q, ++ctr) {
            const double dn = static_cast<double>(g.nmode[q] - n0) / sn;
            const double amp = std::exp(-0.5 * (dj * dj + dn * dn));
            if (amp < 1e-14) continue;
            f.data[static_cast<size_t>(j) * g.ny + q] =
                std::polar(amp, 2.0 * std::numbers::pi * rng.uniform(ctr));
        }
    }
    normalize_l2(f);
    return f;
}

Field knapp_tube(GridPtr grid, int j0, int n0, int wj, int wn) {
    Field f = make_field(grid, Representation::spectral);
    const Grid& g = *grid;
    for (int j = 0; j < g.nx; ++j) {
        if (std::labs(Grid::signed_index(j, g.nx) - j0) > wj) continue;
        for (int q = 0; q < g.ny; ++q) {
            if (std::labs(g.nmode[q] - n0) > wn) continue;
            f.data[static_cast<size_t>(j) * g.ny + q] = cdouble{1.0, 0.0};
        }
    }
    normalize_l2(f);
    return f;
}

SpaceTimeField shell_localized(GridPtr grid, const TimeWindow& window, double K,
                               const SymbolSpec& spec, const CounterRng& rng) {
    SpaceTimeField u = make_spacetime_field(grid, window, Representation::spectral);
    const Grid& g = *grid;
    uint64_t ctr = 0;
    size_t idx = 0;
    size_t filled = 0;
    for (int m = 0; m < window.nt; ++m) {
        const double tau = u.tau(m);
        for (int j = 0; j < g.nx; ++j) {
            for (int q = 0; q < g.ny; ++q, ++idx, ++ctr) {
                const double mod = std::abs(tau + omega(spec, g.xi[j], g.yfreq[q]));
                if (mod < 0.5 * K || mod > 2.0 * K) continue;
                u.data[idx] = cdouble{rng.gaussian(2 * ctr), rng.gaussian(2 * ctr + 1)};
                ++filled;
            }
        }
    }
    if (filled == 0)
        throw std::invalid_argument("shell_localized: shell K = " + std::to_string(K) +
                                    " is empty on this lattice");
    double n = st_l2_norm(u);
    for (auto& z : u.data) z /= n;
    return spacetime_inverse(u);
}

double smooth_cutoff(double t) {
    const auto bump = [](double x) { return x > 0.0 ? std::exp(-1.0 / x) : 0.0; };
    const double up = bump(2.0 - std::abs(t));
    const double down = bump(std::abs(t) - 1.0);
    return up + down > 0.0 ? up / (up + down) : 0.0;
}

SpaceTimeField sample_cutoff_free_wave(const Field& phi, const TimeWindow& window,
                                       const SymbolSpec& spec, double delta) {
    if (!(delta > 0.0))
        throw std::invalid_argument("sample_cutoff_free_wave: delta must be positive");
    SpaceTimeField u = sample_free_wave(phi, window, spec);
    const long sz = phi.grid->size();
    for (int i = 0; i < window.nt; ++i) {
        const double w = smooth_cutoff(window.periodic_time(i) / delta);
        for (long k = 0; k < sz; ++k) u.data[static_cast<size_t>(i) * sz + k] *= w;
    }
    return u;
}

} // namespace fnls
