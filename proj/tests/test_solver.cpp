#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numbers>

#include "fnls/solver.hpp"
#include "test_helpers.hpp"

using namespace fnls;
using fnls::test::random_physical;
using fnls::test::random_smooth;
using fnls::test::rel_diff;

namespace {

SimulationConfig base_config(GridPtr grid, const SymbolSpec& spec, double nu, double dt,
                             double t_end) {
    SimulationConfig c;
    c.spec = spec;
    c.grid = std::move(grid);
    c.nu = nu;
    c.dt = dt;
    c.t_end = t_end;
    return c;
}

} // namespace

TEST_CASE("nonlinear phase step: identity at nu = 0, constant field, modulus preserved") {
    auto g = make_grid(16, 8, 7.0);

    SUBCASE("nu = 0 is the identity") {
        const Field u = random_physical(g, 1);
        CHECK(nonlinear_phase_step(u, 0.1, 0.0).data == u.data);
    }

    SUBCASE("constant field c picks up e^{-i nu |c|^2 dt}") {
        Field u = make_field(g);
        const cdouble c{0.6, 0.8};
        for (auto& z : u.data) z = c;
        const double nu = -1.3, dt = 0.21;
        const Field v = nonlinear_phase_step(u, dt, nu);
        const cdouble expect = c * std::polar(1.0, -nu * std::norm(c) * dt);
        for (const auto& z : v.data) CHECK(std::abs(z - expect) < 1e-15);
    }

    SUBCASE("L2 norm preserved to 1e-14") {
        const Field u = random_physical(g, 2);
        const Field v = nonlinear_phase_step(u, 0.13, 2.0);
        CHECK(rel_diff(l2_norm(v), l2_norm(u)) <= 1e-14);
        for (size_t i = 0; i < u.data.size(); ++i)
            CHECK(rel_diff(std::abs(v.data[i]), std::abs(u.data[i])) <= 1e-13);
    }
}

TEST_CASE("strang step: nu = 0 equals the linear flow on band-limited data") {
    auto g = make_grid(32, 16, 9.0);
    const SymbolSpec spec(1.5, Sign::hyperbolic);
    auto config = base_config(g, spec, 0.0, 0.05, 1.0);
    const Field u = dealias(random_smooth(g, 3), config.dealias_rule);
    const Field a = strang_step(u, 0.05, config);
    const Field b = linear_propagate(u, 0.05, spec);
    CHECK(l2_distance(a, b) / l2_norm(u) < 1e-13);
}

TEST_CASE("strang step: mass drift over 1e3 steps stays below 1e-10") {
    auto g = make_grid(32, 16, 9.0);
    for (const Sign sign : {Sign::elliptic, Sign::hyperbolic})
        for (const double nu : {1.0, -1.0})
            for (const double alpha : {1.0, 1.5, 2.0}) {
                auto config = base_config(g, SymbolSpec(alpha, sign), nu, 1e-3, 1.0);
                const Trajectory traj = evolve(random_smooth(g, 17), config);
                double drift = 0.0;
                for (const auto& d : traj.diagnostics) drift = std::max(drift, d.mass_drift_rel);
                CAPTURE(alpha);
                CAPTURE(nu);
                CHECK(drift <= 1e-10);
            }
}

TEST_CASE("strang self-convergence at order 2 against a dt/8 reference") {
    auto g = make_grid(32, 16, 9.0);
    const SymbolSpec spec(1.5, Sign::elliptic);
    const Field phi = random_smooth(g, 23);
    const double T = 0.5, dt = T / 32.0;

    auto run = [&](double step) {
        auto config = base_config(g, spec, 1.0, step, T);
        return evolve(phi, config).final_state;
    };
    const Field ref = run(dt / 8.0);
    const double e1 = l2_distance(run(dt), ref);
    const double e2 = l2_distance(run(dt / 2.0), ref);
    // exact order-2 errors against the dt/8 reference give
    // (1 - 1/64)/(1/4 - 1/64) = 4.2
    CHECK(e1 / e2 >= 3.5);
    CHECK(e1 / e2 <= 4.5);
}

// Plane-wave closed form: u = a e^{i(xi0 x + n0 y)} e^{-i t (omega + nu |a|^2)}
// solves the equation: i d_t u contributes (omega + nu|a|^2) u, the operator
// contributes -omega u, leaving exactly nu |u|^2 u with |u| = |a| constant.
TEST_CASE("evolve: single-mode data matches the plane-wave closed form") {
    auto g = make_grid(32, 16, 9.0);
    const SymbolSpec spec(1.5, Sign::hyperbolic);
    auto config = base_config(g, spec, 1.0, 1e-2, 1.0);
    const int j0 = 2, q0 = 3;
    const double a = 0.8;

    Field phihat = make_field(g, Representation::spectral);
    phihat.at(j0, q0) = cdouble{a, 0.0};
    const Trajectory traj = evolve(inverse(phihat), config);

    const double w = omega(spec, g->xi[j0], g->yfreq[q0]);
    Field expect = make_field(g);
    for (int p = 0; p < g->nx; ++p)
        for (int q = 0; q < g->ny; ++q)
            expect.at(p, q) =
                a * std::polar(1.0, g->xi[j0] * g->x(p) + g->yfreq[q0] * g->y(q) -
                                        config.t_end * (w + config.nu * a * a));
    CHECK(l2_distance(traj.final_state, expect) / l2_norm(expect) <= 1e-8);
}

TEST_CASE("evolve: nu = 0 reduces to the linear group; mass conserved") {
    auto g = make_grid(32, 16, 9.0);
    const SymbolSpec spec(2.0, Sign::elliptic);
    auto config = base_config(g, spec, 0.0, 1e-2, 1.0);
    const Field phi = dealias(random_smooth(g, 29), config.dealias_rule);
    const Trajectory traj = evolve(phi, config);
    const Field lin = inverse(linear_propagate(phi, config.t_end, spec));
    CHECK(l2_distance(traj.final_state, lin) <= 1e-10);
    CHECK(traj.diagnostics.back().mass_drift_rel <= 1e-10);
    CHECK(rel_diff(mass(traj.final_state), mass(inverse(phi))) <= 1e-10);
}

TEST_CASE("evolve: diagnostics, snapshots, preconditions, blow-up error") {
    auto g = make_grid(16, 8, 7.0);
    auto config = base_config(g, SymbolSpec(1.0, Sign::elliptic), 1.0, 0.1, 1.0);
    config.snapshot_stride = 5;
    const Trajectory traj = evolve(random_smooth(g, 31), config);
    CHECK(traj.diagnostics.size() == 11);
    CHECK(traj.snapshots.size() == 3); // steps 0, 5, 10
    CHECK(traj.diagnostics.back().t == doctest::Approx(1.0));
    CHECK(traj.diagnostics[3].l4_space_norm > 0.0);

    SUBCASE("t_end/dt must be an integer") {
        config.t_end = 1.05;
        CHECK_THROWS_AS((void)evolve(random_smooth(g, 1), config), std::invalid_argument);
    }

    SUBCASE("non-finite fields raise BlowUpError naming the step") {
        Field bad = random_smooth(g, 2);
        bad.data[5] = cdouble{std::numeric_limits<double>::quiet_NaN(), 0.0};
        config.t_end = 1.0;
        try {
            (void)evolve(inverse(bad), config);
            FAIL("expected BlowUpError");
        } catch (const BlowUpError& e) {
            CHECK(e.step == 1);
            CHECK(std::string(e.what()).find("step 1") != std::string::npos);
        }
    }
}

TEST_CASE("mass: constant field, zero field, unitarity") {
    auto g = make_grid(16, 8, 5.0);
    Field u = make_field(g);
    const cdouble c{0.3, -0.4};
    for (auto& z : u.data) z = c;
    CHECK(mass(u) == doctest::Approx(std::norm(c) * g->lx * 2.0 * std::numbers::pi));
    CHECK(mass(make_field(g)) == 0.0);

    const Field phi = random_physical(g, 37);
    const Field prop = linear_propagate(phi, 0.77, SymbolSpec(1.5, Sign::elliptic));
    CHECK(rel_diff(mass(prop), mass(phi)) <= 1e-12);
}

TEST_CASE("picard: nu = 0 converges in one exact step") {
    auto g = make_grid(16, 8, 7.0);
    auto config = base_config(g, SymbolSpec(1.5, Sign::elliptic), 0.0, 1e-3, 1.0);
    const TimeWindow window(-0.1, 0.1, 11);
    const PicardResult pr = picard_iterate(random_smooth(g, 41), config, window, 10, 1e-12);
    REQUIRE(pr.report.distances.size() == 1);
    CHECK(pr.report.distances[0] == 0.0);
    CHECK(pr.report.converged);
    CHECK(pr.report.iterations == 1);
}

TEST_CASE("picard: small data contracts geometrically and satisfies the equation") {
    auto g = make_grid(32, 8, 9.0);
    const SymbolSpec spec(1.5, Sign::hyperbolic);
    auto config = base_config(g, spec, 1.0, 1e-3, 1.0);
    const TimeWindow window(-0.1, 0.1, 21);
    const Field phi = random_smooth(g, 43, 3, 1, 0.3);
    const double tol = 1e-10;
    const PicardResult pr = picard_iterate(phi, config, window, 25, tol);

    CHECK(pr.report.converged);
    CHECK_FALSE(pr.report.diverged);
    CHECK(pr.report.contraction_factor < 1.0);
    for (size_t k = 1; k < pr.report.distances.size(); ++k)
        CHECK(pr.report.distances[k] < pr.report.distances[k - 1]);

    // Residual recomputed through the public duhamel path.
    std::vector<Field> cubic;
    for (const auto& u : pr.iterate) {
        Field w = u;
        for (auto& z : w.data) z *= std::norm(z);
        cubic.push_back(std::move(w));
    }
    const Field phihat = phi; // already spectral
    double resid = 0.0;
    for (int i = 0; i < window.nt; ++i) {
        const double t = window.closed_time(i);
        Field rhs = inverse(linear_propagate(phihat, t, spec));
        const Field integral = duhamel(cubic, window, t, spec);
        for (size_t k = 0; k < rhs.data.size(); ++k)
            rhs.data[k] -= cdouble{0.0, config.nu} * integral.data[k];
        resid = std::max(resid, l2_distance(pr.iterate[i], rhs));
    }
    CHECK(resid <= 10.0 * tol);
}

TEST_CASE("picard: large data is reported as divergent, not silently ignored") {
    auto g = make_grid(16, 8, 7.0);
    auto config = base_config(g, SymbolSpec(1.5, Sign::elliptic), 1.0, 1e-3, 1.0);
    const TimeWindow window(-0.5, 0.5, 17);
    const Field big = random_smooth(g, 47, 2, 1, 50.0);
    const PicardResult pr = picard_iterate(big, config, window, 15, 1e-12);
    CHECK(pr.report.diverged);
    CHECK_FALSE(pr.report.converged);
    CHECK(pr.report.phi_l2 == doctest::Approx(50.0));
}

TEST_CASE("rescale: norm law, identity, escape detection") {
    auto g = make_planar_grid(128, 128, 40.0, 40.0);
    Field phi = make_field(g);
    const double sigma = 2.5;
    for (int p = 0; p < g->nx; ++p)
        for (int q = 0; q < g->ny; ++q) {
            const double x = g->x(p), y = g->y(q);
            phi.at(p, q) = std::exp(-(x * x + y * y) / (2.0 * sigma * sigma));
        }
    const double base = l2_norm(phi);

    SUBCASE("lambda = 1 is the identity") {
        const Field u = rescale(phi, ScalingParams(1.0, 0.0), SymbolSpec(2.0, Sign::elliptic));
        CHECK(u.data == phi.data);
    }

    SUBCASE("alpha = 1: L2 invariant under zoom") {
        for (double lam : {2.0, 4.0}) {
            const Field u =
                rescale(phi, ScalingParams(lam, 0.0), SymbolSpec(1.0, Sign::elliptic));
            CHECK(rel_diff(l2_norm(u), base) <= 1e-6);
        }
    }

    SUBCASE("alpha = 2, lambda = 4: ratio 4^{1/4} = sqrt(2)") {
        const Field u = rescale(phi, ScalingParams(4.0, 0.0), SymbolSpec(2.0, Sign::elliptic));
        CHECK(rel_diff(l2_norm(u) / base, std::sqrt(2.0)) <= 1e-6);
    }

    SUBCASE("shrinking zoom pushes support into the border and is rejected") {
        CHECK_THROWS_AS(
            (void)rescale(phi, ScalingParams(0.2, 0.0), SymbolSpec(1.0, Sign::elliptic)),
            SupportEscapeError);
    }

    SUBCASE("cylinder grids are rejected") {
        auto cyl = make_grid(16, 8, 10.0);
        CHECK_THROWS_AS((void)rescale(make_field(cyl), ScalingParams(2.0, 0.0),
                                      SymbolSpec(1.0, Sign::elliptic)),
                        std::invalid_argument);
    }
}

TEST_CASE("scaling norm-law exponent fits (1 - 1/alpha)/2 within 1e-3") {
    auto g = make_planar_grid(256, 256, 40.0, 40.0);
    Field phi = make_field(g);
    const double sigma = 2.5;
    for (int p = 0; p < g->nx; ++p)
        for (int q = 0; q < g->ny; ++q) {
            const double x = g->x(p), y = g->y(q);
            phi.at(p, q) = std::exp(-(x * x + y * y) / (2.0 * sigma * sigma));
        }
    const double base = l2_norm(phi);
    for (double alpha : {1.0, 2.0}) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        int n = 0;
        for (double lam : {1.0, 2.0, 4.0, 8.0}) {
            const Field u =
                rescale(phi, ScalingParams(lam, 0.0), SymbolSpec(alpha, Sign::elliptic));
            const double lx = std::log(lam), ly = std::log(l2_norm(u) / base);
            sx += lx;
            sy += ly;
            sxx += lx * lx;
            sxy += lx * ly;
            ++n;
        }
        const double fitted = (n * sxy - sx * sy) / (n * sxx - sx * sx);
        CAPTURE(alpha);
        CHECK(std::abs(fitted - 0.5 * (1.0 - 1.0 / alpha)) <= 1e-3);
    }
}
