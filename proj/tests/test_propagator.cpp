#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "fnls/propagator.hpp"
#include "test_helpers.hpp"

using namespace fnls;
using fnls::test::random_physical;
using fnls::test::random_smooth;
using fnls::test::rel_diff;

TEST_CASE("linear propagate: identity at t = 0, diagonal action, unitarity") {
    auto g = make_grid(32, 16, 11.0);
    const SymbolSpec spec(1.5, Sign::hyperbolic);

    SUBCASE("t = 0 returns the input exactly") {
        const Field u = random_physical(g, 1);
        const Field v = linear_propagate(u, 0.0, spec);
        CHECK(v.data == u.data);
    }

    SUBCASE("single mode picks up e^{-i t omega}") {
        Field uhat = make_field(g, Representation::spectral);
        const int j0 = 5, q0 = 3;
        uhat.at(j0, q0) = cdouble{1.0, 0.0};
        const double t = 0.83;
        const Field v = linear_propagate(uhat, t, spec);
        const cdouble expected = std::polar(1.0, -t * omega(spec, g->xi[j0], g->yfreq[q0]));
        CHECK(std::abs(v.at(j0, q0) - expected) < 1e-14);
    }

    SUBCASE("unitarity for random data") {
        const Field u = random_physical(g, 2);
        const Field v = linear_propagate(u, 0.37, spec);
        CHECK(rel_diff(l2_norm(v), l2_norm(u)) <= 1e-12);
    }
}

TEST_CASE("group law U(s)U(t) = U(s+t) over random (s, t)") {
    auto g = make_grid(16, 16, 6.0);
    const SymbolSpec spec(2.0, Sign::elliptic);
    const Field u = random_physical(g, 3);
    CounterRng rng(17);
    for (uint64_t i = 0; i < 20; ++i) {
        const double s = 4.0 * rng.uniform(2 * i) - 2.0;
        const double t = 4.0 * rng.uniform(2 * i + 1) - 2.0;
        const Field a = linear_propagate(linear_propagate(u, t, spec), s, spec);
        const Field b = linear_propagate(u, s + t, spec);
        CHECK(l2_distance(a, b) / l2_norm(u) < 1e-12);
    }
}

TEST_CASE("U(t) commutes with dealias and diagonal multipliers") {
    auto g = make_grid(16, 16, 6.0);
    const SymbolSpec spec(1.5, Sign::elliptic);
    const Field uhat = forward(random_physical(g, 4));
    const double t = 0.61;

    const Field a = dealias(linear_propagate(uhat, t, spec), DealiasRule::two_thirds);
    const Field b = linear_propagate(dealias(uhat, DealiasRule::two_thirds), t, spec);
    CHECK(l2_distance(a, b) < 1e-13);

    // arbitrary Fourier multiplier m(xi, n) = sin(xi) + n^2
    auto mult = [&](Field f) {
        for (int j = 0; j < g->nx; ++j)
            for (int q = 0; q < g->ny; ++q)
                f.at(j, q) *= std::sin(g->xi[j]) + static_cast<double>(g->nmode[q] * g->nmode[q]);
        return f;
    };
    const Field c = mult(linear_propagate(uhat, t, spec));
    const Field d = linear_propagate(mult(uhat), t, spec);
    CHECK(l2_distance(c, d) < 1e-11);
}

TEST_CASE("duhamel: zero forcing, group-law forcing, preconditions") {
    auto g = make_grid(16, 8, 6.0);
    const SymbolSpec spec(1.0, Sign::elliptic);
    const TimeWindow window(-0.5, 0.5, 21);

    SUBCASE("f = 0 gives the zero field") {
        std::vector<Field> f(window.nt, make_field(g, Representation::spectral));
        const Field d = duhamel(f, window, 0.5, spec);
        CHECK(l2_norm(d) == 0.0);
    }

    SUBCASE("free-wave forcing: integrand is constant, result t U(t) g") {
        const Field ghat = random_smooth(g, 5); // spectral
        std::vector<Field> f;
        for (int i = 0; i < window.nt; ++i)
            f.push_back(linear_propagate(ghat, window.closed_time(i), spec));
        for (double t : {0.5, -0.5, 0.25}) {
            const Field d = duhamel(f, window, t, spec);
            Field expect = linear_propagate(ghat, t, spec);
            for (auto& z : expect.data) z *= t;
            CHECK(l2_distance(d, expect) / l2_norm(expect) < 1e-12);
        }
    }

    SUBCASE("t outside the window / nt too small are rejected") {
        std::vector<Field> f(window.nt, make_field(g, Representation::spectral));
        CHECK_THROWS_AS((void)duhamel(f, window, 0.7, spec), std::invalid_argument);
        const TimeWindow w1(-0.5, 0.5, 1);
        std::vector<Field> f1(1, make_field(g, Representation::spectral));
        CHECK_THROWS_AS((void)duhamel(f1, w1, 0.0, spec), std::invalid_argument);
        // 0 must be on the lattice
        const TimeWindow w2(0.05, 0.5, 10);
        std::vector<Field> f2(10, make_field(g, Representation::spectral));
        CHECK_THROWS_AS((void)duhamel(f2, w2, 0.5, spec), std::invalid_argument);
    }
}

// Constant-in-time single-mode forcing has the closed-form amplitude
// (e^{-i t w} - 1) / (-i w); quadrature errors must shrink at order 2
// (trapezoid) and order 4 (Simpson).
TEST_CASE("duhamel: closed-form single mode and quadrature order") {
    auto g = make_grid(16, 8, 6.0);
    const SymbolSpec spec(2.0, Sign::hyperbolic);
    const int j0 = 3, q0 = 2;
    const double w = omega(spec, g->xi[j0], g->yfreq[q0]);
    REQUIRE(w != 0.0);
    const cdouble amp{0.8, -0.4};
    const double t = 1.0;

    auto run = [&](int nt, QuadRule rule) {
        const TimeWindow window(0.0, 1.0, nt);
        Field mode = make_field(g, Representation::spectral);
        mode.at(j0, q0) = amp;
        std::vector<Field> f(window.nt, mode);
        const Field d = duhamel(f, window, t, spec, rule);
        const cdouble exact = amp * (std::polar(1.0, -t * w) - 1.0) / cdouble{0.0, -w};
        return std::abs(d.at(j0, q0) - exact);
    };

    const double e1 = run(17, QuadRule::trapezoid);
    const double e2 = run(33, QuadRule::trapezoid);
    const double e4 = run(65, QuadRule::trapezoid);
    CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.1));
    CHECK(e2 / e4 == doctest::Approx(4.0).epsilon(0.1));

    const double s1 = run(17, QuadRule::simpson);
    const double s2 = run(33, QuadRule::simpson);
    CHECK(s1 / s2 == doctest::Approx(16.0).epsilon(0.15));
    CHECK(s2 < e2);
}

TEST_CASE("duhamel is linear in the forcing") {
    auto g = make_grid(8, 8, 5.0);
    const SymbolSpec spec(1.5, Sign::elliptic);
    const TimeWindow window(-0.3, 0.3, 13);
    std::vector<Field> f1, f2, fsum;
    for (int i = 0; i < window.nt; ++i) {
        Field a = forward(random_physical(g, 100 + i));
        Field b = forward(random_physical(g, 200 + i));
        Field s = a;
        for (size_t k = 0; k < s.data.size(); ++k) s.data[k] = a.data[k] + 2.5 * b.data[k];
        f1.push_back(std::move(a));
        f2.push_back(std::move(b));
        fsum.push_back(std::move(s));
    }
    const Field da = duhamel(f1, window, 0.3, spec);
    const Field db = duhamel(f2, window, 0.3, spec);
    const Field ds = duhamel(fsum, window, 0.3, spec);
    Field combo = da;
    for (size_t k = 0; k < combo.data.size(); ++k) combo.data[k] = da.data[k] + 2.5 * db.data[k];
    CHECK(l2_distance(ds, combo) < 1e-13);
}

TEST_CASE("duhamel_all_samples matches per-sample duhamel") {
    auto g = make_grid(8, 8, 5.0);
    const SymbolSpec spec(1.2, Sign::hyperbolic);
    const TimeWindow window(-0.4, 0.4, 17);
    std::vector<Field> f;
    for (int i = 0; i < window.nt; ++i) f.push_back(forward(random_physical(g, 300 + i)));
    const auto all = duhamel_all_samples(f, window, spec);
    for (int i = 0; i < window.nt; i += 4) {
        const Field one = duhamel(f, window, window.closed_time(i), spec);
        CHECK(l2_distance(all[i], one) < 1e-12);
    }
}
