#include <doctest.h>

#include <cmath>
#include <random>

#include "tcmc/geometry.hpp"
#include "test_helpers.hpp"

using namespace tcmc;

namespace {

SurfacePatch flat_plane(const Grid& g) {
    SurfacePatch p;
    p.grid = g;
    p.points.resize(g.size());
    p.normals.assign(g.size(), Vec3M{0, 0, 1});
    p.failed.assign(g.size(), 0);
    p.has_normals = true;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.x(i), y = g.y(j);
            p.points[g.index(i, j)] = {0.5 * (x - y), 0.5 * (x + y), 0.0};
        }
    }
    p.jet_x = {0.5, 0.5, 0.0};
    p.jet_y = {-0.5, 0.5, 0.0};
    p.has_origin_jet = true;
    return p;
}

FundamentalData synthetic_cylinder_data(const Grid& g, double H, double Q, double R) {
    // Exact vacuum data: omega = 0, F = 1/2, E = G = 0.
    FundamentalData d;
    d.grid = g;
    const std::size_t n = g.size();
    d.E.assign(n, 0.0);
    d.F.assign(n, 0.5);
    d.G.assign(n, 0.0);
    d.M.assign(n, H * 0.5);
    d.Q.assign(n, Q);
    d.R.assign(n, R);
    d.H.assign(n, H);
    d.K.assign(n, 0.0);
    d.omega.assign(n, 0.0);
    d.valid.assign(n, 1);
    d.omega_valid.assign(n, 1);
    return d;
}

} // namespace

TEST_CASE("fundamental data of a flat timelike plane") {
    const Grid g = Grid::make(-1, 1, -1, 1, 9, 9);
    const FundamentalData d = fundamental_data(flat_plane(g));
    for (int j = 1; j + 1 < g.ny; ++j) {
        for (int i = 1; i + 1 < g.nx; ++i) {
            const std::size_t idx = g.index(i, j);
            REQUIRE(d.valid[idx]);
            CHECK(std::fabs(d.E[idx]) < 1e-13);
            CHECK(d.F[idx] == doctest::Approx(0.5));
            CHECK(std::fabs(d.G[idx]) < 1e-13);
            CHECK(std::fabs(d.Q[idx]) < 1e-13);
            CHECK(std::fabs(d.R[idx]) < 1e-13);
            CHECK(std::fabs(d.H[idx]) < 1e-13);
            CHECK(std::fabs(d.K[idx]) < 1e-13);
        }
    }
    CHECK_THROWS_AS(fundamental_data(flat_plane(Grid::make(-1, 1, -1, 1, 3, 3))),
                    std::invalid_argument);
}

TEST_CASE("fundamental data of the closed-form cylinder") {
    const Grid g = Grid::make(-1, 1, -1, 1, 33, 33);
    const FundamentalData d =
        fundamental_data(closed_form_surface("hyperbolic_cylinder", g));
    for (int j = 1; j + 1 < g.ny; ++j) {
        for (int i = 1; i + 1 < g.nx; ++i) {
            const std::size_t idx = g.index(i, j);
            CHECK(std::fabs(d.E[idx]) < 1e-4);
            CHECK(d.F[idx] == doctest::Approx(0.5).epsilon(1e-4));
            CHECK(std::fabs(d.G[idx]) < 1e-4);
            CHECK(std::fabs(d.H[idx]) == doctest::Approx(0.5).epsilon(2e-3));
        }
    }
}

TEST_CASE("pseudosphere oracle: |H| = 1/r, K = 1/r^2, umbilic") {
    const Grid g = Grid::make(-1, 1, -1, 1, 33, 33);
    const double r = 3.0;
    const FundamentalData d = fundamental_data(pseudosphere_patch(r, g));
    for (int j = 1; j + 1 < g.ny; ++j) {
        for (int i = 1; i + 1 < g.nx; ++i) {
            const std::size_t idx = g.index(i, j);
            if (!d.valid[idx]) continue;
            CHECK(std::fabs(d.H[idx]) == doctest::Approx(1.0 / r).epsilon(2e-3));
            CHECK(d.K[idx] == doctest::Approx(1.0 / (r * r)).epsilon(5e-3));
            CHECK(std::fabs(d.Q[idx]) < 1e-3);
            CHECK(std::fabs(d.R[idx]) < 1e-3);
        }
    }
}

TEST_CASE("gauss equation residual is second order") {
    const Grid g1 = Grid::make(-1, 1, -1, 1, 33, 33);
    const Grid g2 = Grid::make(-1, 1, -1, 1, 65, 65);
    const double r1 = gauss_equation_residual(
                          fundamental_data(pseudosphere_patch(2.0, g1))).max;
    const double r2 = gauss_equation_residual(
                          fundamental_data(pseudosphere_patch(2.0, g2))).max;
    CHECK(r1 < 1e-3);
    CHECK(r1 / r2 > 3.0);
    CHECK(r1 / r2 < 5.0);
}

TEST_CASE("pde residuals on synthetic vacuum data") {
    const Grid g = Grid::make(-1, 1, -1, 1, 17, 17);
    const FundamentalData d = synthetic_cylinder_data(g, 0.5, -0.25, -0.25);

    const PdeResidualResult sinh_r = pde_residual(d, PdeKind::sinh);
    REQUIRE(sinh_r.applicable);
    CHECK(sinh_r.stat.max < 1e-14); // vacuum solution

    // omega = 0, H != 0: cosh residual is exactly H^2.
    const PdeResidualResult cosh_r = pde_residual(d, PdeKind::cosh);
    REQUIRE(cosh_r.applicable);
    CHECK(cosh_r.stat.max == doctest::Approx(0.25));

    // Q = -R data fails the sinh gate and passes the cosh gate.
    const FundamentalData anti = synthetic_cylinder_data(g, 0.5, 0.25, -0.25);
    CHECK_FALSE(pde_residual(anti, PdeKind::sinh).applicable);
    CHECK(pde_residual(anti, PdeKind::sinh).measured_Q == doctest::Approx(0.25));
    CHECK(pde_residual(anti, PdeKind::cosh).applicable);

    const PdeResidualResult gauss_r = pde_residual(d, PdeKind::gauss_general);
    REQUIRE(gauss_r.applicable);
    CHECK(gauss_r.stat.max < 1e-14);
}

TEST_CASE("harmonic residual: constant field, cylinder, perturbation sweep") {
    const Grid g = Grid::make(-1, 1, -1, 1, 33, 33);
    std::vector<Vec3M> constant(g.size(), Vec3M{0, 0, 1});
    CHECK(harmonic_residual(constant, g).max == 0.0);

    const SurfacePatch cyl = closed_form_surface("hyperbolic_cylinder", g);
    const double base = harmonic_residual(cyl.normals, g).max;
    CHECK(base < 1e-3);

    const Grid g2 = Grid::make(-1, 1, -1, 1, 65, 65);
    const SurfacePatch cyl2 = closed_form_surface("hyperbolic_cylinder", g2);
    const double fine = harmonic_residual(cyl2.normals, g2).max;
    CHECK(base / fine > 3.0);

    // Residual grows monotonically with a random perturbation scale.
    std::mt19937_64 rng(7);
    std::vector<Vec3M> noise(g.size());
    std::uniform_real_distribution<double> u(-1, 1);
    for (auto& v : noise) v = {u(rng), u(rng), u(rng)};
    double prev = base;
    for (double s : {1e-4, 1e-3, 1e-2}) {
        std::vector<Vec3M> bent = cyl.normals;
        for (std::size_t t = 0; t < bent.size(); ++t) bent[t] = bent[t] + noise[t] * s;
        const double r = harmonic_residual(bent, g).max;
        CHECK(r > prev);
        prev = r;
    }
}

TEST_CASE("compare_aligned: identity and Lorentz motions") {
    const Grid g = Grid::make(-1, 1, -1, 1, 17, 17);
    const SurfacePatch p = closed_form_surface("hyperbolic_cylinder", g);
    CHECK(compare_aligned(p, p, false) < 1e-14);

    // Apply a boost in (u1,u2), a rotation in (u2,u3) and a translation.
    const double chi = 0.6, th = 0.8;
    SurfacePatch q = p;
    auto motion = [&](const Vec3M& v) -> Vec3M {
        const Vec3M boosted{std::cosh(chi) * v.u1 + std::sinh(chi) * v.u2,
                            std::sinh(chi) * v.u1 + std::cosh(chi) * v.u2, v.u3};
        return {boosted.u1, std::cos(th) * boosted.u2 - std::sin(th) * boosted.u3,
                std::sin(th) * boosted.u2 + std::cos(th) * boosted.u3};
    };
    for (std::size_t t = 0; t < q.points.size(); ++t) {
        q.points[t] = motion(p.points[t]) + Vec3M{0.3, -1.2, 2.0};
        q.normals[t] = motion(p.normals[t]);
    }
    q.jet_x = motion(p.jet_x);
    q.jet_y = motion(p.jet_y);
    CHECK(compare_aligned(q, p, false) < 1e-12);
    CHECK(compare_aligned(p, q, true) < 1e-12);
}

TEST_CASE("closed forms: values at the origin") {
    const Grid g = Grid::make(-1, 1, -1, 1, 5, 5);
    const SurfacePatch hyp = closed_form_surface("hyperbolic_cylinder", g);
    CHECK(coord_norm(hyp.points[g.index(2, 2)] - Vec3M{0, 0, 1}) < 1e-15);
    const SurfacePatch circ = closed_form_surface("circular_cylinder", g);
    CHECK(coord_norm(circ.points[g.index(2, 2)] - Vec3M{0, 0, -1}) < 1e-15);
    const SurfacePatch bs = closed_form_surface("bscroll_example", g);
    CHECK(coord_norm(bs.points[g.index(2, 2)] - Vec3M{0, 0.5, 0}) < 1e-15);
    CHECK_THROWS_AS(closed_form_surface("nope", g), std::invalid_argument);

    // Unit normals everywhere.
    for (const auto* p : {&hyp, &circ, &bs}) {
        for (const Vec3M& n : p->normals) {
            CHECK(lorentz_inner(n, n) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }
}

TEST_CASE("ruledness: b-scroll is ruled along constant-s lines, cylinder is not") {
    const Grid g = Grid::make(-1, 1, -1, 1, 17, 17);
    const SurfacePatch bs = closed_form_surface("bscroll_example", g);
    CHECK(ruledness_check(bs, Axis::x) < 1e-12);

    const SurfacePatch cyl = closed_form_surface("hyperbolic_cylinder", g);
    CHECK(ruledness_check(cyl, Axis::x) > 1e-2);
}

TEST_CASE("null frenet frame: constants and the torsion-1 example") {
    std::vector<double> ss;
    for (int k = 0; k <= 32; ++k) ss.push_back(-1.0 + k / 16.0);

    // kappa = tau = 0: constant frame.
    BScrollSpec flat;
    flat.kappa = [](double) { return 0.0; };
    flat.tau = 0.0;
    flat.A0 = {1, 0, 1};
    flat.B0 = {-0.5, 0, 0.5};
    flat.C0 = {0, -1, 0};
    const NullFrenetFrame cf = null_frenet_frame(flat, ss);
    CHECK(coord_norm(cf.A.front() - flat.A0) < 1e-12);
    CHECK(coord_norm(cf.A.back() - flat.A0) < 1e-12);
    CHECK(cf.relation_drift < 1e-12);

    // The torsion-1 example: A(s) = (cosh 2s, sinh 2s, 1), kappa = -2.
    BScrollSpec ex;
    ex.kappa = [](double) { return -2.0; };
    ex.tau = 1.0;
    ex.A0 = {1, 0, 1};
    ex.B0 = {-0.5, 0, 0.5};
    ex.C0 = {0, -1, 0};
    const NullFrenetFrame fr = null_frenet_frame(ex, ss, 32);
    for (std::size_t k = 0; k < ss.size(); ++k) {
        const double s = ss[k];
        CHECK(coord_norm(fr.A[k] - Vec3M{std::cosh(2 * s), std::sinh(2 * s), 1.0}) <
              1e-8);
        CHECK(coord_norm(fr.B[k] - Vec3M{-0.5 * std::cosh(2 * s),
                                         -0.5 * std::sinh(2 * s), 0.5}) < 1e-8);
    }
    CHECK(fr.relation_drift < 1e-8);

    BScrollSpec bad = ex;
    bad.C0 = {0, -1, 0.3};
    CHECK_THROWS_AS(null_frenet_frame(bad, ss), std::invalid_argument);
}

TEST_CASE("codazzi: measured Q depends only on x, R only on y") {
    const Grid g = Grid::make(-0.25, 0.25, -0.25, 0.25, 33, 33);
    const PotentialPair pot = builtin_potential("bscroll_example");
    const FrameField f = build_extended_framing(pot, g, 16, 16);
    const SurfacePatch p = sym_immersion(f, 1.0, pot.H);
    const FundamentalData d = fundamental_data(p);
    for (int i = 1; i + 1 < g.nx; ++i) {
        for (int j = 2; j + 1 < g.ny; ++j) {
            if (!d.ok(i, j) || !d.ok(i, j - 1)) continue;
            CHECK(std::fabs(d.Q[g.index(i, j)] - d.Q[g.index(i, j - 1)]) < 5e-4);
        }
    }
    for (int j = 1; j + 1 < g.ny; ++j) {
        for (int i = 2; i + 1 < g.nx; ++i) {
            if (!d.ok(i, j) || !d.ok(i - 1, j)) continue;
            CHECK(std::fabs(d.R[g.index(i, j)] - d.R[g.index(i - 1, j)]) < 5e-4);
        }
    }
}
