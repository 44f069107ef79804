#include <doctest.h>

#include <cmath>

#include "tcmc/dpw.hpp"
#include "tcmc/errors.hpp"
#include "test_helpers.hpp"

using namespace tcmc;
namespace tu = tcmc::testutil;

namespace {

PotentialPair zero_potential() {
    PotentialPair p;
    p.H = 0.5;
    p.xi1 = [](double) -> LoopTerms { return {}; };
    p.xi2 = [](double) -> LoopTerms { return {}; };
    return p;
}

// Frame oracle for the cylinders: both axis generators commute, so
// Psi(x,y) = exp(x eta' lambda + y eta'' lambda^{-1}) exactly.
TruncatedLoop commuting_frame_oracle(const PotentialPair& pot, double x, double y,
                                     int order) {
    const TruncatedLoop gen =
        TruncatedLoop::monomial(1, pot.eta1(0.0) * x, order, true) +
        TruncatedLoop::monomial(-1, pot.eta2(0.0) * y, order, true);
    return loop_exponential(gen, 1.0);
}

} // namespace

TEST_CASE("grid invariants") {
    CHECK_THROWS_AS(Grid::make(-1, 1, -1, 1, 2, 5), std::invalid_argument);
    CHECK_THROWS_AS(Grid::make(0.1, 1, -1, 1, 5, 5), std::invalid_argument);
    // Origin must be a grid point, not merely inside the box.
    CHECK_THROWS_AS(Grid::make(-0.95, 1.0, -1, 1, 4, 5), std::invalid_argument);
    const Grid g = Grid::make(-1, 1, -0.5, 0.5, 5, 3);
    CHECK(g.origin_i() == 2);
    CHECK(g.origin_j() == 1);
    CHECK(g.x(g.origin_i()) == doctest::Approx(0.0));
}

TEST_CASE("loop exponential: fixed cases") {
    const TruncatedLoop zero(8, true);
    CHECK(loop_norm(loop_exponential(zero, 1.0) - TruncatedLoop::identity(8)) < 1e-15);

    // Nilpotent generator: exp(t lambda E12) = 1 + t lambda E12.
    const TruncatedLoop nil = TruncatedLoop::monomial(1, Mat2{0, 1, 0, 0}, 8, true);
    const TruncatedLoop e = loop_exponential(nil, 0.7);
    CHECK(loop_norm(e - (TruncatedLoop::identity(8) +
                         TruncatedLoop::monomial(1, Mat2{0, 0.7, 0, 0}, 8))) < 1e-15);
}

TEST_CASE("loop exponential: coefficient-wise series identity") {
    // exp(x (lambda/4) J), J = [[0,-1],[-1,0]]: cosh/sinh series in lambda.
    const double x = 1.3;
    const Mat2 J{0, -1, -1, 0};
    const int n = 16;
    const TruncatedLoop e =
        loop_exponential(TruncatedLoop::monomial(1, J * 0.25, n, true), x);
    double factorial = 1.0;
    for (int k = 0; k <= n; ++k) {
        if (k > 0) factorial *= k;
        const double c = std::pow(x / 4.0, k) / factorial;
        const Mat2 expect = (k % 2 == 0) ? Mat2::identity() * c : J * c;
        CHECK(tu::mat_dist(e.coeff(k), expect) < 1e-14);
        if (k > 0) CHECK(loop_norm(TruncatedLoop::monomial(-k, e.coeff(-k), n)) < 1e-15);
    }
}

TEST_CASE("axis integration: zero potential, nilpotent exactness") {
    const Grid g = Grid::make(-1, 1, -1, 1, 9, 9);
    const PotentialPair zp = zero_potential();
    for (const TruncatedLoop& psi : integrate_framing_axis(zp, Axis::x, g, 4, 8)) {
        CHECK(loop_norm(psi - TruncatedLoop::identity(8)) < 1e-15);
    }

    // xi1 = lambda [[0, q(x)],[0,0]] dx integrates to [[1, lambda Int q],[0,1]].
    PotentialPair nil = zero_potential();
    nil.H = 1.0;
    nil.xi1 = [](double x) -> LoopTerms {
        return {{1, Mat2{0, x * x, 0, 0}}};
    };
    nil.xi2 = [](double) -> LoopTerms { return {}; };
    const auto psis = integrate_framing_axis(nil, Axis::x, g, 16, 8);
    for (int i = 0; i < g.nx; ++i) {
        const double x = g.x(i);
        const Mat2 c1 = psis[static_cast<std::size_t>(i)].coeff(1);
        CHECK(c1.a12 == doctest::Approx(x * x * x / 3.0).epsilon(1e-10));
        CHECK(std::fabs(c1.a21) < 1e-15);
        CHECK(tu::mat_dist(psis[static_cast<std::size_t>(i)].coeff(0), Mat2::identity()) <
              1e-15);
    }
}

TEST_CASE("axis integration matches the loop exponential oracle") {
    const Grid g = Grid::make(-1, 1, -1, 1, 17, 17);
    for (const char* name : {"hyperbolic_cylinder", "circular_cylinder"}) {
        const PotentialPair pot = builtin_potential(name);
        const auto psis = integrate_framing_axis(pot, Axis::x, g, 16, 16);
        const TruncatedLoop oracle = loop_exponential(
            TruncatedLoop::monomial(1, pot.eta1(0.0), 16, true), 1.0);
        CHECK(loop_norm(psis[static_cast<std::size_t>(g.nx - 1)] - oracle) < 1e-10);
    }
}

TEST_CASE("axis integration rejects out-of-window potentials") {
    PotentialPair bad = zero_potential();
    bad.xi1 = [](double) -> LoopTerms { return {{2, Mat2{0, 1, 0, 0}}}; };
    const Grid g = Grid::make(-1, 1, -1, 1, 5, 5);
    CHECK_THROWS_AS(integrate_framing_axis(bad, Axis::x, g, 4, 8),
                    std::invalid_argument);
}

TEST_CASE("build_extended_framing: zero potential and origin normalization") {
    const Grid g = Grid::make(-1, 1, -1, 1, 9, 9);
    const FrameField f = build_extended_framing(zero_potential(), g, 4, 8);
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            CHECK(f.valid(i, j));
            CHECK(loop_norm(f.frames[g.index(i, j)] - TruncatedLoop::identity(8)) <
                  1e-14);
        }
    }
}

TEST_CASE("build_extended_framing matches the commuting-generator oracle") {
    const Grid g = Grid::make(-1, 1, -1, 1, 9, 9);
    for (const char* name : {"hyperbolic_cylinder", "circular_cylinder"}) {
        const PotentialPair pot = builtin_potential(name);
        const FrameField f = build_extended_framing(pot, g, 16, 16);
        CHECK(f.failure_fraction() == 0.0);
        CHECK(f.tail_loss < 1e-9);
        double worst = 0.0;
        for (int j = 0; j < g.ny; ++j) {
            for (int i = 0; i < g.nx; ++i) {
                const TruncatedLoop oracle =
                    commuting_frame_oracle(pot, g.x(i), g.y(j), 16);
                worst = std::max(worst, loop_norm(f.frames[g.index(i, j)] - oracle));
            }
        }
        CHECK(worst < 1e-9);
        // Frame invariants: origin exactly 1, twisted, det 1 at samples.
        const std::size_t o = g.index(g.origin_i(), g.origin_j());
        CHECK(loop_norm(f.frames[o] - TruncatedLoop::identity(16)) == 0.0);
        for (int j = 0; j < g.ny; ++j) {
            for (int i = 0; i < g.nx; ++i) {
                CHECK(check_twisted(f.frames[g.index(i, j)], 1e-10));
                for (double l0 : {0.5, 1.0, 2.0}) {
                    CHECK(std::fabs(det_drift(f.frames[g.index(i, j)], l0)) < 1e-8);
                }
            }
        }
    }
}

TEST_CASE("build_extended_framing matches the exact umbilic frame") {
    // Q = R = 0 potentials: Psi = [[1/a, -x lambda H/2],[y H/(2a) lambda^{-1}, 1]]
    // with a = 1 + xy H^2/4, derived by splitting the nilpotent axis
    // solutions in closed form.
    const PotentialPair pot = builtin_potential("pseudosphere");
    const double H = pot.H;
    const Grid g = Grid::make(-1, 1, -1, 1, 9, 9);
    const FrameField f = build_extended_framing(pot, g, 8, 12);
    double worst = 0.0;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.x(i), y = g.y(j);
            const double a = 1.0 + x * y * H * H / 4.0;
            TruncatedLoop oracle(12, true);
            oracle.coeff(0) = Mat2{1.0 / a, 0, 0, 1.0};
            oracle.coeff(1) = Mat2{0, -x * H / 2.0, 0, 0};
            oracle.coeff(-1) = Mat2{0, 0, y * H / (2.0 * a), 0};
            worst = std::max(worst, loop_norm(f.frames[g.index(i, j)] - oracle));
        }
    }
    CHECK(worst < 1e-10);
}

TEST_CASE("Psi' and Psi'' are one-sided for normalized potentials") {
    const Grid g = Grid::make(-1, 1, -1, 1, 9, 9);
    const PotentialPair pot = builtin_potential("hyperbolic_cylinder");
    for (const auto& psi : integrate_framing_axis(pot, Axis::x, g, 8, 12)) {
        CHECK(psi.min_exponent() >= 0);
        CHECK(tu::mat_dist(psi.coeff(0), Mat2::identity()) < 1e-12);
    }
    for (const auto& psi : integrate_framing_axis(pot, Axis::y, g, 8, 12)) {
        CHECK(psi.max_exponent() <= 0);
    }
}

TEST_CASE("maurer-cartan residuals: constant field and cylinder") {
    const Grid g = Grid::make(-1, 1, -1, 1, 9, 9);
    const FrameField id = build_extended_framing(zero_potential(), g, 4, 8);
    const MaurerCartanReport rid = maurer_cartan_form(id);
    CHECK(rid.structure.max < 1e-13);
    CHECK(rid.flatness.max < 1e-13);
    CHECK(rid.admissibility.max < 1e-13);

    const Grid g33 = Grid::make(-1, 1, -1, 1, 33, 33);
    const FrameField f =
        build_extended_framing(builtin_potential("hyperbolic_cylinder"), g33, 16, 16);
    const MaurerCartanReport r = maurer_cartan_form(f);
    CHECK(r.structure.max < 1e-4);
    CHECK(r.flatness.max < 1e-3);
    CHECK(r.admissibility.max < 1e-3);

    // Second-order decay under grid refinement.
    const Grid g65 = Grid::make(-1, 1, -1, 1, 65, 65);
    const FrameField f2 =
        build_extended_framing(builtin_potential("hyperbolic_cylinder"), g65, 16, 16);
    const MaurerCartanReport r2 = maurer_cartan_form(f2);
    CHECK(r.structure.max / r2.structure.max > 3.0);
    CHECK(r.structure.max / r2.structure.max < 5.0);
}

TEST_CASE("classifier signs for the three classes") {
    const Grid g = Grid::make(-1, 1, -1, 1, 17, 17);
    const auto one = ScalarFunction::constant(1.0);

    const FrameField fp =
        build_extended_framing(builtin_potential("circular_cylinder"), g, 8, 12);
    for (ConnectionClass c : classify_connection(maurer_cartan_form(fp))) {
        if (c != ConnectionClass::unknown) CHECK(c == ConnectionClass::h_plus);
    }

    const FrameField fm =
        build_extended_framing(dalembert_potentials(0.5, -1, one, one), g, 8, 12);
    for (ConnectionClass c : classify_connection(maurer_cartan_form(fm))) {
        if (c != ConnectionClass::unknown) CHECK(c == ConnectionClass::h_minus);
    }

    const Grid gb = Grid::make(-0.25, 0.25, -0.25, 0.25, 17, 17);
    const FrameField fz =
        build_extended_framing(builtin_potential("bscroll_example"), gb, 8, 12);
    for (ConnectionClass c : classify_connection(maurer_cartan_form(fz))) {
        if (c != ConnectionClass::unknown) CHECK(c == ConnectionClass::h_zero);
    }
}

TEST_CASE("extraction: identity field gives zero potentials") {
    const Grid g = Grid::make(-1, 1, -1, 1, 9, 9);
    const FrameField f = build_extended_framing(zero_potential(), g, 4, 8);
    const ExtractedPotentials ex = extract_normalized_potentials(f);
    for (const Mat2& m : ex.eta1_samples) CHECK(m.norm1() < 1e-12);
    for (const Mat2& m : ex.eta2_samples) CHECK(m.norm1() < 1e-12);
}

TEST_CASE("extraction recovers the cylinder potential") {
    const Grid g = Grid::make(-1, 1, -1, 1, 33, 33);
    const PotentialPair pot = builtin_potential("hyperbolic_cylinder");
    const FrameField f = build_extended_framing(pot, g, 16, 16);
    const ExtractedPotentials ex = extract_normalized_potentials(f);
    for (int i = 0; i < g.nx; ++i) {
        CHECK(tu::mat_dist(ex.eta1_samples[static_cast<std::size_t>(i)],
                           pot.eta1(g.x(i))) < 1e-6);
    }
    for (int j = 0; j < g.ny; ++j) {
        CHECK(tu::mat_dist(ex.eta2_samples[static_cast<std::size_t>(j)],
                           pot.eta2(g.y(j))) < 1e-6);
    }
    CHECK(ex.dependence_residual < 1e-6);
    CHECK(ex.structure_residual < 1e-6);
}

TEST_CASE("extraction: b-scroll potential stays upper-triangular") {
    const Grid g = Grid::make(-0.25, 0.25, -0.25, 0.25, 33, 33);
    const FrameField f =
        build_extended_framing(builtin_potential("bscroll_example"), g, 16, 16);
    const ExtractedPotentials ex = extract_normalized_potentials(f);
    for (const Mat2& m : ex.eta1_samples) CHECK(std::fabs(m.a21) < 1e-6);
}

TEST_CASE("axis consistency: diagonal split factor is log-affine in f") {
    // Along y = 0 the Birkhoff minus factor of Psi(x,0) has lambda^0
    // diagonal d(x) with log d(x) - (1/4) log f(x) constant.
    const Grid g = Grid::make(-0.25, 0.25, -0.25, 0.25, 9, 9);
    const PotentialPair pot = builtin_potential("bscroll_example");
    const FrameField f = build_extended_framing(pot, g, 16, 16);
    const int j0 = g.origin_j();
    std::vector<double> offsets;
    for (int i = 0; i < g.nx; ++i) {
        const BirkhoffResult b = birkhoff_split(f.frames[g.index(i, j0)],
                                                SplitConvention::plus_minus);
        const double d = b.complement_factor.coeff(0).a11;
        const double fx = 2.0 / std::pow(g.x(i) + 1.0, 2.0); // f(x) of the example
        offsets.push_back(std::log(d) - 0.25 * std::log(fx));
    }
    for (double o : offsets) CHECK(o == doctest::Approx(offsets[0]).epsilon(1e-8));
}

TEST_CASE("frame round trip: rebuild from extracted potentials") {
    const Grid g = Grid::make(-1, 1, -1, 1, 33, 33);
    for (const char* name : {"hyperbolic_cylinder", "circular_cylinder", "pseudosphere"}) {
        const FrameField f = build_extended_framing(builtin_potential(name), g, 16, 16);
        const ExtractedPotentials ex = extract_normalized_potentials(f);
        const FrameField f2 = build_extended_framing(ex.pair, g, 16, 16);
        double worst = 0.0;
        for (std::size_t t = 0; t < f.frames.size(); ++t) {
            if (f.failed[t] || f2.failed[t]) continue;
            worst = std::max(worst, loop_norm(f.frames[t] - f2.frames[t]));
        }
        CHECK(worst < 1e-6);
    }
}
