#include <doctest.h>

#include <random>

#include "tcmc/errors.hpp"
#include "tcmc/factorization.hpp"
#include "test_helpers.hpp"

using namespace tcmc;
namespace tu = tcmc::testutil;

namespace {
const Mat2 kE12{0, 1, 0, 0};
const Mat2 kE21{0, 0, 1, 0};

TruncatedLoop off_cell_witness(int order) {
    // diag(lambda^2, lambda^{-2}): a nontrivial middle term.
    return TruncatedLoop::monomial(2, Mat2{1, 0, 0, 0}, order) +
           TruncatedLoop::monomial(-2, Mat2{0, 0, 0, 1}, order);
}
} // namespace

TEST_CASE("birkhoff: identity and already-split inputs") {
    const TruncatedLoop id = TruncatedLoop::identity(8);
    const BirkhoffResult b = birkhoff_split(id, SplitConvention::minus_plus);
    CHECK(loop_norm(b.normalized_factor - id) < 1e-12);
    CHECK(loop_norm(b.complement_factor - id) < 1e-12);
    CHECK(b.condition_estimate > 0.5);

    const TruncatedLoop gm = id + TruncatedLoop::monomial(-1, kE21, 8);
    const BirkhoffResult c = birkhoff_split(gm, SplitConvention::minus_plus);
    CHECK(loop_norm(c.normalized_factor - gm) < 1e-12);
    CHECK(loop_norm(c.complement_factor - id) < 1e-12);
}

TEST_CASE("birkhoff: recovers hand-built factors") {
    const int n = 8;
    const TruncatedLoop id = TruncatedLoop::identity(n);
    const TruncatedLoop minus = id + TruncatedLoop::monomial(-1, kE21, n);
    const TruncatedLoop plus = id + TruncatedLoop::monomial(1, kE12, n);
    const TruncatedLoop gamma = loop_multiply(minus, plus);
    const BirkhoffResult b = birkhoff_split(gamma, SplitConvention::minus_plus);
    CHECK(loop_norm(b.normalized_factor - minus) < 1e-10);
    CHECK(loop_norm(b.complement_factor - plus) < 1e-10);
    CHECK(b.residual < 1e-10);
}

TEST_CASE("birkhoff: plus_minus convention") {
    std::mt19937_64 rng(5);
    const int n = 12;
    for (int t = 0; t < 40; ++t) {
        const TruncatedLoop plus_n = tu::random_twisted_group_loop(rng, n, 1, 2, 0.3);
        const TruncatedLoop minus = tu::random_twisted_group_loop(rng, n, -2, 0, 0.3);
        const TruncatedLoop gamma = loop_multiply(plus_n, minus);
        const BirkhoffResult b = birkhoff_split(gamma, SplitConvention::plus_minus);
        CHECK(loop_norm(loop_multiply(b.normalized_factor, b.complement_factor) - gamma) <
              1e-9);
        CHECK(loop_norm(b.normalized_factor - plus_n) < 1e-8);
        CHECK(tu::mat_dist(b.normalized_factor.coeff(0), Mat2::identity()) == 0.0);
        CHECK(graded_project(b.normalized_factor, GradedPart::minus_star).max_exponent() ==
              0);
    }
}

TEST_CASE("birkhoff: uniqueness and twisting on a random big-cell suite") {
    std::mt19937_64 rng(17);
    const int n = 16;
    for (int t = 0; t < 100; ++t) {
        const TruncatedLoop minus = tu::random_minus_factor(rng, n, 0.25);
        const TruncatedLoop plus = tu::random_plus_factor(rng, n, 0.25);
        const TruncatedLoop gamma = loop_multiply(minus, plus);
        const BirkhoffResult b = birkhoff_split(gamma, SplitConvention::minus_plus);
        CHECK(b.residual < 1e-9);
        CHECK(loop_norm(b.normalized_factor - minus) < 1e-9);
        CHECK(loop_norm(b.complement_factor - plus) < 1e-9);
        CHECK(check_twisted(b.normalized_factor, 1e-10));
        CHECK(check_twisted(b.complement_factor, 1e-9));
        for (double l0 : {0.5, 1.0, 2.0}) {
            CHECK(std::fabs(det_drift(b.normalized_factor, l0)) < 1e-8);
            CHECK(std::fabs(det_drift(b.complement_factor, l0)) < 1e-8);
        }
    }
}

TEST_CASE("birkhoff: off the big cell") {
    CHECK_THROWS_AS(birkhoff_split(off_cell_witness(8), SplitConvention::minus_plus),
                    big_cell_error);
}

TEST_CASE("big cell diagnostic") {
    CHECK(big_cell_diagnostic(TruncatedLoop::identity(8)) > 0.5);
    CHECK(big_cell_diagnostic(off_cell_witness(8)) < 1e-12);

    // Monotone decrease approaching the singular set: the totally umbilic
    // family D(x,y) leaves the big cell as 1 + xy H^2/4 -> 0.
    const double H = 1.0;
    double prev = 1.0;
    for (double s : {0.0, 0.6, 0.9, 0.99, 0.999}) {
        const double x = 2.0, y = -2.0 * s; // xy -> -4 = -4/H^2
        const double a0 = 1.0 + x * y * H * H / 4.0;
        TruncatedLoop d = TruncatedLoop::identity(8);
        d.coeff(0) = Mat2{a0, 0, 0, 1};
        d.coeff(1) = Mat2{0, x * H / 2.0, 0, 0};
        d.coeff(-1) = Mat2{0, 0, y * H / 2.0, 0};
        const double rc = big_cell_diagnostic(d);
        CHECK(rc <= prev * 1.0001);
        prev = rc;
    }
    CHECK(prev < 1e-3);
}

TEST_CASE("iwasawa pair split: identities and round trip") {
    const int n = 16;
    const TruncatedLoop id = TruncatedLoop::identity(n);
    const IwasawaPairResult triv = iwasawa_pair_split(id, id);
    CHECK(loop_norm(triv.frame - id) < 1e-12);
    CHECK(loop_norm(triv.l_minus - id) < 1e-12);
    CHECK(loop_norm(triv.l_plus - id) < 1e-12);

    std::mt19937_64 rng(23);
    for (int t = 0; t < 60; ++t) {
        const TruncatedLoop psi = tu::random_twisted_group_loop(rng, n, -2, 2, 0.2);
        const TruncatedLoop lm = tu::random_minus_factor(rng, n, 0.25);
        const TruncatedLoop lp = tu::random_plus_factor(rng, n, 0.25);
        const TruncatedLoop psi1 = loop_multiply(psi, loop_invert(lm));
        const TruncatedLoop psi2 = loop_multiply(psi, loop_invert(lp));
        const IwasawaPairResult r = iwasawa_pair_split(psi1, psi2);
        CHECK(loop_norm(r.frame - psi) < 1e-9);
        CHECK(loop_norm(r.l_minus - lm) < 1e-9);
        CHECK(loop_norm(r.l_plus - lp) < 1e-9);
        CHECK(r.residual < 1e-9);
        CHECK(check_twisted(r.frame, 1e-9));
    }
}

TEST_CASE("iwasawa pair split: off-cell pair") {
    const TruncatedLoop id = TruncatedLoop::identity(8);
    CHECK_THROWS_AS(iwasawa_pair_split(id, off_cell_witness(8)), big_cell_error);
}
