#include <doctest.h>

#include <random>

#include "tcmc/minkowski.hpp"
#include "test_helpers.hpp"

using namespace tcmc;
using tcmc::testutil::exp_tracefree;
using tcmc::testutil::random_tracefree;

TEST_CASE("basis vectors map to the defining matrices") {
    const Mat2 i = vector_to_matrix({1, 0, 0});
    CHECK(i.a11 == 0.0);
    CHECK(i.a12 == -1.0);
    CHECK(i.a21 == 1.0);
    CHECK(i.a22 == 0.0);

    const Mat2 z = vector_to_matrix({0, 0, 0});
    CHECK(z.norm1() == 0.0);

    // j + k
    const Mat2 jk = vector_to_matrix({0, 1, 1});
    CHECK(jk.a11 == -1.0);
    CHECK(jk.a12 == 1.0);
    CHECK(jk.a21 == 1.0);
    CHECK(jk.a22 == 1.0);
}

TEST_CASE("vector <-> matrix round trip") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-5, 5);
    for (int t = 0; t < 100; ++t) {
        const Vec3M v{u(rng), u(rng), u(rng)};
        const Vec3M w = matrix_to_vector(vector_to_matrix(v));
        CHECK(coord_norm(w - v) < 1e-14);
    }
    CHECK_THROWS_AS(matrix_to_vector(Mat2{1, 0, 0, 1}), std::invalid_argument);
}

TEST_CASE("lorentz inner product on basis elements") {
    const Mat2 i = Mat2::basis_i(), j = Mat2::basis_j(), k = Mat2::basis_k();
    CHECK(lorentz_inner(i, i) == doctest::Approx(-1.0));
    CHECK(lorentz_inner(k, k) == doctest::Approx(1.0));
    CHECK(lorentz_inner(i, j) == doctest::Approx(0.0));
}

TEST_CASE("inner product agrees with the (-,+,+) form") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> u(-3, 3);
    for (int t = 0; t < 200; ++t) {
        const Vec3M v{u(rng), u(rng), u(rng)}, w{u(rng), u(rng), u(rng)};
        const double lhs = lorentz_inner(vector_to_matrix(v), vector_to_matrix(w));
        const double rhs = -v.u1 * w.u1 + v.u2 * w.u2 + v.u3 * w.u3;
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
    }
}

TEST_CASE("commutation relations of the basis") {
    const Mat2 i = Mat2::basis_i(), j = Mat2::basis_j(), k = Mat2::basis_k();
    CHECK(testutil::mat_dist(commutator(i, j), k * 2.0) < 1e-15);
    CHECK(testutil::mat_dist(commutator(j, k), i * (-2.0)) < 1e-15);
    CHECK(testutil::mat_dist(commutator(k, i), j * 2.0) < 1e-15);
}

TEST_CASE("ad action fixed cases") {
    const Mat2 x{1, 2, 3, -1};
    CHECK(testutil::mat_dist(ad_action(Mat2::identity(), x), x) < 1e-15);

    // Ad([[0,-1],[1,0]]) k = -k by direct 2x2 multiplication.
    const Mat2 r = ad_action(Mat2::basis_i(), Mat2::basis_k());
    CHECK(testutil::mat_dist(r, -Mat2::basis_k()) < 1e-14);

    CHECK_THROWS_AS(ad_action(Mat2{1, 0, 0, 0}, x), std::invalid_argument);
}

TEST_CASE("ad action is a Lorentz isometry") {
    std::mt19937_64 rng(42);
    for (int t = 0; t < 300; ++t) {
        const Mat2 g = exp_tracefree(random_tracefree(rng, 1.0));
        const Mat2 x = random_tracefree(rng, 2.0);
        const Mat2 y = random_tracefree(rng, 2.0);
        const double before = lorentz_inner(x, y);
        const double after = lorentz_inner(ad_action(g, x), ad_action(g, y));
        CHECK(std::fabs(after - before) < 1e-12 * (1.0 + std::fabs(before)));
        CHECK(std::fabs(ad_action(g, x).trace()) < 1e-12);
    }
}
