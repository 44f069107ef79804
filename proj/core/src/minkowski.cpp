#include "tcmc/minkowski.hpp"

#include <stdexcept>
#include <string>

namespace tcmc {

Mat2 inverse(const Mat2& m) {
    const double d = m.det();
    if (d == 0.0 || !std::isfinite(d)) {
        throw std::invalid_argument("inverse: singular 2x2 matrix");
    }
    const double s = 1.0 / d;
    return {m.a22 * s, -m.a12 * s, -m.a21 * s, m.a11 * s};
}

Mat2 vector_to_matrix(const Vec3M& v) {
    // u1*i + u2*j + u3*k = [[-u3, -u1+u2], [u1+u2, u3]]
    return {-v.u3, -v.u1 + v.u2, v.u1 + v.u2, v.u3};
}

Vec3M matrix_to_vector(const Mat2& x, double trace_tol) {
    if (std::fabs(x.trace()) > trace_tol) {
        throw std::invalid_argument("matrix_to_vector: input is not trace-free (tr = " +
                                    std::to_string(x.trace()) + ")");
    }
    return {0.5 * (x.a21 - x.a12), 0.5 * (x.a21 + x.a12), x.a22};
}

double lorentz_inner(const Mat2& x, const Mat2& y) {
    return 0.5 * (x.a11 * y.a11 + x.a12 * y.a21 + x.a21 * y.a12 + x.a22 * y.a22);
}

Mat2 ad_action(const Mat2& g, const Mat2& x, double det_tol) {
    const double d = g.det();
    if (!(std::fabs(d - 1.0) <= det_tol)) {
        throw std::invalid_argument("ad_action: g is not unit-determinant (det = " +
                                    std::to_string(d) + ")");
    }
    return g * x * inverse(g);
}

} // namespace tcmc
