#pragma once

#include <cmath>

namespace tcmc {

/// Point (or vector) of Minkowski 3-space, metric signature (-,+,+):
/// <u,v> = -u1 v1 + u2 v2 + u3 v3.
struct Vec3M {
    double u1 = 0.0;
    double u2 = 0.0;
    double u3 = 0.0;

    Vec3M operator+(const Vec3M& o) const { return {u1 + o.u1, u2 + o.u2, u3 + o.u3}; }
    Vec3M operator-(const Vec3M& o) const { return {u1 - o.u1, u2 - o.u2, u3 - o.u3}; }
    Vec3M operator-() const { return {-u1, -u2, -u3}; }
    Vec3M operator*(double s) const { return {u1 * s, u2 * s, u3 * s}; }
};

inline Vec3M operator*(double s, const Vec3M& v) { return v * s; }

inline double lorentz_inner(const Vec3M& v, const Vec3M& w) {
    return -v.u1 * w.u1 + v.u2 * w.u2 + v.u3 * w.u3;
}

/// Euclidean length of the coordinate triple; used for coordinate-distance
/// comparisons, not for the geometry.
inline double coord_norm(const Vec3M& v) {
    return std::sqrt(v.u1 * v.u1 + v.u2 * v.u2 + v.u3 * v.u3);
}

/// Real 2x2 matrix. Algebra elements (images of Vec3M) are trace-free,
/// group elements have determinant 1 up to tolerance; neither is enforced
/// by the type.
struct Mat2 {
    double a11 = 0.0;
    double a12 = 0.0;
    double a21 = 0.0;
    double a22 = 0.0;

    static Mat2 zero() { return {}; }
    static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }

    // The basis identifying Minkowski 3-space with sl(2,R):
    // i^2 = -1, j^2 = k^2 = 1, [i,j] = 2k, [j,k] = -2i, [k,i] = 2j.
    static Mat2 basis_i() { return {0.0, -1.0, 1.0, 0.0}; }
    static Mat2 basis_j() { return {0.0, 1.0, 1.0, 0.0}; }
    static Mat2 basis_k() { return {-1.0, 0.0, 0.0, 1.0}; }

    Mat2 operator+(const Mat2& o) const { return {a11 + o.a11, a12 + o.a12, a21 + o.a21, a22 + o.a22}; }
    Mat2 operator-(const Mat2& o) const { return {a11 - o.a11, a12 - o.a12, a21 - o.a21, a22 - o.a22}; }
    Mat2 operator-() const { return {-a11, -a12, -a21, -a22}; }
    Mat2 operator*(double s) const { return {a11 * s, a12 * s, a21 * s, a22 * s}; }
    Mat2 operator*(const Mat2& o) const {
        return {a11 * o.a11 + a12 * o.a21, a11 * o.a12 + a12 * o.a22,
                a21 * o.a11 + a22 * o.a21, a21 * o.a12 + a22 * o.a22};
    }
    Mat2& operator+=(const Mat2& o) {
        a11 += o.a11; a12 += o.a12; a21 += o.a21; a22 += o.a22;
        return *this;
    }

    double trace() const { return a11 + a22; }
    double det() const { return a11 * a22 - a12 * a21; }

    /// Max column sum |A|_1 (the operator 1-norm); the coefficient norm the
    /// whole loop-algebra layer is built on.
    double norm1() const {
        double c1 = std::fabs(a11) + std::fabs(a21);
        double c2 = std::fabs(a12) + std::fabs(a22);
        return c1 > c2 ? c1 : c2;
    }
};

inline Mat2 operator*(double s, const Mat2& m) { return m * s; }

inline Mat2 commutator(const Mat2& x, const Mat2& y) { return x * y - y * x; }

/// Inverse of an invertible 2x2 matrix (exact adjugate formula).
Mat2 inverse(const Mat2& m);

/// (u1,u2,u3) -> u1*i + u2*j + u3*k.
Mat2 vector_to_matrix(const Vec3M& v);

/// Inverse of vector_to_matrix. Requires trace(X) = 0 within tolerance.
Vec3M matrix_to_vector(const Mat2& x, double trace_tol = 1e-10);

/// <X,Y> = (1/2) tr(XY); agrees with the (-,+,+) form under the basis map.
double lorentz_inner(const Mat2& x, const Mat2& y);

/// Ad(g)X = g X g^{-1} for unit-determinant g. Preserves trace and the
/// Lorentz inner product.
Mat2 ad_action(const Mat2& g, const Mat2& x, double det_tol = 1e-9);

} // namespace tcmc
