#include "tcmc/interp.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace tcmc {

CubicSpline::CubicSpline(double x0, double dx, std::vector<double> values)
    : x0_(x0), dx_(dx), y_(std::move(values)) {
    const int n = static_cast<int>(y_.size());
    if (n < 2) throw std::invalid_argument("CubicSpline: need at least 2 samples");
    if (!(dx_ > 0.0)) throw std::invalid_argument("CubicSpline: dx must be positive");
    m_.assign(y_.size(), 0.0);
    if (n < 4) return; // linear/quadratic data: keep zero curvature

    // Tridiagonal-plus-corners system for the knot second derivatives.
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    Eigen::VectorXd b = Eigen::VectorXd::Zero(n);
    for (int i = 1; i + 1 < n; ++i) {
        a(i, i - 1) = 1.0;
        a(i, i) = 4.0;
        a(i, i + 1) = 1.0;
        b(i) = 6.0 * (y_[i - 1] - 2.0 * y_[i] + y_[i + 1]) / (dx_ * dx_);
    }
    // Not-a-knot: third derivative continuous across the first and last
    // interior knots -> m0 - 2 m1 + m2 = 0 and the mirror condition.
    a(0, 0) = 1.0;
    a(0, 1) = -2.0;
    a(0, 2) = 1.0;
    a(n - 1, n - 3) = 1.0;
    a(n - 1, n - 2) = -2.0;
    a(n - 1, n - 1) = 1.0;
    Eigen::VectorXd m = a.partialPivLu().solve(b);
    for (int i = 0; i < n; ++i) m_[static_cast<std::size_t>(i)] = m(i);
}

double CubicSpline::operator()(double x) const {
    const int n = static_cast<int>(y_.size());
    double t = (x - x0_) / dx_;
    int i = static_cast<int>(std::floor(t));
    if (i < 0) i = 0;
    if (i > n - 2) i = n - 2;
    const double u = t - i; // in [0,1] inside the data range
    const std::size_t si = static_cast<std::size_t>(i);
    const double h2 = dx_ * dx_;
    const double a = y_[si];
    const double b = (y_[si + 1] - y_[si]) / 1.0 - h2 * (2.0 * m_[si] + m_[si + 1]) / 6.0;
    const double c = h2 * m_[si] / 2.0;
    const double d = h2 * (m_[si + 1] - m_[si]) / 6.0;
    return a + b * u + c * u * u + d * u * u * u;
}

} // namespace tcmc
