#pragma once

#include <vector>

namespace tcmc {

/// Cubic spline through uniformly spaced samples with not-a-knot end
/// conditions (no artificial boundary curvature). Used to turn sampled
/// potential coefficients back into smooth functions.
class CubicSpline {
public:
    CubicSpline() = default;
    CubicSpline(double x0, double dx, std::vector<double> values);

    double operator()(double x) const;
    std::size_t size() const { return y_.size(); }

private:
    double x0_ = 0.0;
    double dx_ = 1.0;
    std::vector<double> y_;
    std::vector<double> m_; // second derivatives at the knots
};

} // namespace tcmc
