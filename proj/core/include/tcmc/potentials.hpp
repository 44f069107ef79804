#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tcmc/minkowski.hpp"

namespace tcmc {

/// Smooth real function of one variable, restricted to the two forms the
/// configuration layer accepts: a polynomial or exp of a polynomial.
/// Exp-of-polynomial values are strictly positive by construction.
class ScalarFunction {
public:
    enum class Kind { polynomial, exp_polynomial };

    static ScalarFunction polynomial(std::vector<double> coeffs);
    static ScalarFunction exp_polynomial(std::vector<double> coeffs);
    static ScalarFunction constant(double c) { return polynomial({c}); }

    double operator()(double x) const;
    Kind kind() const { return kind_; }
    const std::vector<double>& coeffs() const { return coeffs_; }

    /// Exact antiderivative with F(0) = 0 where the form permits
    /// (polynomials); throws std::invalid_argument for exp-polynomials.
    ScalarFunction antiderivative() const;

    bool is_identically_zero() const;

private:
    ScalarFunction(Kind k, std::vector<double> c) : kind_(k), coeffs_(std::move(c)) {}
    Kind kind_;
    std::vector<double> coeffs_;
};

/// One sampled value of a potential: list of (exponent, coefficient) pairs.
using LoopTerms = std::vector<std::pair<int, Mat2>>;

/// Pair of Weierstrass data: a (1,0)-potential xi1 = (sum_{k<=1} c_k(x)
/// lambda^k) dx depending on x only, and a (0,1)-potential xi2 with
/// exponents >= -1 depending on y only. Both are twisted. The constructors
/// below produce normalized potentials, populating only exponent 1
/// (resp. -1) with an off-diagonal coefficient.
struct PotentialPair {
    double H = 0.0; // mean curvature, nonzero for CMC construction
    std::function<LoopTerms(double)> xi1;
    std::function<LoopTerms(double)> xi2;
    std::string name;

    /// Convenience for normalized potentials: the m-valued coefficients
    /// eta1(x) of lambda^1 in xi1 and eta2(y) of lambda^-1 in xi2.
    Mat2 eta1(double x) const;
    Mat2 eta2(double y) const;
};

/// Normalized potentials from mean curvature H, Hopf coefficients Q(x),
/// R(y) and the metric boundary data f(x), g(y):
///   xi1 = lambda [[0, -(H/2) f(x)], [Q(x)/f(x), 0]] dx,
///   xi2 = lambda^{-1} [[0, -R(y)/g(y)], [(H/2) g(y), 0]] dy.
/// Requires H != 0 and f, g strictly positive (checked at evaluation).
PotentialPair normalized_potentials(double H, ScalarFunction Q, ScalarFunction R,
                                    ScalarFunction f, ScalarFunction g);

/// Normalized potentials with Q = 0: upper-triangular xi1. The surfaces
/// these produce are B-scrolls over null Frenet curves.
PotentialPair bscroll_potentials(double H, ScalarFunction R, ScalarFunction f,
                                 ScalarFunction g);

/// Nonlinear d'Alembert input: Q = H/2 and R = eps*H/2 with eps in
/// {-1, 0, +1}, yielding cosh-Gordon / Liouville / sinh-Gordon solutions.
PotentialPair dalembert_potentials(double H, int epsilon, ScalarFunction f,
                                   ScalarFunction g);

/// Built-in example potentials: "hyperbolic_cylinder", "circular_cylinder",
/// "pseudosphere", "bscroll_example". Unknown names raise
/// std::invalid_argument listing the valid ones.
PotentialPair builtin_potential(const std::string& name);

const std::vector<std::string>& builtin_potential_names();

/// Parse the configuration schema
///   {"kind": "builtin"|"normalized"|"bscroll"|"dalembert",
///    "name": ..., "H": ..., "epsilon": ...,
///    "Q"|"R"|"f"|"g": {"poly": [c0, c1, ...]} | {"exp_poly": [...]}}
/// from JSON text. Unknown keys are errors.
PotentialPair potential_from_json_text(const std::string& json_text);

} // namespace tcmc
