#pragma once

#include <string>
#include <vector>

#include "tcmc/minkowski.hpp"

namespace tcmc {

/// Which graded piece of a loop to keep.
enum class GradedPart {
    plus,       // exponents >= 0
    minus,      // exponents <= 0
    plus_star,  // exponents > 0
    minus_star, // exponents < 0
    k_part,     // diagonal entries of every coefficient
    m_part,     // off-diagonal entries of every coefficient
};

/// Matrix Laurent polynomial in the real spectral parameter lambda,
/// truncated to the exponent window [-N, N]. Coefficients are stored densely
/// as 2x2 blocks indexed by k + N.
///
/// When the `twisted` flag is set the loop is expected to satisfy the
/// sigma-twisting sigma(xi(lambda)) = xi(-lambda) with sigma = Ad(k), i.e.
/// even-exponent coefficients diagonal and odd-exponent coefficients
/// off-diagonal. The flag is bookkeeping; check_twisted() verifies it.
class TruncatedLoop {
public:
    TruncatedLoop() : order_(0), twisted_(false), coeffs_(1) {}
    TruncatedLoop(int order, bool twisted)
        : order_(order), twisted_(twisted), coeffs_(2 * order + 1) {}

    static TruncatedLoop identity(int order, bool twisted = true);
    static TruncatedLoop monomial(int exponent, const Mat2& coeff, int order,
                                  bool twisted = false);

    int order() const { return order_; }
    bool twisted() const { return twisted_; }
    void set_twisted(bool t) { twisted_ = t; }

    const Mat2& coeff(int k) const { return coeffs_[static_cast<std::size_t>(k + order_)]; }
    Mat2& coeff(int k) { return coeffs_[static_cast<std::size_t>(k + order_)]; }
    bool in_window(int k) const { return k >= -order_ && k <= order_; }

    /// Smallest / largest exponent whose coefficient is nonzero
    /// (0 for the zero loop).
    int min_exponent() const;
    int max_exponent() const;

    /// Same coefficients re-windowed to a (usually larger) order.
    /// Shrinking reports the dropped norm through *tail_loss if given.
    TruncatedLoop with_order(int order, double* tail_loss = nullptr) const;

    TruncatedLoop operator+(const TruncatedLoop& o) const;
    TruncatedLoop operator-(const TruncatedLoop& o) const;
    TruncatedLoop operator*(double s) const;

private:
    int order_;
    bool twisted_;
    std::vector<Mat2> coeffs_;
};

/// Cauchy product truncated to the common window. The total |.|_1 norm of
/// the dropped exponents is added to *tail_loss when given. Orders are
/// auto-promoted to the larger of the two.
TruncatedLoop loop_multiply(const TruncatedLoop& a, const TruncatedLoop& b,
                            double* tail_loss = nullptr);

/// Inverse at truncation. One-sided loops with invertible lambda^0
/// coefficient use an exact triangular recursion; general loops solve the
/// block-Toeplitz system for the inverse's coefficients.
/// Throws not_invertible_error when the system is singular at this
/// truncation.
TruncatedLoop loop_invert(const TruncatedLoop& a, double* tail_loss = nullptr);

/// Sum_k a_k lambda0^k for real lambda0 > 0.
Mat2 evaluate(const TruncatedLoop& a, double lambda0);

/// lambda d/dlambda: coefficient k of the result is k * a_k. Realizes
/// d/dt with lambda = e^t.
TruncatedLoop lambda_scaled_derivative(const TruncatedLoop& a);

/// Sum_k |a_k|_1 with |.|_1 the max-column-sum matrix norm.
double loop_norm(const TruncatedLoop& a);

TruncatedLoop graded_project(const TruncatedLoop& a, GradedPart part);

/// True iff every even-exponent coefficient is diagonal and every
/// odd-exponent coefficient off-diagonal, within tol.
bool check_twisted(const TruncatedLoop& a, double tol);

/// Largest offending entry magnitude of the twisting pattern (0 for a
/// perfectly twisted loop).
double twist_defect(const TruncatedLoop& a);

/// det(a)(lambda0) - 1, sampled; a cheap group-membership diagnostic.
double det_drift(const TruncatedLoop& a, double lambda0);

/// Debug text format: one line per exponent, "k a11 a12 a21 a22",
/// ascending k. Zero coefficients are kept so the window is explicit.
std::string to_debug_text(const TruncatedLoop& a);
TruncatedLoop from_debug_text(const std::string& text, bool twisted = false);

} // namespace tcmc
