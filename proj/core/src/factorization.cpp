#include "tcmc/factorization.hpp"

#include <cmath>

#include <Eigen/Dense>

#include "tcmc/errors.hpp"

namespace tcmc {

namespace {

// Assemble the block-Toeplitz matrix of the restricted product equations
// (gamma * u)_k = delta_{k0} * 1. For minus_plus the row/column blocks run
// over k, j in [0, N] (u = l_plus^{-1} lives in Lambda^+); for plus_minus
// over [-N, 0]. Row block k, column block j carries gamma_{k-j}.
Eigen::MatrixXd assemble_system(const TruncatedLoop& gamma, SplitConvention conv) {
    const int n = gamma.order();
    const int nb = n + 1;
    const int base = (conv == SplitConvention::minus_plus) ? 0 : -n;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * nb, 2 * nb);
    for (int kb = 0; kb < nb; ++kb) {
        for (int jb = 0; jb < nb; ++jb) {
            const int d = (base + kb) - (base + jb);
            if (!gamma.in_window(d)) continue;
            const Mat2& g = gamma.coeff(d);
            m(2 * kb, 2 * jb) = g.a11;
            m(2 * kb, 2 * jb + 1) = g.a12;
            m(2 * kb + 1, 2 * jb) = g.a21;
            m(2 * kb + 1, 2 * jb + 1) = g.a22;
        }
    }
    return m;
}

double safe_rcond(const Eigen::PartialPivLU<Eigen::MatrixXd>& lu) {
    const double rc = lu.rcond();
    if (!std::isfinite(rc) || rc < 0.0) return 0.0;
    return std::min(rc, 1.0);
}

} // namespace

double big_cell_diagnostic(const TruncatedLoop& gamma) {
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(
        assemble_system(gamma, SplitConvention::minus_plus));
    return safe_rcond(lu);
}

BirkhoffResult birkhoff_split(const TruncatedLoop& gamma, SplitConvention conv,
                              double rcond_threshold, double* tail_loss) {
    const int n = gamma.order();
    const int nb = n + 1;
    const int sign = (conv == SplitConvention::minus_plus) ? +1 : -1;

    Eigen::PartialPivLU<Eigen::MatrixXd> lu(assemble_system(gamma, conv));
    const double rcond = safe_rcond(lu);
    if (rcond < rcond_threshold) {
        throw big_cell_error(rcond, "birkhoff_split");
    }

    // Right-hand side: identity block at k = 0. For minus_plus that is the
    // first block row, for plus_minus the last.
    const int k0_block = (conv == SplitConvention::minus_plus) ? 0 : n;
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(2 * nb, 2);
    rhs(2 * k0_block, 0) = 1.0;
    rhs(2 * k0_block + 1, 1) = 1.0;
    const Eigen::MatrixXd v = lu.solve(rhs);

    // u = (complement factor)^{-1}, supported on the closed one side.
    TruncatedLoop u(n, gamma.twisted());
    for (int jb = 0; jb < nb; ++jb) {
        const int j = (conv == SplitConvention::minus_plus) ? jb : jb - n;
        const int rb = 2 * jb;
        u.coeff(j) = {v(rb, 0), v(rb, 1), v(rb + 1, 0), v(rb + 1, 1)};
    }

    double local_tail = 0.0;
    BirkhoffResult out;
    // Normalized factor by back-substitution; keep only its own side, the
    // rest of gamma*u is solve residual by construction.
    TruncatedLoop gu = loop_multiply(gamma, u, &local_tail);
    out.normalized_factor = graded_project(
        gu, sign > 0 ? GradedPart::minus_star : GradedPart::plus_star);
    out.normalized_factor.coeff(0) = Mat2::identity();
    out.normalized_factor.set_twisted(gamma.twisted());

    out.complement_factor = loop_invert(u, &local_tail);
    out.condition_estimate = rcond;

    TruncatedLoop product =
        loop_multiply(out.normalized_factor, out.complement_factor, &local_tail);
    out.residual = loop_norm(product - gamma);
    if (tail_loss) *tail_loss += local_tail;
    return out;
}

IwasawaPairResult iwasawa_pair_split(const TruncatedLoop& psi1,
                                     const TruncatedLoop& psi2,
                                     double rcond_threshold, double* tail_loss) {
    double local_tail = 0.0;
    const TruncatedLoop d =
        loop_multiply(loop_invert(psi1, &local_tail), psi2, &local_tail);
    BirkhoffResult b;
    try {
        b = birkhoff_split(d, SplitConvention::minus_plus, rcond_threshold,
                           &local_tail);
    } catch (const big_cell_error& e) {
        throw big_cell_error(e.rcond, "iwasawa_pair_split");
    }

    IwasawaPairResult out;
    out.l_minus = b.normalized_factor;
    out.l_plus = loop_invert(b.complement_factor, &local_tail);
    out.frame = loop_multiply(psi1, out.l_minus, &local_tail);
    out.condition_estimate = b.condition_estimate;

    const TruncatedLoop other = loop_multiply(psi2, out.l_plus, &local_tail);
    out.residual = loop_norm(out.frame - other);
    if (tail_loss) *tail_loss += local_tail;
    return out;
}

} // namespace tcmc
