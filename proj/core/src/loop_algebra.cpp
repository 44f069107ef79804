#include "tcmc/loop_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "tcmc/errors.hpp"

namespace tcmc {

TruncatedLoop TruncatedLoop::identity(int order, bool twisted) {
    TruncatedLoop r(order, twisted);
    r.coeff(0) = Mat2::identity();
    return r;
}

TruncatedLoop TruncatedLoop::monomial(int exponent, const Mat2& coeff, int order,
                                      bool twisted) {
    if (exponent < -order || exponent > order) {
        throw std::invalid_argument("monomial: exponent outside [-N, N]");
    }
    TruncatedLoop r(order, twisted);
    r.coeff(exponent) = coeff;
    return r;
}

int TruncatedLoop::min_exponent() const {
    for (int k = -order_; k <= order_; ++k) {
        if (coeff(k).norm1() != 0.0) return k;
    }
    return 0;
}

int TruncatedLoop::max_exponent() const {
    for (int k = order_; k >= -order_; --k) {
        if (coeff(k).norm1() != 0.0) return k;
    }
    return 0;
}

TruncatedLoop TruncatedLoop::with_order(int order, double* tail_loss) const {
    TruncatedLoop r(order, twisted_);
    for (int k = -order_; k <= order_; ++k) {
        if (k >= -order && k <= order) {
            r.coeff(k) = coeff(k);
        } else if (tail_loss) {
            *tail_loss += coeff(k).norm1();
        }
    }
    return r;
}

TruncatedLoop TruncatedLoop::operator+(const TruncatedLoop& o) const {
    const int n = std::max(order_, o.order_);
    TruncatedLoop r(n, twisted_ && o.twisted_);
    for (int k = -n; k <= n; ++k) {
        Mat2 c;
        if (in_window(k)) c += coeff(k);
        if (o.in_window(k)) c += o.coeff(k);
        r.coeff(k) = c;
    }
    return r;
}

TruncatedLoop TruncatedLoop::operator-(const TruncatedLoop& o) const {
    return *this + o * (-1.0);
}

TruncatedLoop TruncatedLoop::operator*(double s) const {
    TruncatedLoop r(*this);
    for (int k = -order_; k <= order_; ++k) r.coeff(k) = r.coeff(k) * s;
    return r;
}

TruncatedLoop loop_multiply(const TruncatedLoop& a, const TruncatedLoop& b,
                            double* tail_loss) {
    const int n = std::max(a.order(), b.order());
    TruncatedLoop promoted_a, promoted_b;
    const TruncatedLoop* pa = &a;
    const TruncatedLoop* pb = &b;
    if (a.order() != n) { promoted_a = a.with_order(n); pa = &promoted_a; }
    if (b.order() != n) { promoted_b = b.with_order(n); pb = &promoted_b; }

    TruncatedLoop r(n, a.twisted() && b.twisted());
    const int kmax = tail_loss ? 2 * n : n;
    for (int k = -kmax; k <= kmax; ++k) {
        const int jlo = std::max(-n, k - n);
        const int jhi = std::min(n, k + n);
        Mat2 c;
        bool any = false;
        for (int j = jlo; j <= jhi; ++j) {
            const Mat2& x = pa->coeff(j);
            const Mat2& y = pb->coeff(k - j);
            if (x.norm1() == 0.0 || y.norm1() == 0.0) continue;
            c += x * y;
            any = true;
        }
        if (!any) continue;
        if (k >= -n && k <= n) {
            r.coeff(k) = c;
        } else {
            *tail_loss += c.norm1();
        }
    }
    return r;
}

namespace {

// Exact recursion for the inverse of a one-sided loop with invertible
// lambda^0 coefficient. `sign` is +1 for support in [0,N], -1 for [-N,0].
TruncatedLoop invert_one_sided(const TruncatedLoop& a, int sign) {
    const int n = a.order();
    const Mat2 u0 = a.coeff(0);
    if (std::fabs(u0.det()) < 1e-300) {
        throw not_invertible_error("loop_invert: lambda^0 coefficient is singular");
    }
    const Mat2 u0inv = inverse(u0);
    TruncatedLoop r(n, a.twisted());
    r.coeff(0) = u0inv;
    for (int m = 1; m <= n; ++m) {
        Mat2 s;
        for (int j = 1; j <= m; ++j) {
            s += a.coeff(sign * j) * r.coeff(sign * (m - j));
        }
        r.coeff(sign * m) = -(u0inv * s);
    }
    return r;
}

// General inverse: solve (a*v)_k = delta_{k0} for v over the full window.
// Column-decoupled: one LU solve with two right-hand sides.
TruncatedLoop invert_general(const TruncatedLoop& a) {
    const int n = a.order();
    const int nb = 2 * n + 1;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(2 * nb, 2 * nb);
    for (int k = -n; k <= n; ++k) {
        for (int j = -n; j <= n; ++j) {
            const int d = k - j;
            if (d < -n || d > n) continue;
            const Mat2& g = a.coeff(d);
            const int rb = 2 * (k + n);
            const int cb = 2 * (j + n);
            m(rb, cb) = g.a11;
            m(rb, cb + 1) = g.a12;
            m(rb + 1, cb) = g.a21;
            m(rb + 1, cb + 1) = g.a22;
        }
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(m);
    const double rc = lu.rcond();
    if (!std::isfinite(rc) || rc < 1e-14) {
        throw not_invertible_error(
            "loop_invert: block-Toeplitz system singular at this truncation");
    }
    Eigen::MatrixXd rhs = Eigen::MatrixXd::Zero(2 * nb, 2);
    rhs(2 * n, 0) = 1.0;      // identity at block k = 0
    rhs(2 * n + 1, 1) = 1.0;
    Eigen::MatrixXd v = lu.solve(rhs);
    TruncatedLoop r(n, a.twisted());
    for (int j = -n; j <= n; ++j) {
        const int rb = 2 * (j + n);
        r.coeff(j) = {v(rb, 0), v(rb, 1), v(rb + 1, 0), v(rb + 1, 1)};
    }
    return r;
}

} // namespace

TruncatedLoop loop_invert(const TruncatedLoop& a, double* tail_loss) {
    const int lo = a.min_exponent();
    const int hi = a.max_exponent();
    if (loop_norm(a) == 0.0) {
        throw not_invertible_error("loop_invert: zero loop");
    }
    TruncatedLoop r(0, false);
    if (lo >= 0 && std::fabs(a.coeff(0).det()) > 1e-300) {
        r = invert_one_sided(a, +1);
    } else if (hi <= 0 && std::fabs(a.coeff(0).det()) > 1e-300) {
        r = invert_one_sided(a, -1);
    } else {
        r = invert_general(a);
    }
    if (tail_loss) {
        // Residual of the verified product doubles as the tail report.
        double local = 0.0;
        TruncatedLoop p = loop_multiply(a, r, &local);
        *tail_loss += local + loop_norm(p - TruncatedLoop::identity(a.order(), a.twisted()));
    }
    return r;
}

Mat2 evaluate(const TruncatedLoop& a, double lambda0) {
    if (!(lambda0 > 0.0)) {
        throw std::invalid_argument("evaluate: lambda0 must be positive");
    }
    Mat2 r;
    double p = std::pow(lambda0, -a.order());
    for (int k = -a.order(); k <= a.order(); ++k) {
        r += a.coeff(k) * p;
        p *= lambda0;
    }
    return r;
}

TruncatedLoop lambda_scaled_derivative(const TruncatedLoop& a) {
    TruncatedLoop r(a.order(), false);
    for (int k = -a.order(); k <= a.order(); ++k) {
        r.coeff(k) = a.coeff(k) * static_cast<double>(k);
    }
    // k*a_k flips no parity: twisting is preserved.
    r.set_twisted(a.twisted());
    return r;
}

double loop_norm(const TruncatedLoop& a) {
    double s = 0.0;
    for (int k = -a.order(); k <= a.order(); ++k) s += a.coeff(k).norm1();
    return s;
}

TruncatedLoop graded_project(const TruncatedLoop& a, GradedPart part) {
    TruncatedLoop r(a.order(), a.twisted());
    for (int k = -a.order(); k <= a.order(); ++k) {
        const Mat2& c = a.coeff(k);
        switch (part) {
        case GradedPart::plus:
            if (k >= 0) r.coeff(k) = c;
            break;
        case GradedPart::minus:
            if (k <= 0) r.coeff(k) = c;
            break;
        case GradedPart::plus_star:
            if (k > 0) r.coeff(k) = c;
            break;
        case GradedPart::minus_star:
            if (k < 0) r.coeff(k) = c;
            break;
        case GradedPart::k_part:
            r.coeff(k) = {c.a11, 0.0, 0.0, c.a22};
            break;
        case GradedPart::m_part:
            r.coeff(k) = {0.0, c.a12, c.a21, 0.0};
            break;
        }
    }
    return r;
}

double twist_defect(const TruncatedLoop& a) {
    double worst = 0.0;
    for (int k = -a.order(); k <= a.order(); ++k) {
        const Mat2& c = a.coeff(k);
        const bool even = ((k % 2) == 0);
        const double off = even ? std::max(std::fabs(c.a12), std::fabs(c.a21))
                                : std::max(std::fabs(c.a11), std::fabs(c.a22));
        worst = std::max(worst, off);
    }
    return worst;
}

bool check_twisted(const TruncatedLoop& a, double tol) {
    return twist_defect(a) <= tol;
}

double det_drift(const TruncatedLoop& a, double lambda0) {
    return evaluate(a, lambda0).det() - 1.0;
}

std::string to_debug_text(const TruncatedLoop& a) {
    std::ostringstream out;
    char buf[128];
    for (int k = -a.order(); k <= a.order(); ++k) {
        const Mat2& c = a.coeff(k);
        std::snprintf(buf, sizeof(buf), "%d %.17g %.17g %.17g %.17g\n", k, c.a11,
                      c.a12, c.a21, c.a22);
        out << buf;
    }
    return out.str();
}

TruncatedLoop from_debug_text(const std::string& text, bool twisted) {
    struct Row {
        int k;
        Mat2 c;
    };
    std::vector<Row> rows;
    std::istringstream in(text);
    std::string line;
    int max_abs = 0;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        Row r{};
        if (!(ls >> r.k >> r.c.a11 >> r.c.a12 >> r.c.a21 >> r.c.a22)) {
            throw std::invalid_argument("from_debug_text: malformed line: " + line);
        }
        max_abs = std::max(max_abs, std::abs(r.k));
        rows.push_back(r);
    }
    if (rows.empty()) {
        throw std::invalid_argument("from_debug_text: no coefficient lines");
    }
    TruncatedLoop a(max_abs, twisted);
    for (const Row& r : rows) a.coeff(r.k) = r.c;
    return a;
}

} // namespace tcmc
