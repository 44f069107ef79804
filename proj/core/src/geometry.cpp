#include "tcmc/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "tcmc/errors.hpp"

namespace tcmc {

FundamentalData fundamental_data(const SurfacePatch& patch) {
    const Grid& g = patch.grid;
    if (g.nx < 3 || g.ny < 3) {
        throw std::invalid_argument("fundamental_data: grid too small");
    }
    if (!patch.has_normals) {
        throw std::invalid_argument("fundamental_data: patch carries no normals");
    }
    FundamentalData d;
    d.grid = g;
    const std::size_t n = g.size();
    d.E.assign(n, 0.0);
    d.F.assign(n, 0.0);
    d.G.assign(n, 0.0);
    d.M.assign(n, 0.0);
    d.Q.assign(n, 0.0);
    d.R.assign(n, 0.0);
    d.H.assign(n, 0.0);
    d.K.assign(n, 0.0);
    d.omega.assign(n, 0.0);
    d.valid.assign(n, 0);
    d.omega_valid.assign(n, 0);

    const double hx = g.hx(), hy = g.hy();
    for (int j = 1; j + 1 < g.ny; ++j) {
        for (int i = 1; i + 1 < g.nx; ++i) {
            bool ok = true;
            for (int dj = -1; dj <= 1 && ok; ++dj) {
                for (int di = -1; di <= 1 && ok; ++di) {
                    ok = patch.valid(i + di, j + dj);
                }
            }
            if (!ok) continue;
            const std::size_t idx = g.index(i, j);
            auto P = [&](int a, int b) { return patch.points[g.index(a, b)]; };
            const Vec3M px = (P(i + 1, j) - P(i - 1, j)) * (1.0 / (2.0 * hx));
            const Vec3M py = (P(i, j + 1) - P(i, j - 1)) * (1.0 / (2.0 * hy));
            const Vec3M pxx =
                (P(i + 1, j) - P(i, j) * 2.0 + P(i - 1, j)) * (1.0 / (hx * hx));
            const Vec3M pyy =
                (P(i, j + 1) - P(i, j) * 2.0 + P(i, j - 1)) * (1.0 / (hy * hy));
            const Vec3M pxy = (P(i + 1, j + 1) - P(i + 1, j - 1) - P(i - 1, j + 1) +
                               P(i - 1, j - 1)) * (1.0 / (4.0 * hx * hy));
            const Vec3M& nrm = patch.normals[idx];

            const double E = lorentz_inner(px, px);
            const double F = lorentz_inner(px, py);
            const double G = lorentz_inner(py, py);
            const double M = lorentz_inner(pxy, nrm);
            const double Q = lorentz_inner(pxx, nrm);
            const double R = lorentz_inner(pyy, nrm);
            const double det_I = E * G - F * F;
            if (det_I == 0.0) continue;
            d.E[idx] = E;
            d.F[idx] = F;
            d.G[idx] = G;
            d.M[idx] = M;
            d.Q[idx] = Q;
            d.R[idx] = R;
            d.H[idx] = (Q * G - 2.0 * M * F + R * E) / (2.0 * det_I);
            d.K[idx] = (Q * R - M * M) / det_I;
            d.valid[idx] = 1;
            if (F > 0.0) {
                d.omega[idx] = std::log(2.0 * F);
                d.omega_valid[idx] = 1;
            }
        }
    }
    return d;
}

ResidualStat gauss_equation_residual(const FundamentalData& d) {
    ResidualStat stat;
    const Grid& g = d.grid;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t idx = g.index(i, j);
            if (!d.valid[idx] || !d.omega_valid[idx]) continue;
            const double e2w = std::exp(-2.0 * d.omega[idx]);
            stat.add(std::fabs(d.H[idx] * d.H[idx] - d.K[idx] -
                               4.0 * e2w * d.Q[idx] * d.R[idx]),
                     i, j);
        }
    }
    stat.finalize();
    return stat;
}

PdeResidualResult pde_residual(const FundamentalData& d, PdeKind kind, double gate_tol) {
    const Grid& g = d.grid;
    PdeResidualResult out;

    if (kind == PdeKind::sinh || kind == PdeKind::cosh) {
        // Normal-form gate: Q = R (sinh) resp. Q = -R (cosh) and |Q| = |H|/2.
        double worst_pair = 0.0, worst_mag = 0.0, q_at_worst = 0.0, r_at_worst = 0.0;
        for (int j = 0; j < g.ny; ++j) {
            for (int i = 0; i < g.nx; ++i) {
                const std::size_t idx = g.index(i, j);
                if (!d.valid[idx]) continue;
                const double pair = (kind == PdeKind::sinh)
                                        ? std::fabs(d.Q[idx] - d.R[idx])
                                        : std::fabs(d.Q[idx] + d.R[idx]);
                const double mag =
                    std::fabs(std::fabs(d.Q[idx]) - std::fabs(d.H[idx]) / 2.0);
                if (pair > worst_pair || mag > worst_mag) {
                    q_at_worst = d.Q[idx];
                    r_at_worst = d.R[idx];
                }
                worst_pair = std::max(worst_pair, pair);
                worst_mag = std::max(worst_mag, mag);
            }
        }
        if (worst_pair > gate_tol || worst_mag > gate_tol) {
            out.applicable = false;
            out.measured_Q = q_at_worst;
            out.measured_R = r_at_worst;
            out.reason = "chart is not in the required normal form";
            return out;
        }
    }

    const double hx = g.hx(), hy = g.hy();
    for (int j = 1; j + 1 < g.ny; ++j) {
        for (int i = 1; i + 1 < g.nx; ++i) {
            const std::size_t idx = g.index(i, j);
            bool ok = true;
            for (int dj = -1; dj <= 1 && ok; ++dj) {
                for (int di = -1; di <= 1 && ok; ++di) {
                    ok = d.omega_valid[g.index(i + di, j + dj)] != 0;
                }
            }
            if (!ok) continue;
            auto W = [&](int a, int b) { return d.omega[g.index(a, b)]; };
            const double w = d.omega[idx];
            const double w_xy = (W(i + 1, j + 1) - W(i + 1, j - 1) - W(i - 1, j + 1) +
                                 W(i - 1, j - 1)) / (4.0 * hx * hy);
            const double H2 = d.H[idx] * d.H[idx];
            double r = 0.0;
            switch (kind) {
            case PdeKind::gauss_general:
                r = w_xy + 0.5 * H2 * std::exp(w) -
                    2.0 * d.Q[idx] * d.R[idx] * std::exp(-w);
                break;
            case PdeKind::sinh:
                r = w_xy + H2 * std::sinh(w);
                break;
            case PdeKind::cosh:
                r = w_xy + H2 * std::cosh(w);
                break;
            case PdeKind::liouville:
                r = w_xy + 0.5 * H2 * std::exp(w);
                break;
            }
            out.stat.add(std::fabs(r), i, j);
        }
    }
    out.stat.finalize();
    out.applicable = out.stat.count > 0;
    if (!out.applicable) out.reason = "no interior omega stencil available";
    return out;
}

ResidualStat harmonic_residual(const std::vector<Vec3M>& normals, const Grid& g,
                               const std::vector<std::uint8_t>* mask) {
    ResidualStat stat;
    const double hx = g.hx(), hy = g.hy();
    auto ok = [&](int i, int j) {
        return mask == nullptr || (*mask)[g.index(i, j)] == 0;
    };
    for (int j = 1; j + 1 < g.ny; ++j) {
        for (int i = 1; i + 1 < g.nx; ++i) {
            if (!ok(i, j) || !ok(i + 1, j + 1) || !ok(i + 1, j - 1) ||
                !ok(i - 1, j + 1) || !ok(i - 1, j - 1)) {
                continue;
            }
            auto N = [&](int a, int b) { return normals[g.index(a, b)]; };
            const Vec3M psi = N(i, j);
            const Vec3M psi_xy = (N(i + 1, j + 1) - N(i + 1, j - 1) - N(i - 1, j + 1) +
                                  N(i - 1, j - 1)) * (1.0 / (4.0 * hx * hy));
            const double denom =
                psi.u1 * psi.u1 + psi.u2 * psi.u2 + psi.u3 * psi.u3;
            const double rho = denom > 0.0
                                   ? (psi_xy.u1 * psi.u1 + psi_xy.u2 * psi.u2 +
                                      psi_xy.u3 * psi.u3) / denom
                                   : 0.0;
            const Vec3M defect = psi_xy - psi * rho;
            stat.add(coord_norm(defect) / (coord_norm(psi_xy) + 1.0), i, j);
        }
    }
    stat.finalize();
    return stat;
}

namespace {

struct OriginFrame {
    Vec3M p, ex, ey, n;
};

OriginFrame origin_frame(const SurfacePatch& patch) {
    const Grid& g = patch.grid;
    const int i0 = g.origin_i(), j0 = g.origin_j();
    OriginFrame f;
    f.p = patch.points[g.index(i0, j0)];
    if (!patch.has_normals) {
        throw std::invalid_argument("compare_aligned: patch has no normals");
    }
    f.n = patch.normals[g.index(i0, j0)];
    if (patch.has_origin_jet) {
        f.ex = patch.jet_x;
        f.ey = patch.jet_y;
        return f;
    }
    if (i0 - 1 < 0 || i0 + 1 >= g.nx || j0 - 1 < 0 || j0 + 1 >= g.ny ||
        !patch.valid(i0 - 1, j0) || !patch.valid(i0 + 1, j0) ||
        !patch.valid(i0, j0 - 1) || !patch.valid(i0, j0 + 1)) {
        throw std::invalid_argument("compare_aligned: origin jet unavailable");
    }
    f.ex = (patch.points[g.index(i0 + 1, j0)] - patch.points[g.index(i0 - 1, j0)]) *
           (1.0 / (2.0 * g.hx()));
    f.ey = (patch.points[g.index(i0, j0 + 1)] - patch.points[g.index(i0, j0 - 1)]) *
           (1.0 / (2.0 * g.hy()));
    return f;
}

Eigen::Matrix3d frame_matrix(const Vec3M& a, const Vec3M& b, const Vec3M& c) {
    Eigen::Matrix3d m;
    m << a.u1, b.u1, c.u1, a.u2, b.u2, c.u2, a.u3, b.u3, c.u3;
    return m;
}

double aligned_distance(const SurfacePatch& a, const SurfacePatch& b, bool flip) {
    const OriginFrame fa = origin_frame(a);
    const OriginFrame fb = origin_frame(b);
    const Eigen::Matrix3d ba = frame_matrix(fa.ex, fa.ey, flip ? -fa.n : fa.n);
    const Eigen::Matrix3d bb = frame_matrix(fb.ex, fb.ey, fb.n);
    if (std::fabs(ba.determinant()) < 1e-12) {
        throw std::invalid_argument("compare_aligned: degenerate frame at the origin");
    }
    const Eigen::Matrix3d L = bb * ba.inverse();
    double worst = 0.0;
    const Grid& g = a.grid;
    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            if (!a.valid(i, j) || !b.valid(i, j)) continue;
            const std::size_t idx = g.index(i, j);
            const Vec3M da = a.points[idx] - fa.p;
            const Eigen::Vector3d v = L * Eigen::Vector3d(da.u1, da.u2, da.u3);
            const Vec3M mapped{v(0) + fb.p.u1, v(1) + fb.p.u2, v(2) + fb.p.u3};
            worst = std::max(worst, coord_norm(mapped - b.points[idx]));
        }
    }
    return worst;
}

} // namespace

double compare_aligned(const SurfacePatch& a, const SurfacePatch& b,
                       bool allow_normal_flip) {
    if (!a.grid.same_layout(b.grid)) {
        throw std::invalid_argument("compare_aligned: grids differ");
    }
    double best = aligned_distance(a, b, false);
    if (allow_normal_flip) best = std::min(best, aligned_distance(a, b, true));
    return best;
}

namespace {

SurfacePatch make_patch(const Grid& g) {
    SurfacePatch p;
    p.grid = g;
    p.points.assign(g.size(), Vec3M{});
    p.normals.assign(g.size(), Vec3M{});
    p.failed.assign(g.size(), 0);
    p.has_normals = true;
    return p;
}

} // namespace

SurfacePatch pseudosphere_patch(double r, const Grid& grid) {
    // phi = r (tan z, sec z sin S, sec z cos S), z = (x-y)/2, S = (x+y)/2;
    // a null chart of the radius-r pseudosphere, valid for |x-y| < pi.
    SurfacePatch p = make_patch(grid);
    p.H = 1.0 / r;
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const double x = grid.x(i), y = grid.y(j);
            const double z = 0.5 * (x - y), S = 0.5 * (x + y);
            if (std::fabs(std::cos(z)) < 1e-12) {
                throw std::invalid_argument("pseudosphere_patch: chart singular, need |x-y| < pi");
            }
            const double sec = 1.0 / std::cos(z);
            const std::size_t idx = grid.index(i, j);
            p.points[idx] = Vec3M{std::tan(z), sec * std::sin(S), sec * std::cos(S)} * r;
            p.normals[idx] = p.points[idx] * (-1.0 / r); // H = +1/r orientation
        }
    }
    p.jet_x = Vec3M{0.5 * r, 0.5 * r, 0.0};
    p.jet_y = Vec3M{-0.5 * r, 0.5 * r, 0.0};
    p.has_origin_jet = true;
    return p;
}

SurfacePatch closed_form_surface(const std::string& name, const Grid& grid) {
    if (name == "hyperbolic_cylinder") {
        SurfacePatch p = make_patch(grid);
        p.H = 0.5; // |H|; the analytic normal below gives H = -1/2
        for (int j = 0; j < grid.ny; ++j) {
            for (int i = 0; i < grid.nx; ++i) {
                const double x = grid.x(i), y = grid.y(j);
                const double z = 0.5 * (x - y);
                const std::size_t idx = grid.index(i, j);
                p.points[idx] = {std::sinh(z), 0.5 * (x + y), std::cosh(z)};
                p.normals[idx] = {std::sinh(z), 0.0, std::cosh(z)};
            }
        }
        p.jet_x = {0.5, 0.5, 0.0};
        p.jet_y = {-0.5, 0.5, 0.0};
        p.has_origin_jet = true;
        return p;
    }
    if (name == "circular_cylinder") {
        SurfacePatch p = make_patch(grid);
        p.H = 0.5;
        for (int j = 0; j < grid.ny; ++j) {
            for (int i = 0; i < grid.nx; ++i) {
                const double x = grid.x(i), y = grid.y(j);
                const double S = 0.5 * (x + y);
                const std::size_t idx = grid.index(i, j);
                p.points[idx] = {0.5 * (x - y), std::sin(S), -std::cos(S)};
                p.normals[idx] = {0.0, -std::sin(S), std::cos(S)}; // H = +1/2
            }
        }
        p.jet_x = {0.5, 0.5, 0.0};
        p.jet_y = {-0.5, 0.5, 0.0};
        p.has_origin_jet = true;
        return p;
    }
    if (name == "pseudosphere") {
        return pseudosphere_patch(2.0, grid);
    }
    if (name == "bscroll_example") {
        // Ruled chart (s,t): phi = gamma(s) + t B(s) over the null Frenet
        // curve gamma(s) = (sinh(2s)/2, cosh(2s)/2, s), torsion 1. Normal
        // N = C - t tau B.
        SurfacePatch p = make_patch(grid);
        p.H = 1.0;
        const double tau = 1.0;
        for (int j = 0; j < grid.ny; ++j) {
            for (int i = 0; i < grid.nx; ++i) {
                const double s = grid.x(i), t = grid.y(j);
                const double ch = std::cosh(2.0 * s), sh = std::sinh(2.0 * s);
                const Vec3M gamma{0.5 * sh, 0.5 * ch, s};
                const Vec3M B{-0.5 * ch, -0.5 * sh, 0.5};
                const Vec3M C{-sh, -ch, 0.0};
                const std::size_t idx = grid.index(i, j);
                p.points[idx] = gamma + B * t;
                p.normals[idx] = C - B * (t * tau);
            }
        }
        // phi_s = A + t tau C, phi_t = B at the origin of the (s,t) chart.
        p.jet_x = {1.0, 0.0, 1.0};
        p.jet_y = {-0.5, 0.0, 0.5};
        p.has_origin_jet = true;
        return p;
    }
    throw std::invalid_argument("closed_form_surface: unknown name \"" + name +
                                "\" (hyperbolic_cylinder, circular_cylinder, "
                                "pseudosphere, bscroll_example)");
}

double ruledness_check(const SurfacePatch& patch, Axis fixed_axis) {
    const Grid& g = patch.grid;
    const int n_lines = (fixed_axis == Axis::x) ? g.nx : g.ny;
    const int n_pts = (fixed_axis == Axis::x) ? g.ny : g.nx;
    double worst = 0.0;
    for (int line = 0; line < n_lines; ++line) {
        std::vector<Eigen::Vector3d> pts;
        pts.reserve(static_cast<std::size_t>(n_pts));
        for (int t = 0; t < n_pts; ++t) {
            const int i = (fixed_axis == Axis::x) ? line : t;
            const int j = (fixed_axis == Axis::x) ? t : line;
            if (!patch.valid(i, j)) continue;
            const Vec3M& p = patch.points[g.index(i, j)];
            pts.emplace_back(p.u1, p.u2, p.u3);
        }
        if (pts.size() < 3) continue;
        Eigen::Vector3d c = Eigen::Vector3d::Zero();
        for (const auto& p : pts) c += p;
        c /= static_cast<double>(pts.size());
        Eigen::MatrixXd m(pts.size(), 3);
        for (std::size_t k = 0; k < pts.size(); ++k) m.row(k) = (pts[k] - c).transpose();
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinV);
        const Eigen::Vector3d dir = svd.matrixV().col(0);
        for (std::size_t k = 0; k < pts.size(); ++k) {
            const Eigen::Vector3d rel = pts[k] - c;
            worst = std::max(worst, (rel - dir * dir.dot(rel)).norm());
        }
    }
    return worst;
}

NullFrenetFrame null_frenet_frame(const BScrollSpec& spec,
                                  const std::vector<double>& s_samples, int substeps) {
    if (s_samples.empty()) throw std::invalid_argument("null_frenet_frame: no samples");
    const auto check = [&](const Vec3M& A, const Vec3M& B, const Vec3M& C) {
        double w = 0.0;
        w = std::max(w, std::fabs(lorentz_inner(A, B) - 1.0));
        w = std::max(w, std::fabs(lorentz_inner(A, A)));
        w = std::max(w, std::fabs(lorentz_inner(B, B)));
        w = std::max(w, std::fabs(lorentz_inner(C, C) - 1.0));
        w = std::max(w, std::fabs(lorentz_inner(A, C)));
        w = std::max(w, std::fabs(lorentz_inner(B, C)));
        return w;
    };
    if (check(spec.A0, spec.B0, spec.C0) > 1e-8) {
        throw std::invalid_argument(
            "null_frenet_frame: seed violates the null frame relations");
    }

    // State = rows of the 3x(A,B,C) stacked coordinates; the ODE acts by
    // right multiplication with the structure matrix.
    struct State {
        Vec3M A, B, C;
    };
    auto deriv = [&](const State& st, double s) -> State {
        const double k = spec.kappa(s), t = spec.tau;
        return {st.C * k, st.C * t, -(st.A * t) - (st.B * k)};
    };
    auto step = [&](State st, double s, double h) -> State {
        const State k1 = deriv(st, s);
        const State k2 = deriv({st.A + k1.A * (h / 2), st.B + k1.B * (h / 2),
                                st.C + k1.C * (h / 2)}, s + h / 2);
        const State k3 = deriv({st.A + k2.A * (h / 2), st.B + k2.B * (h / 2),
                                st.C + k2.C * (h / 2)}, s + h / 2);
        const State k4 = deriv({st.A + k3.A * h, st.B + k3.B * h, st.C + k3.C * h},
                               s + h);
        return {st.A + (k1.A + k2.A * 2 + k3.A * 2 + k4.A) * (h / 6),
                st.B + (k1.B + k2.B * 2 + k3.B * 2 + k4.B) * (h / 6),
                st.C + (k1.C + k2.C * 2 + k3.C * 2 + k4.C) * (h / 6)};
    };

    NullFrenetFrame out;
    out.s = s_samples;
    out.A.resize(s_samples.size());
    out.B.resize(s_samples.size());
    out.C.resize(s_samples.size());

    // March from s = 0 (or the closest sample) outward in both directions.
    std::size_t k0 = 0;
    for (std::size_t k = 1; k < s_samples.size(); ++k) {
        if (std::fabs(s_samples[k]) < std::fabs(s_samples[k0])) k0 = k;
    }
    State anchor{spec.A0, spec.B0, spec.C0};
    // Integrate from 0 to the anchor sample if it is not at 0.
    if (s_samples[k0] != 0.0) {
        const double target = s_samples[k0];
        const int nst = std::max(1, substeps);
        const double h = target / nst;
        double s = 0.0;
        for (int q = 0; q < nst; ++q, s += h) anchor = step(anchor, s, h);
    }
    out.A[k0] = anchor.A;
    out.B[k0] = anchor.B;
    out.C[k0] = anchor.C;
    auto march = [&](std::size_t from, long to, long dir) {
        State st{out.A[from], out.B[from], out.C[from]};
        for (long k = static_cast<long>(from); k != to; k += dir) {
            const double s0 = s_samples[static_cast<std::size_t>(k)];
            const double s1 = s_samples[static_cast<std::size_t>(k + dir)];
            const double h = (s1 - s0) / substeps;
            double s = s0;
            for (int q = 0; q < substeps; ++q, s += h) st = step(st, s, h);
            out.A[static_cast<std::size_t>(k + dir)] = st.A;
            out.B[static_cast<std::size_t>(k + dir)] = st.B;
            out.C[static_cast<std::size_t>(k + dir)] = st.C;
        }
    };
    march(k0, static_cast<long>(s_samples.size()) - 1, +1);
    march(k0, 0, -1);

    for (std::size_t k = 0; k < s_samples.size(); ++k) {
        out.relation_drift = std::max(out.relation_drift, check(out.A[k], out.B[k], out.C[k]));
    }
    return out;
}

Vec3M BScrollReconstruction::point(int i, int j, const Grid&, double H) const {
    const double f = F[static_cast<std::size_t>(i)];
    const double q = H * f / (1.0 + c1[static_cast<std::size_t>(j)] * f);
    return gamma[static_cast<std::size_t>(j)] + B[static_cast<std::size_t>(j)] * q;
}

BScrollReconstruction bscroll_reconstruction(const PotentialPair& pot, const Grid& grid,
                                             double lambda0, int substeps, int order) {
    BScrollReconstruction out;
    const std::vector<TruncatedLoop> phi_plus =
        integrate_framing_axis(pot, Axis::x, grid, substeps, order);
    const std::vector<TruncatedLoop> phi_minus =
        integrate_framing_axis(pot, Axis::y, grid, substeps, order);

    out.F.resize(phi_plus.size());
    for (std::size_t i = 0; i < phi_plus.size(); ++i) {
        // Phi_plus = [[1, -lambda F], [0, 1]] for an upper-triangular xi1.
        out.F[i] = -phi_plus[i].coeff(1).a12;
    }
    out.gamma.resize(phi_minus.size());
    out.B.resize(phi_minus.size());
    out.c1.resize(phi_minus.size());
    const Mat2 jmi = Mat2::basis_j() - Mat2::basis_i(); // [[0,2],[0,0]]
    const double H = pot.H;
    for (std::size_t j = 0; j < phi_minus.size(); ++j) {
        out.gamma[j] = sym_point(phi_minus[j], lambda0, H);
        const Mat2 m = evaluate(phi_minus[j], lambda0);
        const Mat2 adj = m * jmi * inverse(m);
        out.B[j] = Vec3M{0.5 * (adj.a21 - adj.a12), 0.5 * (adj.a21 + adj.a12),
                         0.5 * (adj.a22 - adj.a11)} * (lambda0 / (H * H));
        out.c1[j] = phi_minus[j].coeff(-1).a21;
    }
    return out;
}

FamilyInvariance family_invariance(const std::vector<SurfacePatch>& family) {
    FamilyInvariance out;
    if (family.size() < 2) return out;
    const Grid& g = family.front().grid;
    std::vector<FundamentalData> data;
    data.reserve(family.size());
    for (const auto& p : family) data.push_back(fundamental_data(p));

    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t idx = g.index(i, j);
            double clo = std::numeric_limits<double>::infinity(), chi = -clo;
            double hlo = clo, hhi = -clo;
            bool call = true, hall = true;
            for (std::size_t f = 0; f < family.size(); ++f) {
                if (!family[f].has_conformal || family[f].failed[idx]) {
                    call = false;
                } else {
                    clo = std::min(clo, family[f].conformal[idx]);
                    chi = std::max(chi, family[f].conformal[idx]);
                }
                if (!data[f].valid[idx]) {
                    hall = false;
                } else {
                    hlo = std::min(hlo, std::fabs(data[f].H[idx]));
                    hhi = std::max(hhi, std::fabs(data[f].H[idx]));
                }
            }
            if (call) out.conformal_spread = std::max(out.conformal_spread, chi - clo);
            if (hall) out.mean_curvature_spread =
                          std::max(out.mean_curvature_spread, hhi - hlo);
        }
    }
    return out;
}

} // namespace tcmc
