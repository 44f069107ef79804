#include "tcmc/sym.hpp"

#include <cmath>
#include <stdexcept>

namespace tcmc {

namespace {

// Trace-projected coordinate extraction; the trace carries only truncation
// drift of det Phi and is not data.
Vec3M to_vector(const Mat2& m) {
    return {0.5 * (m.a21 - m.a12), 0.5 * (m.a21 + m.a12), 0.5 * (m.a22 - m.a11)};
}

Mat2 ad_k(const Mat2& g) {
    static const Mat2 k = Mat2::basis_k();
    return g * k * inverse(g);
}

} // namespace

Vec3M sym_point(const TruncatedLoop& frame, double lambda0, double H) {
    if (H == 0.0) throw std::invalid_argument("sym_point: H must be nonzero");
    const Mat2 m = evaluate(frame, lambda0);
    const Mat2 d = evaluate(lambda_scaled_derivative(frame), lambda0);
    const Mat2 phi = (d * inverse(m) + ad_k(m) * 0.5) * (-1.0 / H);
    return to_vector(phi);
}

std::vector<Vec3M> gauss_map(const FrameField& field, double lambda0) {
    if (!(lambda0 > 0.0)) throw std::invalid_argument("gauss_map: lambda0 > 0 required");
    std::vector<Vec3M> out(field.grid.size());
    for (int j = 0; j < field.grid.ny; ++j) {
        for (int i = 0; i < field.grid.nx; ++i) {
            const std::size_t idx = field.grid.index(i, j);
            if (field.failed[idx]) continue;
            out[idx] = to_vector(ad_k(evaluate(field.frames[idx], lambda0)));
        }
    }
    return out;
}

namespace {

SurfacePatch immersion_common(const FrameField& field, double lambda0, double H,
                              bool parallel_part_only) {
    if (H == 0.0) throw std::invalid_argument("sym_immersion: H must be nonzero");
    if (!(lambda0 > 0.0)) throw std::invalid_argument("sym_immersion: lambda0 > 0 required");

    SurfacePatch p;
    p.grid = field.grid;
    p.lambda0 = lambda0;
    p.H = H;
    p.failed = field.failed;
    p.points.assign(field.grid.size(), Vec3M{});
    p.normals = gauss_map(field, lambda0);
    p.has_normals = true;

    for (int j = 0; j < field.grid.ny; ++j) {
        for (int i = 0; i < field.grid.nx; ++i) {
            const std::size_t idx = field.grid.index(i, j);
            if (p.failed[idx]) continue;
            const TruncatedLoop& psi = field.frames[idx];
            const Mat2 m = evaluate(psi, lambda0);
            const Mat2 minv = inverse(m);
            const Mat2 d = evaluate(lambda_scaled_derivative(psi), lambda0);
            Mat2 phi = d * minv;
            if (!parallel_part_only) phi += (m * Mat2::basis_k() * minv) * 0.5;
            p.points[idx] = to_vector(phi * (-1.0 / H));
        }
    }

    if (field.has_potential_data) {
        // Exact conformal factor from the split data: with eta' the
        // lambda^1 coefficient of xi1 and eta'' the lambda^-1 coefficient
        // of xi2, e^omega = -(4/H^2) eta'_{12}(x) eta''_{21}(y) eps^2 where
        // eps is the lambda^0 (1,1) entry of L_plus at the point. It does
        // not depend on lambda0: the family is isometric.
        p.conformal.assign(field.grid.size(), 0.0);
        for (int j = 0; j < field.grid.ny; ++j) {
            for (int i = 0; i < field.grid.nx; ++i) {
                const std::size_t idx = field.grid.index(i, j);
                if (p.failed[idx]) continue;
                const double eps = field.lplus_diag[idx];
                p.conformal[idx] = -(4.0 / (H * H)) *
                                   field.eta1[static_cast<std::size_t>(i)].a12 *
                                   field.eta2[static_cast<std::size_t>(j)].a21 * eps * eps;
            }
        }
        p.has_conformal = true;

        // Exact origin jet of the immersion (not of the parallel surface).
        if (!parallel_part_only) {
            const double e1 = field.eta1[static_cast<std::size_t>(field.grid.origin_i())].a12;
            const double e2 = field.eta2[static_cast<std::size_t>(field.grid.origin_j())].a21;
            p.jet_x = Vec3M{1.0, -1.0, 0.0} * (lambda0 / H * e1);
            p.jet_y = Vec3M{1.0, 1.0, 0.0} * (e2 / (lambda0 * H));
            p.has_origin_jet = true;
        }
    }
    return p;
}

} // namespace

SurfacePatch sym_immersion(const FrameField& field, double lambda0, double H) {
    return immersion_common(field, lambda0, H, false);
}

SurfacePatch parallel_k_surface(const FrameField& field, double lambda0, double H) {
    SurfacePatch p = immersion_common(field, lambda0, H, true);
    p.has_conformal = false;
    p.conformal.clear();
    return p;
}

std::vector<SurfacePatch> associated_family(const FrameField& field,
                                            const std::vector<double>& lambdas,
                                            double H) {
    std::vector<SurfacePatch> out;
    out.reserve(lambdas.size());
    for (double l : lambdas) out.push_back(sym_immersion(field, l, H));
    return out;
}

} // namespace tcmc
