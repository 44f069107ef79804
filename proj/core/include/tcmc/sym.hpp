#pragma once

#include <vector>

#include "tcmc/dpw.hpp"
#include "tcmc/minkowski.hpp"

namespace tcmc {

/// Immersion data on a grid: Minkowski points, optional unit normals, the
/// big-cell failure mask inherited from the frame field, and (when the
/// potential was normalized) the exact conformal factor e^omega and the
/// exact first-order jet at the origin.
struct SurfacePatch {
    Grid grid;
    double lambda0 = 1.0;
    double H = 0.0;
    std::vector<Vec3M> points;
    std::vector<Vec3M> normals;
    bool has_normals = false;
    std::vector<std::uint8_t> failed;
    std::vector<double> conformal; // e^omega per point, exact (no differencing)
    bool has_conformal = false;
    bool has_origin_jet = false;
    Vec3M jet_x, jet_y; // d phi / dx, d phi / dy at the origin

    bool valid(int i, int j) const { return failed[grid.index(i, j)] == 0; }
};

/// Sym value of a single loop-group element:
///   phi = -(1/H) { (lambda d/dlambda Phi) Phi^{-1} + (1/2) Ad(Phi) k }
/// evaluated at lambda0 (so d/dt with lambda = e^t).
Vec3M sym_point(const TruncatedLoop& frame, double lambda0, double H);

/// Gauss map N = Ad(Phi) k per grid point, evaluated at lambda0; values lie
/// on the unit pseudosphere. Masked points are skipped (zero-filled).
std::vector<Vec3M> gauss_map(const FrameField& field, double lambda0);

/// Immersion of constant mean curvature H from the extended framing.
SurfacePatch sym_immersion(const FrameField& field, double lambda0, double H);

/// The logarithmic-derivative part -(1/H) (d/dt Phi) Phi^{-1} alone: the
/// parallel surface of constant Gaussian curvature 4H^2. Shares the
/// immersion's normals.
SurfacePatch parallel_k_surface(const FrameField& field, double lambda0, double H);

/// One Sym immersion per spectral value; members of the associated family
/// are isometric with the same constant mean curvature.
std::vector<SurfacePatch> associated_family(const FrameField& field,
                                            const std::vector<double>& lambdas,
                                            double H);

} // namespace tcmc
