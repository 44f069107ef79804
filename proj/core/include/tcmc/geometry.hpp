#pragma once

#include <functional>
#include <string>
#include <vector>

#include "tcmc/dpw.hpp"
#include "tcmc/sym.hpp"

namespace tcmc {

/// First and second fundamental form data measured from a patch by
/// second-order central differences. Only interior points with a full
/// unmasked 3x3 neighbourhood are `valid`; omega additionally requires
/// F > 0 (null-conformal chart with the standard orientation).
struct FundamentalData {
    Grid grid;
    std::vector<double> E, F, G;   // <phi_x,phi_x>, <phi_x,phi_y>, <phi_y,phi_y>
    std::vector<double> M;         // <phi_xy, N>
    std::vector<double> Q, R;      // Hopf coefficients <phi_xx,N>, <phi_yy,N>
    std::vector<double> H, K;      // mean and Gaussian curvature
    std::vector<double> omega;     // log(2F) where F > 0
    std::vector<std::uint8_t> valid;
    std::vector<std::uint8_t> omega_valid;

    bool ok(int i, int j) const { return valid[grid.index(i, j)] != 0; }
};

FundamentalData fundamental_data(const SurfacePatch& patch);

/// max |H^2 - K - 4 e^{-2 omega} Q R| over omega-valid points: the Gauss
/// equation as a consistency residual of the measured data.
ResidualStat gauss_equation_residual(const FundamentalData& data);

enum class PdeKind { gauss_general, sinh, cosh, liouville };

struct PdeResidualResult {
    bool applicable = false;
    ResidualStat stat;
    // When the sinh/cosh normal-form gate fails these carry the measured
    // Hopf coefficients that broke it.
    double measured_Q = 0.0;
    double measured_R = 0.0;
    std::string reason;
};

/// Residual of the selected integrability equation over (omega-valid)
/// interior points, with omega_xy by central differences. sinh and cosh
/// require the chart to sit in the corresponding normal form
/// (Q = R = +-H/2 up to gate_tol); otherwise not-applicable is returned
/// with the measured values.
PdeResidualResult pde_residual(const FundamentalData& data, PdeKind kind,
                               double gate_tol = 1e-3);

/// Lorentzian-harmonicity defect of a unit-normal field: per interior
/// point the best-fit rho in psi_xy = rho psi, returning
/// max ||psi_xy - rho psi|| / (||psi_xy|| + 1).
ResidualStat harmonic_residual(const std::vector<Vec3M>& normals, const Grid& grid,
                               const std::vector<std::uint8_t>* mask = nullptr);

/// Max pointwise Minkowski-coordinate distance between two patches after
/// applying the unique affine map sending a's origin frame (phi_x, phi_y,
/// N at (0,0)) to b's. Patches built by the Sym layer carry exact origin
/// jets; otherwise second-order differences are used. With
/// allow_normal_flip both normal signs are tried and the minimum returned.
double compare_aligned(const SurfacePatch& a, const SurfacePatch& b,
                       bool allow_normal_flip);

/// Exact evaluation of the library's closed-form surfaces with analytic
/// normals and origin jets: "hyperbolic_cylinder", "circular_cylinder",
/// "pseudosphere" (radius 2, matching the built-in potential),
/// "bscroll_example" (grid coordinates are the ruled chart (s,t)).
SurfacePatch closed_form_surface(const std::string& name, const Grid& grid);

/// Pseudosphere of radius r in null coordinates; oracle behind
/// closed_form_surface("pseudosphere").
SurfacePatch pseudosphere_patch(double r, const Grid& grid);

/// Collinearity defect of the grid lines with the given coordinate held
/// fixed: max distance from the best-fit affine line, maximized over lines
/// with at least 3 unmasked points. Near zero certifies a ruled patch.
double ruledness_check(const SurfacePatch& patch, Axis fixed_axis);

/// Curvature function, constant torsion and frame seed of a null Frenet
/// curve. The seed must satisfy <A,B> = 1, <C,C> = 1 and the four
/// orthogonality relations.
struct BScrollSpec {
    std::function<double(double)> kappa;
    double tau = 0.0;
    Vec3M A0, B0, C0;
};

struct NullFrenetFrame {
    std::vector<double> s;
    std::vector<Vec3M> A, B, C;
    double relation_drift = 0.0; // worst violation of the frame relations
};

/// RK4 integration of the null Frenet frame ODE
///   d/ds (A,B,C) = (A,B,C) [[0,0,-tau],[0,0,-kappa],[kappa,tau,0]].
NullFrenetFrame null_frenet_frame(const BScrollSpec& spec,
                                  const std::vector<double>& s_samples,
                                  int substeps = 16);

/// Ruled reconstruction of a B-scroll patch from one-axis data alone:
/// integrates Phi_minus from xi2 along y and reports directrix, ruling
/// direction and ruling parameter so that
///   phi(x,y) = gamma(y) + H F(x) / (1 + c1(y) F(x)) * B(y),
/// with F(x) read off the (1,2) entry of the integrated Phi_plus.
struct BScrollReconstruction {
    std::vector<Vec3M> gamma; // per y sample
    std::vector<Vec3M> B;     // per y sample
    std::vector<double> c1;   // per y sample
    std::vector<double> F;    // per x sample

    Vec3M point(int i, int j, const Grid& grid, double H) const;
};

BScrollReconstruction bscroll_reconstruction(const PotentialPair& pot, const Grid& grid,
                                             double lambda0, int substeps, int order);

/// e^omega and mean-curvature spreads across an associated family;
/// the conformal spread uses the exact per-point factors, the H spread the
/// measured fundamental data.
struct FamilyInvariance {
    double conformal_spread = 0.0;
    double mean_curvature_spread = 0.0;
};

FamilyInvariance family_invariance(const std::vector<SurfacePatch>& family);

} // namespace tcmc
