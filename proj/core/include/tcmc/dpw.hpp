#pragma once

#include <cstdint>
#include <vector>

#include "tcmc/factorization.hpp"
#include "tcmc/interp.hpp"
#include "tcmc/loop_algebra.hpp"
#include "tcmc/potentials.hpp"

namespace tcmc {

/// Rectangular grid in the null coordinates (x, y). The origin must be a
/// grid point (the extended framing is normalized there) and nx, ny >= 3.
struct Grid {
    double x_min = -1.0, x_max = 1.0;
    double y_min = -1.0, y_max = 1.0;
    int nx = 33, ny = 33;

    static Grid make(double x_min, double x_max, double y_min, double y_max,
                     int nx, int ny);

    double hx() const { return (x_max - x_min) / (nx - 1); }
    double hy() const { return (y_max - y_min) / (ny - 1); }
    double x(int i) const { return x_min + i * hx(); }
    double y(int j) const { return y_min + j * hy(); }
    int origin_i() const;
    int origin_j() const;
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx) +
               static_cast<std::size_t>(i);
    }
    std::size_t size() const {
        return static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny);
    }
    bool same_layout(const Grid& o) const;
};

enum class Axis { x, y };

/// Extended framing on a grid: Psi(x_i, y_j; lambda) with Psi(0,0) = 1,
/// plus the per-point splitting diagnostics the reconstruction layer needs.
struct FrameField {
    Grid grid;
    int order = 16;
    double H = 0.0; // carried over from the potential
    std::vector<TruncatedLoop> frames;
    std::vector<TruncatedLoop> inverse_frames;
    std::vector<std::uint8_t> failed; // big-cell failures
    std::vector<double> lplus_diag;   // (1,1) entry of L_plus at lambda^0
    std::vector<double> split_residual;
    std::vector<double> rcond;
    double tail_loss = 0.0;

    // Exact samples of the normalized potential along the axes (valid when
    // the input potential was normalized); they carry the exact origin jet
    // and conformal factor.
    bool has_potential_data = false;
    std::vector<Mat2> eta1; // per x index
    std::vector<Mat2> eta2; // per y index

    bool valid(int i, int j) const { return failed[grid.index(i, j)] == 0; }
    double failure_fraction() const;
};

/// Budget above which truncation loss aborts a pipeline computation.
inline constexpr double kTailLossBudget = 1e-8;

/// exp(t * generator) by scaling and squaring in the truncated loop
/// algebra. Oracle for constant-coefficient framing ODEs.
TruncatedLoop loop_exponential(const TruncatedLoop& generator, double t,
                               double* tail_loss = nullptr);

/// Solve d'Psi = Psi xi along one axis with Psi(0) = 1 by classical RK4,
/// `substeps` steps per grid interval, integrating outward from the origin.
/// Throws truncation_overflow when the cumulative tail loss exceeds the
/// budget.
std::vector<TruncatedLoop> integrate_framing_axis(const PotentialPair& pot, Axis axis,
                                                  const Grid& grid, int substeps,
                                                  int order,
                                                  double* tail_loss = nullptr);

/// The Weierstrass-type construction: integrate both axis ODEs, then split
/// (Psi1(x_i), Psi2(y_j)) pointwise by the pairwise Iwasawa decomposition.
/// Points off the big cell are masked, not fatal; if every point fails a
/// runtime_error is thrown.
FrameField build_extended_framing(const PotentialPair& pot, const Grid& grid,
                                  int substeps = 16, int order = 16,
                                  double rcond_threshold = 1e-10);

struct ResidualStat {
    double max = 0.0;
    double mean = 0.0;
    double sum = 0.0;
    long count = 0;
    int argmax_i = -1;
    int argmax_j = -1;

    void add(double v, int i, int j);
    void finalize();
};

/// Per-point connection data alpha = Psi^{-1} dPsi measured by second-order
/// differences (one-sided at the boundary, masked points skipped).
struct MaurerCartanReport {
    Grid grid;
    std::vector<TruncatedLoop> alpha_x; // dx-part, exponents should be {0,1}
    std::vector<TruncatedLoop> alpha_y; // dy-part, exponents should be {-1,0}
    std::vector<std::uint8_t> valid;
    ResidualStat structure;     // norm outside the extended-framing exponent windows
    ResidualStat flatness;      // d alpha + 1/2 [alpha ^ alpha]
    ResidualStat admissibility; // d(*alpha_1) + [alpha_0 ^ *alpha_1]

    // k/m split of the lambda-free connection coefficients at one point.
    Mat2 alpha0_x(int i, int j) const;
    Mat2 alpha0_y(int i, int j) const;
    Mat2 alpha1_x(int i, int j) const; // m-part, lambda^1 of alpha_x
    Mat2 alpha1_y(int i, int j) const; // m-part, lambda^-1 of alpha_y
};

MaurerCartanReport maurer_cartan_form(const FrameField& field);

enum class ConnectionClass : std::int8_t {
    h_minus = -1, // anti-isothermic: imaginary principal curvatures
    h_zero = 0,   // repeated real principal curvatures
    h_plus = 1,   // isothermic: real distinct principal curvatures
    unknown = 127,
};

/// Sign of the classifier S(alpha) = <alpha'_m, alpha'_m><alpha''_m, alpha''_m>
/// per grid point; |S| <= zero_tol reports h_zero.
std::vector<ConnectionClass> classify_connection(const MaurerCartanReport& report,
                                                 double zero_tol = 1e-3);

struct ExtractedPotentials {
    PotentialPair pair; // spline-backed normalized potentials
    std::vector<double> xs, ys;
    std::vector<Mat2> eta1_samples; // lambda^1 coefficient of xi1 per x
    std::vector<Mat2> eta2_samples; // lambda^-1 coefficient of xi2 per y
    double structure_residual = 0.0; // leakage outside the normalized window
    double dependence_residual = 0.0; // y-dependence of Psi_plus, x of Psi_minus
};

/// Converse direction: Birkhoff-split Psi along the two axes and read the
/// normalized potentials off the one-sided factors (fourth-order
/// differencing). Throws runtime_error with the location if an axis point
/// is off the big cell.
ExtractedPotentials extract_normalized_potentials(const FrameField& field);

} // namespace tcmc
