#include "tcmc/dpw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "tcmc/errors.hpp"

namespace tcmc {

Grid Grid::make(double x_min, double x_max, double y_min, double y_max, int nx,
                int ny) {
    Grid g{x_min, x_max, y_min, y_max, nx, ny};
    if (!(x_min < x_max) || !(y_min < y_max)) {
        throw std::invalid_argument("Grid: empty extent");
    }
    if (nx < 3 || ny < 3) {
        throw std::invalid_argument("Grid: nx and ny must be at least 3");
    }
    g.origin_i();
    g.origin_j();
    return g;
}

namespace {

int origin_index(double lo, double hi, double h, int n, const char* axis) {
    if (lo > 0.0 || hi < 0.0) {
        throw std::invalid_argument(std::string("Grid: origin not inside ") + axis +
                                    " range");
    }
    const int i = static_cast<int>(std::lround(-lo / h));
    if (i < 0 || i >= n || std::fabs(lo + i * h) > 1e-9 * std::max(1.0, hi - lo)) {
        throw std::invalid_argument(std::string("Grid: (0,0) is not a grid point on the ") +
                                    axis + " axis");
    }
    return i;
}

} // namespace

int Grid::origin_i() const { return origin_index(x_min, x_max, hx(), nx, "x"); }
int Grid::origin_j() const { return origin_index(y_min, y_max, hy(), ny, "y"); }

bool Grid::same_layout(const Grid& o) const {
    return nx == o.nx && ny == o.ny && x_min == o.x_min && x_max == o.x_max &&
           y_min == o.y_min && y_max == o.y_max;
}

double FrameField::failure_fraction() const {
    std::size_t bad = 0;
    for (auto f : failed) bad += (f != 0);
    return static_cast<double>(bad) / static_cast<double>(failed.size());
}

void ResidualStat::add(double v, int i, int j) {
    sum += v;
    ++count;
    if (v > max) {
        max = v;
        argmax_i = i;
        argmax_j = j;
    }
}

void ResidualStat::finalize() { mean = count > 0 ? sum / count : 0.0; }

TruncatedLoop loop_exponential(const TruncatedLoop& generator, double t,
                               double* tail_loss) {
    const int n = generator.order();
    double scale = std::fabs(t) * loop_norm(generator);
    int squarings = 0;
    while (scale > 0.5 && squarings < 64) {
        scale *= 0.5;
        ++squarings;
    }
    const TruncatedLoop x = generator * (t / std::ldexp(1.0, squarings));
    TruncatedLoop sum = TruncatedLoop::identity(n, generator.twisted());
    TruncatedLoop term = sum;
    double local = 0.0;
    for (int k = 1; k <= 40; ++k) {
        term = loop_multiply(term, x, &local) * (1.0 / k);
        sum = sum + term;
        if (loop_norm(term) < 1e-18 * std::max(1.0, loop_norm(sum))) break;
    }
    for (int s = 0; s < squarings; ++s) sum = loop_multiply(sum, sum, &local);
    if (tail_loss) *tail_loss += local;
    if (local > kTailLossBudget) throw truncation_overflow(local);
    return sum;
}

namespace {

// Assemble a sampled potential value into a working loop, validating the
// degree window of Def. (1,0)-potentials live in exponents <= 1,
// (0,1)-potentials in exponents >= -1.
TruncatedLoop assemble_potential_loop(const LoopTerms& terms, Axis axis, int order,
                                      double coord) {
    TruncatedLoop a(order, true);
    for (const auto& [k, c] : terms) {
        const bool ok = (axis == Axis::x) ? (k <= 1) : (k >= -1);
        if (!ok) {
            throw std::invalid_argument(
                "potential exponent " + std::to_string(k) + " outside the " +
                (axis == Axis::x ? "(1,0)" : "(0,1)") + " window at coordinate " +
                std::to_string(coord));
        }
        if (!a.in_window(k)) {
            throw std::invalid_argument("potential exponent exceeds truncation order");
        }
        if (!(std::isfinite(c.a11) && std::isfinite(c.a12) && std::isfinite(c.a21) &&
              std::isfinite(c.a22))) {
            throw std::invalid_argument("potential coefficient not finite at coordinate " +
                                        std::to_string(coord));
        }
        a.coeff(k) += c;
    }
    return a;
}

// One RK4 step of d Psi/ds = Psi xi(s).
TruncatedLoop rk4_step(const TruncatedLoop& psi, Axis axis, const PotentialPair& pot,
                       double s, double h, int order, double* tail) {
    const auto& f = (axis == Axis::x) ? pot.xi1 : pot.xi2;
    const TruncatedLoop a1 = assemble_potential_loop(f(s), axis, order, s);
    const TruncatedLoop a2 = assemble_potential_loop(f(s + 0.5 * h), axis, order, s);
    const TruncatedLoop a4 = assemble_potential_loop(f(s + h), axis, order, s);

    const TruncatedLoop k1 = loop_multiply(psi, a1, tail);
    const TruncatedLoop k2 = loop_multiply(psi + k1 * (0.5 * h), a2, tail);
    const TruncatedLoop k3 = loop_multiply(psi + k2 * (0.5 * h), a2, tail);
    const TruncatedLoop k4 = loop_multiply(psi + k3 * h, a4, tail);
    return psi + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
}

} // namespace

std::vector<TruncatedLoop> integrate_framing_axis(const PotentialPair& pot, Axis axis,
                                                  const Grid& grid, int substeps,
                                                  int order, double* tail_loss) {
    if (substeps < 1) throw std::invalid_argument("integrate_framing_axis: substeps >= 1");
    const int n = (axis == Axis::x) ? grid.nx : grid.ny;
    const int i0 = (axis == Axis::x) ? grid.origin_i() : grid.origin_j();
    const double h = (axis == Axis::x) ? grid.hx() : grid.hy();
    const double lo = (axis == Axis::x) ? grid.x_min : grid.y_min;

    std::vector<TruncatedLoop> out(static_cast<std::size_t>(n));
    out[static_cast<std::size_t>(i0)] = TruncatedLoop::identity(order, true);
    double local = 0.0;

    auto march = [&](int from, int to, int dir) {
        const double hs = dir * h / substeps;
        for (int i = from; i != to; i += dir) {
            TruncatedLoop psi = out[static_cast<std::size_t>(i)];
            const double s0 = lo + i * h;
            for (int s = 0; s < substeps; ++s) {
                psi = rk4_step(psi, axis, pot, s0 + s * hs, hs, order, &local);
                if (local > kTailLossBudget) throw truncation_overflow(local);
            }
            out[static_cast<std::size_t>(i + dir)] = psi;
        }
    };
    march(i0, n - 1, +1);
    march(i0, 0, -1);
    if (tail_loss) *tail_loss += local;
    return out;
}

namespace {

// Record the exact axis samples of a normalized potential (single exponent
// 1 resp. -1, m-valued); returns false when the potential is not in
// normalized form, in which case the exact-jet machinery stays off.
bool sample_normalized(const PotentialPair& pot, const Grid& grid,
                       std::vector<Mat2>& eta1, std::vector<Mat2>& eta2) {
    const auto single = [](const LoopTerms& terms, int expected, Mat2& out) {
        out = Mat2::zero();
        for (const auto& [k, c] : terms) {
            if (c.norm1() == 0.0) continue;
            if (k != expected) return false;
            out += c;
        }
        return true;
    };
    eta1.resize(static_cast<std::size_t>(grid.nx));
    eta2.resize(static_cast<std::size_t>(grid.ny));
    for (int i = 0; i < grid.nx; ++i) {
        if (!single(pot.xi1(grid.x(i)), 1, eta1[static_cast<std::size_t>(i)])) return false;
    }
    for (int j = 0; j < grid.ny; ++j) {
        if (!single(pot.xi2(grid.y(j)), -1, eta2[static_cast<std::size_t>(j)])) return false;
    }
    return true;
}

} // namespace

FrameField build_extended_framing(const PotentialPair& pot, const Grid& grid,
                                  int substeps, int order, double rcond_threshold) {
    FrameField field;
    field.grid = Grid::make(grid.x_min, grid.x_max, grid.y_min, grid.y_max, grid.nx,
                            grid.ny);
    field.order = order;
    field.H = pot.H;

    double tail = 0.0;
    const std::vector<TruncatedLoop> psi1 =
        integrate_framing_axis(pot, Axis::x, grid, substeps, order, &tail);
    const std::vector<TruncatedLoop> psi2 =
        integrate_framing_axis(pot, Axis::y, grid, substeps, order, &tail);

    std::vector<TruncatedLoop> psi1_inv(psi1.size());
    for (std::size_t i = 0; i < psi1.size(); ++i) {
        psi1_inv[i] = loop_invert(psi1[i], &tail);
    }

    const std::size_t total = grid.size();
    field.frames.assign(total, TruncatedLoop(order, true));
    field.inverse_frames.assign(total, TruncatedLoop(order, true));
    field.failed.assign(total, 0);
    field.lplus_diag.assign(total, 1.0);
    field.split_residual.assign(total, 0.0);
    field.rcond.assign(total, 0.0);

    std::size_t failures = 0;
    for (int j = 0; j < grid.ny; ++j) {
        for (int i = 0; i < grid.nx; ++i) {
            const std::size_t idx = grid.index(i, j);
            try {
                double ptail = 0.0;
                const TruncatedLoop d = loop_multiply(
                    psi1_inv[static_cast<std::size_t>(i)],
                    psi2[static_cast<std::size_t>(j)], &ptail);
                const BirkhoffResult b = birkhoff_split(
                    d, SplitConvention::minus_plus, rcond_threshold, &ptail);
                const TruncatedLoop& l_minus = b.normalized_factor;
                const TruncatedLoop l_plus = loop_invert(b.complement_factor, &ptail);
                field.frames[idx] =
                    loop_multiply(psi1[static_cast<std::size_t>(i)], l_minus, &ptail);
                field.inverse_frames[idx] =
                    loop_multiply(loop_invert(l_minus, &ptail),
                                  psi1_inv[static_cast<std::size_t>(i)], &ptail);
                field.lplus_diag[idx] = l_plus.coeff(0).a11;
                field.rcond[idx] = b.condition_estimate;
                const TruncatedLoop other = loop_multiply(
                    psi2[static_cast<std::size_t>(j)], l_plus, &ptail);
                field.split_residual[idx] = loop_norm(field.frames[idx] - other);
                tail += ptail;
            } catch (const big_cell_error& e) {
                field.failed[idx] = 1;
                field.rcond[idx] = e.rcond;
                ++failures;
            }
        }
    }
    field.tail_loss = tail;
    if (failures == total) {
        throw std::runtime_error(
            "build_extended_framing: every grid point is off the big cell");
    }
    // The anchor of the whole construction; both axis solutions start from
    // the identity sample, so the origin splitting is exact.
    const std::size_t o = grid.index(grid.origin_i(), grid.origin_j());
    if (field.failed[o] == 0) {
        field.frames[o] = TruncatedLoop::identity(order, true);
        field.inverse_frames[o] = TruncatedLoop::identity(order, true);
    }

    field.has_potential_data = sample_normalized(pot, grid, field.eta1, field.eta2);
    return field;
}

namespace {

enum class StencilKind { centered, forward, backward, none };

// Second-order first derivative of the frame in direction `axis` at (i,j);
// returns the kind used so callers can skip invalid points.
StencilKind frame_derivative(const FrameField& f, int i, int j, Axis axis,
                             TruncatedLoop& out) {
    const Grid& g = f.grid;
    const int n = (axis == Axis::x) ? g.nx : g.ny;
    const int c = (axis == Axis::x) ? i : j;
    const double h = (axis == Axis::x) ? g.hx() : g.hy();
    auto at = [&](int t) -> const TruncatedLoop& {
        return (axis == Axis::x) ? f.frames[g.index(t, j)] : f.frames[g.index(i, t)];
    };
    auto ok = [&](int t) {
        return (axis == Axis::x) ? f.valid(t, j) : f.valid(i, t);
    };
    if (c - 1 >= 0 && c + 1 < n && ok(c - 1) && ok(c + 1)) {
        out = (at(c + 1) - at(c - 1)) * (1.0 / (2.0 * h));
        return StencilKind::centered;
    }
    if (c + 2 < n && ok(c) && ok(c + 1) && ok(c + 2)) {
        out = (at(c) * (-3.0) + at(c + 1) * 4.0 - at(c + 2)) * (1.0 / (2.0 * h));
        return StencilKind::forward;
    }
    if (c - 2 >= 0 && ok(c) && ok(c - 1) && ok(c - 2)) {
        out = (at(c) * 3.0 - at(c - 1) * 4.0 + at(c - 2)) * (1.0 / (2.0 * h));
        return StencilKind::backward;
    }
    return StencilKind::none;
}

double window_leak(const TruncatedLoop& a, int lo, int hi) {
    double s = 0.0;
    for (int k = -a.order(); k <= a.order(); ++k) {
        if (k < lo || k > hi) s += a.coeff(k).norm1();
    }
    return s;
}

} // namespace

MaurerCartanReport maurer_cartan_form(const FrameField& field) {
    const Grid& g = field.grid;
    MaurerCartanReport rep;
    rep.grid = g;
    rep.alpha_x.assign(g.size(), TruncatedLoop(field.order, true));
    rep.alpha_y.assign(g.size(), TruncatedLoop(field.order, true));
    rep.valid.assign(g.size(), 0);

    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            if (!field.valid(i, j)) continue;
            const std::size_t idx = g.index(i, j);
            TruncatedLoop dx, dy;
            if (frame_derivative(field, i, j, Axis::x, dx) == StencilKind::none) continue;
            if (frame_derivative(field, i, j, Axis::y, dy) == StencilKind::none) continue;
            double tail = 0.0;
            rep.alpha_x[idx] = loop_multiply(field.inverse_frames[idx], dx, &tail);
            rep.alpha_y[idx] = loop_multiply(field.inverse_frames[idx], dy, &tail);
            rep.valid[idx] = 1;
            rep.structure.add(window_leak(rep.alpha_x[idx], 0, 1) +
                                  window_leak(rep.alpha_y[idx], -1, 0),
                              i, j);
        }
    }

    // Flatness and admissibility need derivatives of alpha itself: interior
    // points whose four neighbours carry valid connection data.
    for (int j = 1; j + 1 < g.ny; ++j) {
        for (int i = 1; i + 1 < g.nx; ++i) {
            const std::size_t idx = g.index(i, j);
            if (!rep.valid[idx] || !rep.valid[g.index(i - 1, j)] ||
                !rep.valid[g.index(i + 1, j)] || !rep.valid[g.index(i, j - 1)] ||
                !rep.valid[g.index(i, j + 1)]) {
                continue;
            }
            const TruncatedLoop dax_dy =
                (rep.alpha_x[g.index(i, j + 1)] - rep.alpha_x[g.index(i, j - 1)]) *
                (1.0 / (2.0 * g.hy()));
            const TruncatedLoop day_dx =
                (rep.alpha_y[g.index(i + 1, j)] - rep.alpha_y[g.index(i - 1, j)]) *
                (1.0 / (2.0 * g.hx()));
            double tail = 0.0;
            const TruncatedLoop bracket =
                loop_multiply(rep.alpha_x[idx], rep.alpha_y[idx], &tail) -
                loop_multiply(rep.alpha_y[idx], rep.alpha_x[idx], &tail);
            rep.flatness.add(loop_norm(day_dx - dax_dy + bracket), i, j);

            // d(*alpha_1) + [alpha_0 ^ *alpha_1] on the lambda-free parts.
            const Mat2 da1y_dx = (rep.alpha_y[g.index(i + 1, j)].coeff(-1) -
                                  rep.alpha_y[g.index(i - 1, j)].coeff(-1)) *
                                 (1.0 / (2.0 * g.hx()));
            const Mat2 da1x_dy = (rep.alpha_x[g.index(i, j + 1)].coeff(1) -
                                  rep.alpha_x[g.index(i, j - 1)].coeff(1)) *
                                 (1.0 / (2.0 * g.hy()));
            const Mat2 a0x = rep.alpha_x[idx].coeff(0);
            const Mat2 a0y = rep.alpha_y[idx].coeff(0);
            const Mat2 a1x = rep.alpha_x[idx].coeff(1);
            const Mat2 a1y = rep.alpha_y[idx].coeff(-1);
            const Mat2 r = da1y_dx + da1x_dy + commutator(a0x, a1y) + commutator(a0y, a1x);
            rep.admissibility.add(r.norm1(), i, j);
        }
    }
    rep.structure.finalize();
    rep.flatness.finalize();
    rep.admissibility.finalize();
    return rep;
}

Mat2 MaurerCartanReport::alpha0_x(int i, int j) const {
    const Mat2 c = alpha_x[grid.index(i, j)].coeff(0);
    return {c.a11, 0.0, 0.0, c.a22};
}
Mat2 MaurerCartanReport::alpha0_y(int i, int j) const {
    const Mat2 c = alpha_y[grid.index(i, j)].coeff(0);
    return {c.a11, 0.0, 0.0, c.a22};
}
Mat2 MaurerCartanReport::alpha1_x(int i, int j) const {
    const Mat2 c = alpha_x[grid.index(i, j)].coeff(1);
    return {0.0, c.a12, c.a21, 0.0};
}
Mat2 MaurerCartanReport::alpha1_y(int i, int j) const {
    const Mat2 c = alpha_y[grid.index(i, j)].coeff(-1);
    return {0.0, c.a12, c.a21, 0.0};
}

std::vector<ConnectionClass> classify_connection(const MaurerCartanReport& rep,
                                                 double zero_tol) {
    std::vector<ConnectionClass> out(rep.grid.size(), ConnectionClass::unknown);
    for (int j = 0; j < rep.grid.ny; ++j) {
        for (int i = 0; i < rep.grid.nx; ++i) {
            const std::size_t idx = rep.grid.index(i, j);
            if (!rep.valid[idx]) continue;
            const Mat2 ax = rep.alpha1_x(i, j);
            const Mat2 ay = rep.alpha1_y(i, j);
            const double s = lorentz_inner(ax, ax) * lorentz_inner(ay, ay);
            out[idx] = (std::fabs(s) <= zero_tol)
                           ? ConnectionClass::h_zero
                           : (s > 0.0 ? ConnectionClass::h_plus : ConnectionClass::h_minus);
        }
    }
    return out;
}

namespace {

// Fourth-order first derivative of a sequence of loops (coefficient-wise).
TruncatedLoop deriv4(const std::vector<TruncatedLoop>& f, int i, double h) {
    const int n = static_cast<int>(f.size());
    const double s = 1.0 / (12.0 * h);
    auto L = [&](int t) -> const TruncatedLoop& { return f[static_cast<std::size_t>(t)]; };
    if (i >= 2 && i + 2 < n) {
        return (L(i - 2) - L(i - 1) * 8.0 + L(i + 1) * 8.0 - L(i + 2)) * s;
    }
    if (i == 0) {
        return (L(0) * (-25.0) + L(1) * 48.0 - L(2) * 36.0 + L(3) * 16.0 - L(4) * 3.0) * s;
    }
    if (i == 1) {
        return (L(0) * (-3.0) - L(1) * 10.0 + L(2) * 18.0 - L(3) * 6.0 + L(4)) * s;
    }
    if (i == n - 2) {
        return (L(n - 1) * 3.0 + L(n - 2) * 10.0 - L(n - 3) * 18.0 + L(n - 4) * 6.0 -
                L(n - 5)) * s;
    }
    return (L(n - 1) * 25.0 - L(n - 2) * 48.0 + L(n - 3) * 36.0 - L(n - 4) * 16.0 +
            L(n - 5) * 3.0) * s;
}

} // namespace

ExtractedPotentials extract_normalized_potentials(const FrameField& field) {
    const Grid& g = field.grid;
    if (g.nx < 5 || g.ny < 5) {
        throw std::invalid_argument(
            "extract_normalized_potentials: need at least 5 points per axis");
    }
    const int i0 = g.origin_i();
    const int j0 = g.origin_j();

    auto split_axis = [&](Axis axis, int line, SplitConvention conv,
                          std::vector<TruncatedLoop>& out) {
        const int n = (axis == Axis::x) ? g.nx : g.ny;
        out.resize(static_cast<std::size_t>(n));
        for (int t = 0; t < n; ++t) {
            const int i = (axis == Axis::x) ? t : line;
            const int j = (axis == Axis::x) ? line : t;
            if (!field.valid(i, j)) {
                throw std::runtime_error(
                    "extract_normalized_potentials: axis grid point (" +
                    std::to_string(i) + "," + std::to_string(j) +
                    ") is masked as a big-cell failure");
            }
            try {
                out[static_cast<std::size_t>(t)] =
                    birkhoff_split(field.frames[g.index(i, j)], conv).normalized_factor;
            } catch (const big_cell_error&) {
                throw std::runtime_error(
                    "extract_normalized_potentials: extraction failed, big-cell "
                    "failure at grid point (" +
                    std::to_string(i) + "," + std::to_string(j) + ")");
            }
        }
    };

    ExtractedPotentials out;
    out.pair.H = field.H;

    std::vector<TruncatedLoop> psi_plus, psi_minus;
    split_axis(Axis::x, j0, SplitConvention::plus_minus, psi_plus);
    split_axis(Axis::y, i0, SplitConvention::minus_plus, psi_minus);

    out.xs.resize(static_cast<std::size_t>(g.nx));
    out.ys.resize(static_cast<std::size_t>(g.ny));
    out.eta1_samples.resize(static_cast<std::size_t>(g.nx));
    out.eta2_samples.resize(static_cast<std::size_t>(g.ny));

    double structure = 0.0;
    for (int i = 0; i < g.nx; ++i) {
        out.xs[static_cast<std::size_t>(i)] = g.x(i);
        const TruncatedLoop xi = loop_multiply(
            loop_invert(psi_plus[static_cast<std::size_t>(i)]),
            deriv4(psi_plus, i, g.hx()));
        out.eta1_samples[static_cast<std::size_t>(i)] = xi.coeff(1);
        structure = std::max(structure, window_leak(xi, 1, 1));
    }
    for (int j = 0; j < g.ny; ++j) {
        out.ys[static_cast<std::size_t>(j)] = g.y(j);
        const TruncatedLoop xi = loop_multiply(
            loop_invert(psi_minus[static_cast<std::size_t>(j)]),
            deriv4(psi_minus, j, g.hy()));
        out.eta2_samples[static_cast<std::size_t>(j)] = xi.coeff(-1);
        structure = std::max(structure, window_leak(xi, -1, -1));
    }
    out.structure_residual = structure;

    // (4.17)/(4.20)-style dependence check: the plus factor must not vary
    // with y, the minus factor not with x. Measured on the neighbouring
    // grid lines when they are intact.
    double dep = 0.0;
    const bool rows_ok = j0 - 1 >= 0 && j0 + 1 < g.ny;
    const bool cols_ok = i0 - 1 >= 0 && i0 + 1 < g.nx;
    try {
        if (rows_ok) {
            std::vector<TruncatedLoop> up, down;
            split_axis(Axis::x, j0 + 1, SplitConvention::plus_minus, up);
            split_axis(Axis::x, j0 - 1, SplitConvention::plus_minus, down);
            for (int i = 0; i < g.nx; ++i) {
                dep = std::max(dep, loop_norm((up[static_cast<std::size_t>(i)] -
                                               down[static_cast<std::size_t>(i)]) *
                                              (1.0 / (2.0 * g.hy()))));
            }
        }
        if (cols_ok) {
            std::vector<TruncatedLoop> right, left;
            split_axis(Axis::y, i0 + 1, SplitConvention::minus_plus, right);
            split_axis(Axis::y, i0 - 1, SplitConvention::minus_plus, left);
            for (int j = 0; j < g.ny; ++j) {
                dep = std::max(dep, loop_norm((right[static_cast<std::size_t>(j)] -
                                               left[static_cast<std::size_t>(j)]) *
                                              (1.0 / (2.0 * g.hx()))));
            }
        }
    } catch (const std::runtime_error&) {
        dep = std::numeric_limits<double>::quiet_NaN(); // off-axis line failed
    }
    out.dependence_residual = dep;

    // Spline-backed potential functions through the samples.
    auto spline_of = [](const std::vector<double>& xs, const std::vector<Mat2>& m,
                        bool upper) {
        std::vector<double> v(m.size());
        for (std::size_t k = 0; k < m.size(); ++k) v[k] = upper ? m[k].a12 : m[k].a21;
        return CubicSpline(xs.front(), xs[1] - xs[0], std::move(v));
    };
    const CubicSpline s1_12 = spline_of(out.xs, out.eta1_samples, true);
    const CubicSpline s1_21 = spline_of(out.xs, out.eta1_samples, false);
    const CubicSpline s2_12 = spline_of(out.ys, out.eta2_samples, true);
    const CubicSpline s2_21 = spline_of(out.ys, out.eta2_samples, false);
    out.pair.name = "extracted";
    out.pair.xi1 = [s1_12, s1_21](double x) -> LoopTerms {
        return {{1, Mat2{0.0, s1_12(x), s1_21(x), 0.0}}};
    };
    out.pair.xi2 = [s2_12, s2_21](double y) -> LoopTerms {
        return {{-1, Mat2{0.0, s2_12(y), s2_21(y), 0.0}}};
    };
    return out;
}

} // namespace tcmc
