#include "er/field.hpp"

#include <cmath>

#include "er/hjsolver.hpp"

namespace er::field {

namespace {

constexpr double kPi = 3.14159265358979323846;

double wrap_pi(double a) {
    while (a > kPi) a -= 2.0 * kPi;
    while (a <= -kPi) a += 2.0 * kPi;
    return a;
}

struct Cell {
    int i, j;
    double fx, fy;
};

Cell locate(const GridField& g, double x, double y) {
    const double sx = (x - g.x0) / g.hx;
    const double sy = (y - g.y0) / g.hy;
    if (sx < 0.0 || sy < 0.0 || sx > g.nx - 1 || sy > g.ny - 1)
        throw DomainError("point outside the grid");
    int i = static_cast<int>(sx);
    int j = static_cast<int>(sy);
    if (i >= g.nx - 1) i = g.nx - 2;
    if (j >= g.ny - 1) j = g.ny - 2;
    return {i, j, sx - i, sy - j};
}

} // namespace

std::complex<double> GridField::interpolate(double px, double py) const {
    const Cell c = locate(*this, px, py);
    const auto v00 = at(c.i, c.j);
    const auto v10 = at(c.i + 1, c.j);
    const auto v01 = at(c.i, c.j + 1);
    const auto v11 = at(c.i + 1, c.j + 1);
    return v00 * (1.0 - c.fx) * (1.0 - c.fy) + v10 * c.fx * (1.0 - c.fy) +
           v01 * (1.0 - c.fx) * c.fy + v11 * c.fx * c.fy;
}

Loop circle_loop(double cx, double cy, double radius, int points) {
    Loop loop;
    for (int k = 0; k < points; ++k) {
        const double t = 2.0 * kPi * k / points;
        loop.x.push_back(cx + radius * std::cos(t));
        loop.y.push_back(cy + radius * std::sin(t));
    }
    return loop;
}

GridField assemble_field(const GridSpec& spec, double alpha, double nu) {
    if (spec.nx < 2 || spec.ny < 2 || !(spec.x_max > spec.x_min) ||
        !(spec.y_max > spec.y_min))
        throw DomainError("degenerate grid spec");
    if (!(alpha > 0.0) || !(nu > 0.0))
        throw DomainError("alpha and nu must be positive");
    GridField g;
    g.nx = spec.nx;
    g.ny = spec.ny;
    g.x0 = spec.x_min;
    g.y0 = spec.y_min;
    g.hx = (spec.x_max - spec.x_min) / (spec.nx - 1);
    g.hy = (spec.y_max - spec.y_min) / (spec.ny - 1);
    g.alpha = alpha;
    g.nu = nu;
    g.psi.assign(static_cast<std::size_t>(g.nx) * g.ny, {0.0, 0.0});
    g.region.assign(g.psi.size(), -1);
    for (int i = 0; i < g.nx; ++i) {
        for (int j = 0; j < g.ny; ++j) {
            const auto k = hj::region_index(g.x(i), g.y(j), alpha);
            if (!k) continue;
            const auto a = hj::action(g.x(i), g.y(j), alpha);
            g.psi[g.index(i, j)] = std::exp(-nu * a.sigma);
            g.region[g.index(i, j)] = *k;
        }
    }
    return g;
}

QField gauge_invariant_Q(const GridField& g) {
    QField q;
    const std::size_t n = g.psi.size();
    q.qx.assign(n, 0.0);
    q.qy.assign(n, 0.0);
    q.valid.assign(n, false);
    auto nonzero = [&](int i, int j) { return std::abs(g.at(i, j)) > 0.0; };
    for (int i = 1; i + 1 < g.nx; ++i) {
        for (int j = 1; j + 1 < g.ny; ++j) {
            if (!nonzero(i, j) || !nonzero(i + 1, j) || !nonzero(i - 1, j) ||
                !nonzero(i, j + 1) || !nonzero(i, j - 1))
                continue;
            // Per-edge wrapped phase differences keep chi local.
            const double dchi_x =
                wrap_pi(std::arg(g.at(i + 1, j) / g.at(i - 1, j))) / (2.0 * g.hx);
            const double dchi_y =
                wrap_pi(std::arg(g.at(i, j + 1) / g.at(i, j - 1))) / (2.0 * g.hy);
            const std::size_t id = g.index(i, j);
            q.qx[id] = -g.y(j) + dchi_x / g.nu;
            q.qy[id] = dchi_y / g.nu;
            q.valid[id] = true;
        }
    }
    return q;
}

void current_density(const GridField& g, const QField& q, std::vector<double>& jx,
                     std::vector<double>& jy) {
    const std::size_t n = g.psi.size();
    jx.assign(n, 0.0);
    jy.assign(n, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        if (!q.valid[k]) continue;
        const double rho = std::norm(g.psi[k]);
        jx[k] = -rho * q.qx[k];
        jy[k] = -rho * q.qy[k];
    }
}

namespace {

double interpolate_q(const GridField& g, const QField& q, bool want_x, double x,
                     double y) {
    const Cell c = locate(g, x, y);
    const std::vector<double>& comp = want_x ? q.qx : q.qy;
    const std::size_t i00 = g.index(c.i, c.j);
    const std::size_t i10 = g.index(c.i + 1, c.j);
    const std::size_t i01 = g.index(c.i, c.j + 1);
    const std::size_t i11 = g.index(c.i + 1, c.j + 1);
    if (!q.valid[i00] || !q.valid[i10] || !q.valid[i01] || !q.valid[i11])
        throw DomainError("loop crosses nodes without a valid Q value");
    return comp[i00] * (1.0 - c.fx) * (1.0 - c.fy) +
           comp[i10] * c.fx * (1.0 - c.fy) + comp[i01] * (1.0 - c.fx) * c.fy +
           comp[i11] * c.fx * c.fy;
}

} // namespace

CirculationResult circulation(const GridField& g, const Loop& loop) {
    if (loop.x.size() < 3 || loop.x.size() != loop.y.size())
        throw DomainError("loop must have at least three vertices");
    if (!(g.nu > 0.0)) throw DomainError("grid field lacks nu metadata");

    // Adaptive refinement: split segments until the per-step phase increment
    // is below pi/2 and the step is short relative to the grid spacing.
    std::vector<double> xs(loop.x), ys(loop.y);
    const double max_step = 2.0 * std::min(g.hx, g.hy);
    for (int pass = 0; pass < 24; ++pass) {
        bool changed = false;
        std::vector<double> nxs, nys;
        const std::size_t n = xs.size();
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t k1 = (k + 1) % n;
            nxs.push_back(xs[k]);
            nys.push_back(ys[k]);
            const double len = std::hypot(xs[k1] - xs[k], ys[k1] - ys[k]);
            const double p0 = std::arg(g.interpolate(xs[k], ys[k]));
            const double p1 = std::arg(g.interpolate(xs[k1], ys[k1]));
            if (std::abs(wrap_pi(p1 - p0)) >= kPi / 2.0 || len > max_step) {
                nxs.push_back(0.5 * (xs[k] + xs[k1]));
                nys.push_back(0.5 * (ys[k] + ys[k1]));
                changed = true;
            }
        }
        xs.swap(nxs);
        ys.swap(nys);
        if (!changed) break;
        if (pass == 23)
            throw NumericError("loop refinement failed to resolve the phase");
    }

    const QField q = gauge_invariant_Q(g);
    CirculationResult r;
    const std::size_t n = xs.size();
    double phase_sum = 0.0;
    double circ = 0.0;
    double area2 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t k1 = (k + 1) % n;
        const double p0 = std::arg(g.interpolate(xs[k], ys[k]));
        const double p1 = std::arg(g.interpolate(xs[k1], ys[k1]));
        phase_sum += wrap_pi(p1 - p0);
        const double mx = 0.5 * (xs[k] + xs[k1]);
        const double my = 0.5 * (ys[k] + ys[k1]);
        const double dx = xs[k1] - xs[k];
        const double dy = ys[k1] - ys[k];
        circ += interpolate_q(g, q, true, mx, my) * dx +
                interpolate_q(g, q, false, mx, my) * dy;
        area2 += xs[k] * ys[k1] - xs[k1] * ys[k];
    }
    r.winding_raw = phase_sum / (2.0 * kPi);
    r.winding = static_cast<int>(std::lround(r.winding_raw));
    r.circulation = circ;
    r.enclosed_flux = 0.5 * area2; // times H, in units H L^2
    r.identity_residual =
        r.circulation - r.enclosed_flux - 2.0 * kPi * r.winding / g.nu;
    r.circulation_flux_quanta = r.circulation * g.nu / kPi;
    return r;
}

} // namespace er::field
