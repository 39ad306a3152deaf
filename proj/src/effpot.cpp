#include "er/effpot.hpp"

#include <algorithm>
#include <cmath>

#include "er/numerics.hpp"

namespace er::effpot {

namespace {

constexpr double kPi = 3.14159265358979323846;

double wrap_pi(double a) {
    while (a > kPi) a -= 2.0 * kPi;
    while (a <= -kPi) a += 2.0 * kPi;
    return a;
}

} // namespace

ExtractionResult extract_U(const field::GridField& g, double eigenvalue) {
    if (!(g.nu > 0.0)) throw DomainError("grid field lacks nu metadata");
    const int j0 = static_cast<int>(std::lround((0.0 - g.y0) / g.hy));
    if (std::abs(g.y(j0)) > 1e-9 * std::max(1.0, std::abs(g.y0)))
        throw ResolutionError("grid has no y = 0 line");
    if (j0 < 2 || j0 + 2 >= g.ny)
        throw ResolutionError("fewer than 5 y-nodes around y = 0");

    const int nx = g.nx;
    std::vector<double> axis(nx);
    for (int i = 0; i < nx; ++i) axis[i] = std::abs(g.at(i, j0));

    // Node mask: local dips of |psi(x,0)| relative to a window of width
    // ~ the vortex core scale (or 5 nodes, whichever is larger).
    const double core = (g.alpha > 0.0) ? 1.0 / (g.alpha * g.nu) : 0.0;
    const int w = std::max(3, static_cast<int>(std::lround(core / g.hx)));
    std::vector<bool> node_mask(nx, false);
    for (int i = 0; i < nx; ++i) {
        double local_max = 0.0;
        for (int k = std::max(0, i - w); k <= std::min(nx - 1, i + w); ++k)
            local_max = std::max(local_max, axis[k]);
        node_mask[i] = axis[i] < 0.1 * local_max;
    }

    const double inv_nu2 = 1.0 / (g.nu * g.nu);
    ExtractionResult out;
    out.phase_route.provenance = "extracted-phase";
    out.axis_route.provenance = "extracted-axis";
    for (int i = 2; i + 2 < nx; ++i) {
        const double x = g.x(i);
        const bool masked = node_mask[i] || node_mask[i - 1] || node_mask[i + 1];

        // Phase route: 5-point y-stencil at y = 0.
        double mod[5], chi[5];
        bool ok = true;
        for (int s = -2; s <= 2; ++s) {
            const auto z = g.at(i, j0 + s);
            mod[s + 2] = std::abs(z);
            if (mod[s + 2] == 0.0) ok = false;
            chi[s + 2] = ok ? wrap_pi(std::arg(z / g.at(i, j0))) : 0.0;
        }
        out.phase_route.x.push_back(x);
        out.axis_route.x.push_back(x);
        if (!ok || masked) {
            out.phase_route.value.push_back(0.0);
            out.phase_route.masked.push_back(true);
            out.axis_route.value.push_back(0.0);
            out.axis_route.masked.push_back(true);
            continue;
        }
        const double chi_y =
            (chi[0] - 8.0 * chi[1] + 8.0 * chi[3] - chi[4]) / (12.0 * g.hy);
        const double mod_yy = (-mod[0] + 16.0 * mod[1] - 30.0 * mod[2] +
                               16.0 * mod[3] - mod[4]) /
                              (12.0 * g.hy * g.hy);
        out.phase_route.value.push_back(
            inv_nu2 * (chi_y * chi_y - mod_yy / mod[2]));
        out.phase_route.masked.push_back(false);

        const double mod_xx = (-axis[i - 2] + 16.0 * axis[i - 1] -
                               30.0 * axis[i] + 16.0 * axis[i + 1] -
                               axis[i + 2]) /
                              (12.0 * g.hx * g.hx);
        out.axis_route.value.push_back(inv_nu2 * mod_xx / axis[i] + eigenvalue);
        out.axis_route.masked.push_back(false);
    }
    return out;
}

EffectivePotentialProfile eval_U205(const std::vector<double>& x, double omega_c,
                                    double a, double l, double x0) {
    if (!(omega_c > 0.0) || !(a > 0.0) || !(l > 0.0))
        throw DomainError("omega_c, a, l must be positive");
    EffectivePotentialProfile p;
    p.provenance = "analytic-tan";
    const double scale = omega_c * omega_c * a * a / 4.0;
    const double rate = a / (2.0 * l * l); // tan argument per unit length
    const double pole_period = kPi / rate; // 2 pi l^2 / a between poles... /2
    double step = x.size() > 1 ? std::abs(x[1] - x[0]) : pole_period / 100.0;
    for (double xi : x) {
        const double arg = rate * (xi - x0);
        // Distance to the nearest pole arg = pi/2 + k pi.
        const double d = std::abs(wrap_pi(2.0 * arg)) / 2.0; // 0 at poles
        const bool masked = (kPi / 2.0 - d) < 0.5 * rate * step;
        p.x.push_back(xi);
        p.value.push_back(masked ? 0.0
                                 : scale * (1.0 + std::sqrt(3.0) * std::tan(arg)));
        p.masked.push_back(masked);
    }
    if (!x.empty()) {
        const double lo = *std::min_element(x.begin(), x.end());
        const double hi = *std::max_element(x.begin(), x.end());
        const long k_lo = std::lround(std::floor((rate * (lo - x0) - kPi / 2.0) / kPi));
        for (long k = k_lo; ; ++k) {
            const double pole = x0 + (kPi / 2.0 + k * kPi) / rate;
            if (pole > hi) break;
            if (pole >= lo) p.singular_points.push_back(pole);
        }
    }
    return p;
}

EffectivePotentialProfile piecewise_parabolic_profile(double alpha,
                                                      double well_depth,
                                                      double well_width,
                                                      double x_min, double x_max,
                                                      int samples) {
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
    if (!(well_width > 0.0)) throw DomainError("well width must be positive");
    if (samples < 2 || !(x_max > x_min)) throw DomainError("degenerate profile range");
    const double dx_period = 2.0 * std::sqrt(alpha * (2.0 + alpha));
    EffectivePotentialProfile p;
    p.provenance = "piecewise-parabolic";
    for (int s = 0; s < samples; ++s) {
        const double x = x_min + (x_max - x_min) * s / (samples - 1);
        // Segment left ends sit at the junction points (k + 1/2) Dx.
        const double t = (x - 0.5 * dx_period) / dx_period;
        const double left = (std::floor(t) + 0.5) * dx_period;
        const double to_junction =
            std::min(x - left, left + dx_period - x); // distance to a junction
        p.x.push_back(x);
        if (to_junction < 0.5 * well_width)
            p.value.push_back(-well_depth);
        else
            p.value.push_back((x - left) * (x - left));
        p.masked.push_back(false);
    }
    return p;
}

std::vector<double> levels_1d(const EffectivePotentialProfile& profile,
                              double kinetic_coefficient, double e_min,
                              double e_max) {
    const std::size_t n = profile.x.size();
    if (n < 8) throw DomainError("profile too short for a level computation");
    if (!(kinetic_coefficient > 0.0))
        throw DomainError("kinetic coefficient must be positive");
    for (bool m : profile.masked)
        if (m) throw DomainError("profile has unmasked singular samples; bridge them first");
    const double h = profile.x[1] - profile.x[0];
    const double t = kinetic_coefficient / (h * h);
    // Interior nodes only (Dirichlet at both profile ends).
    std::vector<double> diag(n - 2), off(n - 3, -t);
    for (std::size_t i = 1; i + 1 < n; ++i)
        diag[i - 1] = 2.0 * t + profile.value[i];
    if (e_max < e_min) return {};
    const int below_min = num::tridiag_count_below(diag, off, e_min);
    const int below_max = num::tridiag_count_below(diag, off, e_max);
    if (below_max <= below_min) return {};
    return num::tridiag_eigenvalues(diag, off, below_min, below_max - 1, 1e-13);
}

} // namespace er::effpot
