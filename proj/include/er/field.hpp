#pragma once

#include <complex>
#include <string>
#include <vector>

#include "er/errors.hpp"

namespace er::field {

struct GridSpec {
    double x_min = 0.0, x_max = 0.0;
    double y_min = 0.0, y_max = 0.0;
    int nx = 0, ny = 0; // node counts, >= 2 each
};

// Rectangular grid of complex amplitudes; lengths in units of L. Storage is
// row-major with y fastest: index(i, j) = i * ny + j.
struct GridField {
    int nx = 0, ny = 0;
    double x0 = 0.0, y0 = 0.0;
    double hx = 0.0, hy = 0.0;
    std::vector<std::complex<double>> psi;
    std::vector<int> region; // region index, -1 where no region applies
    double alpha = 0.0, nu = 0.0;
    std::string gauge = "A=(-Hy,0,0)";

    double x(int i) const { return x0 + i * hx; }
    double y(int j) const { return y0 + j * hy; }
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * ny + j;
    }
    const std::complex<double>& at(int i, int j) const { return psi[index(i, j)]; }
    bool valid(int i, int j) const { return region[index(i, j)] >= 0; }

    // Bilinear interpolation of psi; throws DomainError outside the grid.
    std::complex<double> interpolate(double x, double y) const;
};

// Gauge-invariant vector potential on grid nodes, units of H L.
struct QField {
    std::vector<double> qx, qy;
    std::vector<bool> valid; // false where a needed neighbor is masked
};

struct CirculationResult {
    double circulation = 0.0;   // closed-loop integral of Q . dl, units H L^2
    int winding = 0;            // phase winding of psi around the loop
    double winding_raw = 0.0;   // before rounding
    double enclosed_flux = 0.0; // H x polygon area, units H L^2
    double identity_residual = 0.0; // circulation - flux - 2 pi w / nu
    double circulation_flux_quanta = 0.0; // circulation / Phi0
};

struct Loop {
    std::vector<double> x, y; // closed implicitly (last connects to first)
};

Loop circle_loop(double cx, double cy, double radius, int points = 64);

// Semiclassical wave function psi = exp(-nu sigma_k) on the grid; nodes
// outside the reflectionless regions are masked (psi = 0, region = -1).
GridField assemble_field(const GridSpec& spec, double alpha, double nu);

// Q = A + H l^2 grad chi via centered differences of the phase of psi,
// wrapped per edge. In the grid units Q/(H L) = (-y + chi_x / nu, chi_y / nu).
QField gauge_invariant_Q(const GridField& field);

// Electric current direction, j proportional to -|psi|^2 Q.
void current_density(const GridField& field, const QField& q,
                     std::vector<double>& jx, std::vector<double>& jy);

// Winding by summing principal-value phase increments (adaptively refined to
// keep each step below pi/2) and circulation by midpoint quadrature of Q.
CirculationResult circulation(const GridField& field, const Loop& loop);

} // namespace er::field
