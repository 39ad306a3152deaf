#pragma once

#include <string>
#include <vector>

#include "er/errors.hpp"
#include "er/field.hpp"

namespace er::effpot {

// Effective 1D potential along the tunneling direction, dimensionless
// (units of |E|, x in units of L) unless stated otherwise.
struct EffectivePotentialProfile {
    std::vector<double> x;
    std::vector<double> value;
    std::vector<bool> masked;    // node singularities / tan poles
    std::string provenance;      // "extracted-phase", "extracted-axis",
                                 // "analytic-tan", "piecewise-parabolic"
    std::vector<double> singular_points;
};

// Both extraction variants at y = 0 on a grid field:
//   phase route:  U = (1/nu^2) [ (d chi/dy)^2 - |psi|^{-1} d^2|psi|/dy^2 ]
//   axis route:   U = (1/nu^2) |psi(x,0)|^{-1} d^2|psi(x,0)|/dx^2 + E
// Derivatives use 5-point centered stencils; samples at density nodes are
// masked, not extrapolated.
struct ExtractionResult {
    EffectivePotentialProfile phase_route;
    EffectivePotentialProfile axis_route;
};
ExtractionResult extract_U(const field::GridField& grid, double eigenvalue);

// High-field analytic form (physical units, hbar = m = 1):
//   U(x) = (omega_c^2 a^2 / 4) [ 1 + sqrt(3) tan( a (x - x0) / (2 l^2) ) ].
// Samples within half a grid step of a tan pole are masked; the pole train
// (period 2 pi l^2 / a) is listed in singular_points.
EffectivePotentialProfile eval_U205(const std::vector<double>& x, double omega_c,
                                    double a, double l, double x0);

// Piecewise model of the near-resonance potential: parabolic segments
// (x - (k + 1/2) Dx)^2 bridged by square wells of width `well_width` and
// depth `well_depth` at the junctions.
EffectivePotentialProfile piecewise_parabolic_profile(double alpha,
                                                      double well_depth,
                                                      double well_width,
                                                      double x_min, double x_max,
                                                      int samples);

// Discrete levels of -K psi'' + U psi = E psi on the profile's uniform grid
// with Dirichlet ends, restricted to the window [e_min, e_max]. Masked
// samples must be bridged by the caller (error otherwise).
std::vector<double> levels_1d(const EffectivePotentialProfile& profile,
                              double kinetic_coefficient, double e_min,
                              double e_max);

} // namespace er::effpot
