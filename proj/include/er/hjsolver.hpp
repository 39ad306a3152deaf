#pragma once

#include <complex>
#include <optional>

#include "er/errors.hpp"

namespace er::hj {

// Complex action sigma and its gradient at a point strictly inside a
// reflectionless region. Lengths in units of the cyclotron length L.
struct ComplexAction {
    std::complex<double> sigma;
    std::complex<double> sigma_x;
    std::complex<double> sigma_y;
    int region = 0;
};

// Period of the region structure, units of L.
double period(double alpha);

// Region-connection constant C(alpha): the action increment per region
// crossing, sigma_k = sigma(x - k Dx, y) + k C. Vanishes at alpha_R.
double region_shift_constant(double alpha);

// Index k of the region strictly containing (x, y), or nullopt on/outside
// all boundaries. Regions are centered at x = k Dx, k >= 0.
std::optional<int> region_index(double x, double y, double alpha);

// Rectangular-wall degeneration of the membership test: the bounded
// region condition collapses to the strip y^2 < alpha^2, unbounded in x.
bool strip_membership(double y, double alpha);

// sigma_k and gradient; throws RegionError outside all regions.
ComplexAction action(double x, double y, double alpha);

// |psi(x, 0) / psi(0, 0)| = exp(-nu Re sigma_k(x, 0)).
double modulus_ratio(double x, double alpha, double nu);

// Phase chi = -nu Im sigma; odd in y, zero on y = 0 inside regions.
double phase(double x, double y, double alpha, double nu);

} // namespace er::hj
