#pragma once

#include <vector>

#include "er/core.hpp"
#include "er/errors.hpp"

namespace er::bounce {

// Decay exponent split, Eq-(21)-style: A = A_WKB (1 - I(alpha)).
struct ActionBreakdown {
    double alpha = 0.0;
    double nu = 0.0;
    double wkb_action = 0.0;        // 4 nu sqrt(alpha (2 + alpha))
    double transverse_action = 0.0; // 4 nu J(alpha)
    double total_action = 0.0;      // A = wkb - transverse
    double suppression = 0.0;       // exp(-A)
    double reduction_fraction = 0.0; // I(alpha) = J / sqrt(alpha(2+alpha))
};

// Periodic imaginary-time trajectory under the finite-N wall.
struct BounceResult {
    std::vector<double> tau;     // units 1/omega_c
    std::vector<double> eta;     // displacement, units L, eta >= 0
    double period = 0.0;         // T
    double turning_point = 0.0;  // eta_max
    double transverse_action = 0.0;
    double wkb_action = 0.0;
    double total_action = 0.0;
    double wall_energy_ratio = 0.0;
    int wall_exponent = 0;
};

// Near-resonance suppression, exact and linearized forms.
struct NearResonance {
    double exact = 0.0;       // exp(-R A(alpha))
    double linearized = 0.0;  // exp(-c (alphaR-alpha)/alphaR A_WKB(R Dx))
    double coefficient = 0.0; // c = alphaR I'(alphaR)
    bool window_ok = false;   // 1/A_WKB << (alphaR-alpha)/alphaR << 1
};

// Transverse relief integral J(alpha) = int_0^alpha sqrt(eta(2+eta)) d eta,
// closed form.
double transverse_integral(double alpha);

// I(alpha) = J(alpha) / sqrt(alpha (2 + alpha)); resonance at I = 1.
double reduction_fraction(double alpha);
double reduction_fraction_derivative(double alpha);

ActionBreakdown hard_wall_action(double alpha, double nu);

// Root of I(alpha) = 1, bracketed in [1.6, 1.7].
double find_alpha_R(double tolerance = 1e-12);

// c = alphaR I'(alphaR); the paper rounds this to 0.94.
double near_resonance_coefficient();

// H_R = c sqrt(2 m |E|) alphaR / (|e| a).
double resonance_field(const core::PhysicalSetup& setup);

NearResonance near_resonance_ratio(double alpha, double nu, int periods);

struct StepControl {
    int samples = 512;       // trajectory samples per period
    double root_tol = 1e-12; // turning-point bracketing tolerance
};

// Finite-N bounce from the conservation law
//   (d eta/d tau)^2 = eta (eta + 2) - (u0/|E|) (eta/alpha)^{4N}.
BounceResult integrate_bounce(double alpha, double nu, double wall_energy_ratio,
                              int wall_exponent, StepControl ctl = {});

// Cross-check route: explicit imaginary-time integration of the equation of
// motion from the turning point; returns the transverse action.
double transverse_action_by_time_stepping(double alpha, double nu,
                                          double wall_energy_ratio,
                                          int wall_exponent, int steps = 20000);

} // namespace er::bounce
