#include "er/bounce.hpp"

#include <cmath>

#include "er/hjsolver.hpp"
#include "er/numerics.hpp"

namespace er::bounce {

namespace {

constexpr double kHalfPi = 1.57079632679489661923;

void require_alpha(double alpha) {
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
}
void require_nu(double nu) {
    if (!(nu > 0.0)) throw DomainError("nu must be positive");
}

// Dimensionless wall potential u(-i eta)/|E| and its eta-derivative.
struct Wall {
    double ratio;
    double alpha;
    int n4; // 4N
    double value(double eta) const {
        return ratio * std::pow(eta / alpha, n4);
    }
    double derivative(double eta) const {
        return ratio * n4 / alpha * std::pow(eta / alpha, n4 - 1);
    }
};

// Conservation law: eta_dot^2 = f(eta) = eta (eta + 2) - wall(eta).
double conservation_rhs(double eta, const Wall& w) {
    return eta * (eta + 2.0) - w.value(eta);
}

double find_turning_point(const Wall& w, double tol) {
    // First zero of f beyond eta = 0; f starts positive (f ~ 2 eta).
    double lo = 1e-12;
    double hi = lo;
    double step = w.alpha / 16.0;
    bool bracketed = false;
    while (hi < 1e6) {
        hi = lo + step;
        if (conservation_rhs(hi, w) <= 0.0) {
            bracketed = true;
            break;
        }
        lo = hi;
        step *= 1.5;
    }
    if (!bracketed)
        throw PhysicsError("no bounce: wall too weak, no real turning point");
    return num::find_root([&](double e) { return conservation_rhs(e, w); }, lo,
                          hi, tol);
}

} // namespace

double transverse_integral(double alpha) {
    require_alpha(alpha);
    const double s = std::sqrt(alpha * (2.0 + alpha));
    return 0.5 * ((alpha + 1.0) * s - std::acosh(alpha + 1.0));
}

double reduction_fraction(double alpha) {
    require_alpha(alpha);
    return transverse_integral(alpha) / std::sqrt(alpha * (2.0 + alpha));
}

double reduction_fraction_derivative(double alpha) {
    require_alpha(alpha);
    const double s2 = alpha * (2.0 + alpha);
    return 1.0 - transverse_integral(alpha) * (alpha + 1.0) / (s2 * std::sqrt(s2));
}

ActionBreakdown hard_wall_action(double alpha, double nu) {
    require_alpha(alpha);
    require_nu(nu);
    ActionBreakdown b;
    b.alpha = alpha;
    b.nu = nu;
    b.wkb_action = 4.0 * nu * std::sqrt(alpha * (2.0 + alpha));
    b.transverse_action = 4.0 * nu * transverse_integral(alpha);
    b.total_action = b.wkb_action - b.transverse_action;
    b.reduction_fraction = reduction_fraction(alpha);
    b.suppression = std::exp(-b.total_action);
    return b;
}

double find_alpha_R(double tolerance) {
    if (!(tolerance > 0.0)) throw DomainError("tolerance must be positive");
    return num::find_root([](double a) { return reduction_fraction(a) - 1.0; },
                          1.0, 2.5, tolerance);
}

double near_resonance_coefficient() {
    const double ar = find_alpha_R();
    return ar * reduction_fraction_derivative(ar);
}

double resonance_field(const core::PhysicalSetup& setup) {
    // Validates the setup as a side effect; H itself is not used.
    core::PhysicalSetup probe = setup;
    if (probe.field == 0.0) probe.field = 1.0;
    (void)core::derive_dimensionless(probe);
    const double ar = find_alpha_R();
    return setup.constants.c *
           std::sqrt(2.0 * setup.mass * setup.energy_magnitude) * ar /
           (setup.charge_magnitude * setup.wall_half_width);
}

NearResonance near_resonance_ratio(double alpha, double nu, int periods) {
    require_alpha(alpha);
    require_nu(nu);
    if (periods <= 0) throw DomainError("number of periods must be positive");
    const double ar = find_alpha_R();
    const ActionBreakdown b = hard_wall_action(alpha, nu);
    NearResonance r;
    r.coefficient = ar * reduction_fraction_derivative(ar);
    r.exact = std::exp(-periods * b.total_action);
    const double closeness = (ar - alpha) / ar; // equals (H_R - H)/H_R
    const double wkb_over_distance = 2.0 * nu * periods * hj::period(alpha);
    r.linearized = std::exp(-r.coefficient * closeness * wkb_over_distance);
    const double thr = core::kStrongInequalityThreshold;
    r.window_ok = closeness > 0.0 &&
                  (1.0 / b.wkb_action) <= thr * closeness && closeness <= thr;
    return r;
}

BounceResult integrate_bounce(double alpha, double nu, double wall_energy_ratio,
                              int wall_exponent, StepControl ctl) {
    require_alpha(alpha);
    require_nu(nu);
    if (!(wall_energy_ratio > 0.0)) throw DomainError("u0/|E| must be positive");
    if (wall_exponent < 1) throw DomainError("wall exponent N must be >= 1");
    const Wall wall{wall_energy_ratio, alpha, 4 * wall_exponent};
    const double eta_max = find_turning_point(wall, ctl.root_tol);

    // The root finder leaves a tiny residual at eta_max, which would shift
    // the square-root zero off the endpoint and wreck the substitution below.
    // Remove it with a weight that vanishes at eta = 0 (an exact root).
    const double residual = conservation_rhs(eta_max, wall);
    auto rhs = [&](double eta) {
        const double w = eta / eta_max;
        return conservation_rhs(eta, wall) - residual * w * w;
    };

    // Substitution eta = eta_max sin^2(theta) removes the square-root
    // singularities at both turning points.
    auto f_of_theta = [&](double th) {
        const double s = std::sin(th);
        return eta_max * s * s;
    };
    const double f_scale = eta_max * (eta_max + 2.0);
    auto dtau_dtheta = [&](double th) {
        const double eta = f_of_theta(th);
        const double f = std::max(rhs(eta), 0.0);
        const double jac = 2.0 * eta_max * std::sin(th) * std::cos(th);
        // Near the turning point, f is a difference of nearly equal terms and
        // its rounding noise (amplified by 1/sqrt(f)) defeats the quadrature;
        // switch to the finite analytic endpoint limits over a thin layer.
        if (th >= kHalfPi / 2.0 && f < 1e-8 * f_scale) {
            const double fp = -(2.0 * eta_max + 2.0 - wall.derivative(eta_max));
            return 2.0 * std::sqrt(eta_max / fp) * std::sin(th);
        }
        if (f == 0.0) return std::sqrt(2.0 * eta_max) * std::cos(th);
        return jac / std::sqrt(f);
    };
    auto speed_dtheta = [&](double th) {
        const double eta = f_of_theta(th);
        const double f = std::max(rhs(eta), 0.0);
        return 2.0 * eta_max * std::sin(th) * std::cos(th) * std::sqrt(f);
    };

    const double relief = num::integrate(speed_dtheta, 0.0, kHalfPi, 1e-13, 1e-12);

    BounceResult r;
    r.turning_point = eta_max;
    r.wall_energy_ratio = wall_energy_ratio;
    r.wall_exponent = wall_exponent;
    // transverse action = (2m/hbar) closed-loop int eta_dot^2 d tau
    //                   = 4 nu int_0^{eta_max} sqrt(f) d eta.
    r.transverse_action = 4.0 * nu * relief;
    r.wkb_action = 4.0 * nu * std::sqrt(alpha * (2.0 + alpha));
    r.total_action = r.wkb_action - r.transverse_action;

    // Trajectory samples over one full period, 0 -> eta_max -> 0.
    const int half = std::max(ctl.samples / 2, 8);
    std::vector<double> tau_half(half + 1), eta_half(half + 1);
    tau_half[0] = 0.0;
    eta_half[0] = 0.0;
    for (int i = 1; i <= half; ++i) {
        const double th0 = kHalfPi * (i - 1) / half;
        const double th1 = kHalfPi * i / half;
        // Cancellation in f near the turning point puts a ~1e-13 noise floor
        // under the integrand; do not ask the quadrature for more than that.
        tau_half[i] = tau_half[i - 1] + num::integrate(dtau_dtheta, th0, th1,
                                                       3e-12, 1e-9);
        eta_half[i] = f_of_theta(th1);
    }
    r.period = 2.0 * tau_half[half];
    r.tau.resize(2 * half + 1);
    r.eta.resize(2 * half + 1);
    for (int i = 0; i <= half; ++i) {
        r.tau[i] = tau_half[i];
        r.eta[i] = eta_half[i];
    }
    for (int i = 1; i <= half; ++i) {
        r.tau[half + i] = 2.0 * tau_half[half] - tau_half[half - i];
        r.eta[half + i] = eta_half[half - i];
    }
    r.tau.back() = r.period;
    return r;
}

double transverse_action_by_time_stepping(double alpha, double nu,
                                          double wall_energy_ratio,
                                          int wall_exponent, int steps) {
    require_alpha(alpha);
    require_nu(nu);
    const Wall wall{wall_energy_ratio, alpha, 4 * wall_exponent};
    const double eta_max = find_turning_point(wall, 1e-13);
    // Equation of motion d^2 eta/d tau^2 = eta + 1 - wall'(eta)/2, started at
    // the turning point and integrated until the velocity turns around at the
    // opposite (eta = 0) turning point. State: (eta, v, accumulated v^2 dt).
    auto accel = [&](double eta) { return eta + 1.0 - 0.5 * wall.derivative(eta); };
    double eta = eta_max;
    double v = 0.0;
    double acc = 0.0;
    // Rough period estimate sets the step size.
    const double h = 4.0 / steps;
    auto rk4 = [&](double& e, double& vv, double& s, double dt) {
        auto deriv = [&](double e_, double v_, double& de, double& dv, double& ds) {
            de = v_;
            dv = accel(e_);
            ds = v_ * v_;
        };
        double k1e, k1v, k1s, k2e, k2v, k2s, k3e, k3v, k3s, k4e, k4v, k4s;
        deriv(e, vv, k1e, k1v, k1s);
        deriv(e + 0.5 * dt * k1e, vv + 0.5 * dt * k1v, k2e, k2v, k2s);
        deriv(e + 0.5 * dt * k2e, vv + 0.5 * dt * k2v, k3e, k3v, k3s);
        deriv(e + dt * k3e, vv + dt * k3v, k4e, k4v, k4s);
        e += dt / 6.0 * (k1e + 2.0 * k2e + 2.0 * k3e + k4e);
        vv += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        s += dt / 6.0 * (k1s + 2.0 * k2s + 2.0 * k3s + k4s);
    };
    int it = 0;
    const int max_it = steps * 16;
    while (true) {
        const double v_prev = v;
        const double acc_prev = acc;
        const double eta_prev = eta;
        rk4(eta, v, acc, h);
        if (++it > max_it)
            throw NumericError("bounce time stepping failed to close the orbit");
        if (it > 4 && v >= 0.0) {
            // Velocity sign change marks the half period; interpolate back.
            const double frac = v_prev / (v_prev - v);
            acc = acc_prev + frac * (acc - acc_prev);
            eta = eta_prev + frac * (eta - eta_prev);
            break;
        }
    }
    // Full-period integral is twice the half-period one.
    return 2.0 * nu * 2.0 * acc;
}

} // namespace er::bounce
