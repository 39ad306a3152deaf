#include "er/hjsolver.hpp"

#include <cmath>
#include <string>

namespace er::hj {

namespace {

void require_alpha(double alpha) {
    if (!(alpha > 0.0)) throw DomainError("alpha must be positive");
}

// Antiderivative of sqrt(1 + t^2): Re sigma along y = 0 in region 0.
double axis_action(double x) {
    return 0.5 * (x * std::sqrt(1.0 + x * x) + std::asinh(x));
}

// Antiderivative of sqrt((eta+1)^2 - 1) at eta = alpha.
double wall_integral(double alpha) {
    const double s = std::sqrt(alpha * (2.0 + alpha));
    return 0.5 * ((alpha + 1.0) * s - std::acosh(alpha + 1.0));
}

} // namespace

double period(double alpha) {
    require_alpha(alpha);
    return 2.0 * std::sqrt(alpha * (2.0 + alpha));
}

double region_shift_constant(double alpha) {
    require_alpha(alpha);
    return period(alpha) - 2.0 * wall_integral(alpha);
}

std::optional<int> region_index(double x, double y, double alpha) {
    require_alpha(alpha);
    const double dx = period(alpha);
    // Regions centered at k Dx never extend past |x - k Dx| = Dx/2, so only
    // the nearest nonnegative k can contain the point.
    const long k = std::max(0l, std::lround(x / dx));
    const double u = x - static_cast<double>(k) * dx;
    const double r = std::sqrt(1.0 + u * u) - 1.0;
    if (r * r + y * y < alpha * alpha) return static_cast<int>(k);
    return std::nullopt;
}

bool strip_membership(double y, double alpha) {
    require_alpha(alpha);
    return y * y < alpha * alpha;
}

ComplexAction action(double x, double y, double alpha) {
    const auto k = region_index(x, y, alpha);
    if (!k)
        throw RegionError("point (" + std::to_string(x) + ", " + std::to_string(y) +
                          ") lies outside the reflectionless regions");
    const double u = x - static_cast<double>(*k) * period(alpha);
    ComplexAction a;
    a.region = *k;
    // sigma_x = sqrt(1+u^2) - iy with sigma_y = -iu: the root branch that
    // makes d sigma exact and matches sigma_x(0, y) = 1 - iy.
    a.sigma_x = {std::sqrt(1.0 + u * u), -y};
    a.sigma_y = {0.0, -u};
    const double shift = static_cast<double>(*k) * region_shift_constant(alpha);
    a.sigma = {axis_action(u) + shift, -u * y};
    return a;
}

double modulus_ratio(double x, double alpha, double nu) {
    if (!(nu > 0.0)) throw DomainError("nu must be positive");
    const ComplexAction a = action(x, 0.0, alpha);
    return std::exp(-nu * a.sigma.real());
}

double phase(double x, double y, double alpha, double nu) {
    if (!(nu > 0.0)) throw DomainError("nu must be positive");
    const ComplexAction a = action(x, y, alpha);
    return -nu * a.sigma.imag();
}

} // namespace er::hj
