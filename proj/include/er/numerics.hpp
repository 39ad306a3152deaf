#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "er/errors.hpp"

namespace er::num {

// Adaptive Gauss-Kronrod (G7/K15) quadrature on [a, b].
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-12, double rel_tol = 1e-12,
                 int max_intervals = 4000);

// Bracketing root finder (bisection with secant acceleration).
// Requires f(a) and f(b) of opposite sign.
double find_root(const std::function<double(double)>& f, double a, double b,
                 double tol = 1e-12, int max_iter = 200);

// Central first derivative, step h.
inline double central_derivative(const std::function<double(double)>& f,
                                 double x, double h) {
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

// Eigenvalues of a symmetric tridiagonal matrix by Sturm-sequence bisection.
// diag has n entries, offdiag n-1. Returns eigenvalues with index in
// [first, last] (0-based, ascending), each to absolute tolerance tol.
std::vector<double> tridiag_eigenvalues(const std::vector<double>& diag,
                                        const std::vector<double>& offdiag,
                                        int first, int last,
                                        double tol = 1e-13);

// Number of eigenvalues of the tridiagonal matrix strictly below x.
int tridiag_count_below(const std::vector<double>& diag,
                        const std::vector<double>& offdiag, double x);

} // namespace er::num
