#pragma once

#include <complex>
#include <vector>

#include <Eigen/SparseCore>

#include "er/errors.hpp"
#include "er/field.hpp"

namespace er::oracle {

// Dimensionless eigenproblem
//   -(1/nu^2) [ (d/dx - i nu y)^2 + d^2/dy^2 ] psi + u0r (y/alpha)^{4N} psi
//     = E psi,   E in units of |E|, target -1,
// on [0, X] x [-Y, Y] with the Robin condition (d/dx - i nu y) psi = -nu psi
// at x = 0 and Dirichlet truncation at x = X, y = +/- Y.
struct ProblemSpec {
    double nu = 4.0;
    double alpha = 1.0;
    double u0_ratio = 50.0;
    int wall_exponent = 4;
    int nx_cells = 384;
    int ny_cells = 256;
    double x_extent_periods = 2.0; // X = periods * Dx, must be >= 2
    double y_margin = 0.4;         // Y = alpha (1 + margin), margin > 0
    bool magnetic = true;          // false switches the gauge coupling off
    double gauge_shift = 0.0;      // y -> y + shift inside the coupling only
    double robin_scale = 1.0;      // Robin coefficient nu * robin_scale
    double min_nodes_per_scale = 8.0;
};

struct DiscreteProblem {
    ProblemSpec spec;
    int nxn = 0, nyn = 0; // interior node counts (x includes the Robin row)
    double hx = 0.0, hy = 0.0;
    double x_extent = 0.0, y_extent = 0.0;
    // Hermitian matrix after folding the Robin row in symmetrically
    // (half-weight boundary row, similarity-transformed).
    Eigen::SparseMatrix<std::complex<double>> matrix;

    double x(int i) const { return i * hx; }
    double y(int j) const { return -y_extent + (j + 1) * hy; }
    std::size_t index(int i, int j) const {
        return static_cast<std::size_t>(i) * nyn + j;
    }
    // Map a solver eigenvector back to wave-function samples.
    std::vector<std::complex<double>> to_wavefunction(
        const Eigen::VectorXcd& v) const;
};

struct EigenSolution {
    double eigenvalue = 0.0;
    field::GridField grid;
    double residual = 0.0;
    int iterations = 0;
    std::vector<double> residual_history;
};

struct SemiclassicsReport {
    double slope_ratio = 0.0;     // fitted decay exponent / nu
    double first_node_x = 0.0;
    double first_node_rel_error = 0.0;
    double curvature_at_node = 0.0;   // d^2|psi|/dy^2 at y = 0
    double curvature_at_origin = 0.0;
    int node_winding = 0;
    double measured_log_suppression = 0.0; // ln |psi(Dx)/psi(0)|^2
    double predicted_log_suppression = 0.0; // -A(alpha)
    double suppression_log_ratio = 0.0;
    bool decay_ok = false, node_ok = false, disjoining_ok = false,
         winding_ok = false, suppression_ok = false;
    bool all_ok() const {
        return decay_ok && node_ok && disjoining_ok && winding_ok &&
               suppression_ok;
    }
};

struct ScanRow {
    double alpha = 0.0;
    double measured_log_suppression = 0.0;
    double predicted_log_suppression = 0.0;
};

DiscreteProblem build_problem(const ProblemSpec& spec);

EigenSolution solve_ground(const DiscreteProblem& problem, double shift = -1.0,
                           double tol = 1e-10, int max_iterations = 200);

// Optional self-consistency on the Robin coefficient: replace |E| in the
// boundary condition by the computed |E1| and re-solve.
EigenSolution solve_ground_self_consistent(ProblemSpec spec, int rounds = 3,
                                           double shift = -1.0,
                                           double tol = 1e-10);

SemiclassicsReport compare_semiclassics(const EigenSolution& solution,
                                        double alpha, double nu);

std::vector<ScanRow> resonance_scan(double nu, const std::vector<double>& alphas,
                                    ProblemSpec base);

// Zero-field 1D Robin control problem, -(1/nu^2) psi'' = E psi with
// psi'(0) = -nu psi(0); the continuum ground state is exp(-nu x), E = -1.
struct Robin1DSolution {
    double eigenvalue = 0.0;
    std::vector<double> psi; // nodes x_i = i h, i = 0 .. n-1
    double h = 0.0;
};
Robin1DSolution solve_robin_1d(double nu, double x_extent, int cells);

} // namespace er::oracle
