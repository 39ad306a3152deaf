#include "er/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <Eigen/SparseLU>

#include "er/bounce.hpp"
#include "er/hjsolver.hpp"
#include "er/numerics.hpp"

namespace er::oracle {

namespace {

using Complex = std::complex<double>;
using Sparse = Eigen::SparseMatrix<Complex>;
using Triplet = Eigen::Triplet<Complex>;

void check_spec(const ProblemSpec& s) {
    if (!(s.nu > 0.0)) throw DomainError("nu must be positive");
    if (!(s.alpha > 0.0)) throw DomainError("alpha must be positive");
    if (!(s.u0_ratio > 0.0)) throw DomainError("u0/|E| must be positive");
    if (s.wall_exponent < 1) throw DomainError("wall exponent N must be >= 1");
    if (s.nx_cells < 8 || s.ny_cells < 8) throw DomainError("grid too small");
    if (s.x_extent_periods < 2.0)
        throw DomainError("x extent must cover at least two periods");
    if (!(s.y_margin > 0.0))
        throw DomainError("y extent must clear the walls (margin > 0)");
}

} // namespace

std::vector<Complex> DiscreteProblem::to_wavefunction(
    const Eigen::VectorXcd& v) const {
    // Undo the half-weight similarity: psi = sqrt(2) phi on the Robin row.
    std::vector<Complex> psi(static_cast<std::size_t>(nxn) * nyn);
    const double root2 = std::sqrt(2.0);
    for (int i = 0; i < nxn; ++i)
        for (int j = 0; j < nyn; ++j)
            psi[index(i, j)] = (i == 0 ? root2 : 1.0) * v[index(i, j)];
    return psi;
}

DiscreteProblem build_problem(const ProblemSpec& spec) {
    check_spec(spec);
    DiscreteProblem p;
    p.spec = spec;
    const double dx_period = hj::period(spec.alpha);
    p.x_extent = spec.x_extent_periods * dx_period;
    p.y_extent = spec.alpha * (1.0 + spec.y_margin);
    p.nxn = spec.nx_cells;               // Dirichlet node at x = X dropped
    p.nyn = spec.ny_cells - 1;           // Dirichlet nodes at y = +/-Y dropped
    p.hx = p.x_extent / spec.nx_cells;
    p.hy = 2.0 * p.y_extent / spec.ny_cells;

    const double magnetic_length = 1.0 / std::sqrt(spec.nu);
    const double core_scale = 1.0 / (spec.alpha * spec.nu);
    const double h_max = std::max(p.hx, p.hy);
    if (h_max * spec.min_nodes_per_scale > magnetic_length)
        throw ResolutionError("grid under-resolves the magnetic length l/L = " +
                              std::to_string(magnetic_length));
    if (h_max * spec.min_nodes_per_scale > core_scale)
        throw ResolutionError("grid under-resolves the vortex core scale delta/L = " +
                              std::to_string(core_scale));

    const double nu = spec.nu;
    const double tx = 1.0 / (nu * nu * p.hx * p.hx);
    const double ty = 1.0 / (nu * nu * p.hy * p.hy);
    const double robin = nu * spec.robin_scale;
    const double coupling = spec.magnetic ? nu : 0.0;
    const double root2 = std::sqrt(2.0);

    const std::size_t n = static_cast<std::size_t>(p.nxn) * p.nyn;
    std::vector<Triplet> trip;
    trip.reserve(5 * n);
    for (int i = 0; i < p.nxn; ++i) {
        for (int j = 0; j < p.nyn; ++j) {
            const std::size_t row = p.index(i, j);
            const double yj = p.y(j);
            const double wall =
                spec.u0_ratio * std::pow(yj / spec.alpha, 4 * spec.wall_exponent);
            const double diag_x = (i == 0) ? (2.0 - 2.0 * p.hx * robin) * tx
                                           : 2.0 * tx;
            trip.emplace_back(row, row, Complex(diag_x + 2.0 * ty + wall, 0.0));
            // Peierls hopping in x carries the gauge phase.
            const double theta = coupling * (yj + spec.gauge_shift) * p.hx;
            const Complex hop_x = -tx * std::exp(Complex(0.0, -theta));
            if (i + 1 < p.nxn) {
                const Complex h = (i == 0) ? root2 * hop_x : hop_x;
                trip.emplace_back(row, p.index(i + 1, j), h);
                trip.emplace_back(p.index(i + 1, j), row, std::conj(h));
            }
            if (j + 1 < p.nyn) {
                trip.emplace_back(row, p.index(i, j + 1), Complex(-ty, 0.0));
                trip.emplace_back(p.index(i, j + 1), row, Complex(-ty, 0.0));
            }
        }
    }
    p.matrix.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    p.matrix.setFromTriplets(trip.begin(), trip.end());
    p.matrix.makeCompressed();
    return p;
}

EigenSolution solve_ground(const DiscreteProblem& p, double shift, double tol,
                           int max_iterations) {
    const Eigen::Index n = p.matrix.rows();
    Sparse shifted = p.matrix;
    for (Eigen::Index k = 0; k < n; ++k)
        shifted.coeffRef(k, k) -= Complex(shift, 0.0);
    shifted.makeCompressed();

    Eigen::SparseLU<Sparse> lu;
    lu.analyzePattern(shifted);
    lu.factorize(shifted);
    if (lu.info() != Eigen::Success)
        throw NumericError("shift-invert factorization failed");

    // Deterministic all-ones start vector.
    Eigen::VectorXcd v = Eigen::VectorXcd::Constant(n, Complex(1.0, 0.0));
    v /= v.norm();

    EigenSolution sol;
    double lambda = shift;
    for (int it = 0; it < max_iterations; ++it) {
        Eigen::VectorXcd w = lu.solve(v);
        if (!w.allFinite()) throw NumericError("inverse iteration diverged");
        v = w / w.norm();
        const Eigen::VectorXcd bv = p.matrix * v;
        lambda = v.dot(bv).real(); // Hermitian Rayleigh quotient
        const double res = (bv - lambda * v).norm();
        sol.residual_history.push_back(res);
        sol.iterations = it + 1;
        if (res < tol * std::max(1.0, std::abs(lambda))) {
            sol.residual = res;
            break;
        }
        sol.residual = res;
    }
    if (sol.residual >= tol * std::max(1.0, std::abs(lambda))) {
        std::string hist;
        for (double r : sol.residual_history) hist += " " + std::to_string(r);
        throw NumericError("inverse iteration did not converge; residuals:" + hist);
    }
    sol.eigenvalue = lambda;

    // Normalize in the weighted discrete norm and fix the global phase so
    // psi(0, y=0) is real positive (deterministic output).
    std::vector<Complex> psi = p.to_wavefunction(v);
    double norm2 = 0.0;
    for (int i = 0; i < p.nxn; ++i) {
        const double w = (i == 0) ? 0.5 : 1.0;
        for (int j = 0; j < p.nyn; ++j)
            norm2 += w * std::norm(psi[p.index(i, j)]) * p.hx * p.hy;
    }
    const int j0 = p.spec.ny_cells / 2 - 1; // y = 0 row
    Complex anchor = psi[p.index(0, j0)];
    if (std::abs(anchor) == 0.0) anchor = Complex(1.0, 0.0);
    const Complex rotate = std::conj(anchor) / std::abs(anchor);
    const double scale = 1.0 / std::sqrt(norm2);
    for (auto& z : psi) z *= rotate * scale;

    field::GridField g;
    g.nx = p.nxn;
    g.ny = p.nyn;
    g.x0 = 0.0;
    g.y0 = -p.y_extent + p.hy;
    g.hx = p.hx;
    g.hy = p.hy;
    g.alpha = p.spec.alpha;
    g.nu = p.spec.nu;
    g.psi = std::move(psi);
    g.region.assign(g.psi.size(), -1);
    for (int i = 0; i < g.nx; ++i)
        for (int j = 0; j < g.ny; ++j)
            if (auto k = hj::region_index(g.x(i), g.y(j), g.alpha))
                g.region[g.index(i, j)] = *k;
    sol.grid = std::move(g);
    return sol;
}

EigenSolution solve_ground_self_consistent(ProblemSpec spec, int rounds,
                                           double shift, double tol) {
    if (rounds < 0) throw DomainError("rounds must be non-negative");
    EigenSolution sol = solve_ground(build_problem(spec), shift, tol);
    for (int r = 0; r < rounds; ++r) {
        const double next = std::sqrt(std::abs(sol.eigenvalue));
        if (std::abs(next - spec.robin_scale) < 1e-12) break;
        spec.robin_scale = next;
        sol = solve_ground(build_problem(spec), shift, tol);
    }
    return sol;
}

namespace {

// Five-point second derivative at interior offset.
double second_derivative_5pt(const std::vector<double>& f, int i, double h) {
    return (-f[i - 2] + 16.0 * f[i - 1] - 30.0 * f[i] + 16.0 * f[i + 1] -
            f[i + 2]) /
           (12.0 * h * h);
}

} // namespace

SemiclassicsReport compare_semiclassics(const EigenSolution& sol, double alpha,
                                        double nu) {
    const field::GridField& g = sol.grid;
    SemiclassicsReport rep;
    const double dx_period = hj::period(alpha);
    const double half_period = 0.5 * dx_period;
    // y = 0 grid row.
    int j0 = static_cast<int>(std::lround((0.0 - g.y0) / g.hy));
    std::vector<double> axis(g.nx);
    for (int i = 0; i < g.nx; ++i) axis[i] = std::abs(g.at(i, j0));

    // (a) Decay exponent in the region-0 interior: least-squares slope of
    // ln|psi| against -Re sigma(x, 0) = -(x sqrt(1+x^2) + asinh x)/2, the
    // region-0 axis action; the expected slope is nu. Fit the inner half of
    // the region: the law is asymptotic there, while drift corrections
    // accumulate toward the junction and the folded boundary row perturbs
    // the first few columns.
    {
        double sxx = 0.0, sxy = 0.0, sx = 0.0, sy = 0.0;
        int m = 0;
        for (int i = 0; i < g.nx; ++i) {
            const double x = g.x(i);
            if (x < 0.05 * half_period || x > 0.5 * half_period) continue;
            const double t =
                -0.5 * (x * std::sqrt(1.0 + x * x) + std::asinh(x));
            const double l = std::log(axis[i]);
            sx += t;
            sy += l;
            sxx += t * t;
            sxy += t * l;
            ++m;
        }
        const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        rep.slope_ratio = slope / nu;
        rep.decay_ok = std::abs(rep.slope_ratio - 1.0) <= 0.10;
    }

    // (b) First minimum of |psi(x, 0)| vs Dx/2, refined parabolically. If no
    // minimum exists in the expected window, take the first one anywhere in
    // the interior and report the (large) deviation instead of failing hard.
    {
        int imin = -1;
        for (int pass = 0; pass < 2 && imin < 0; ++pass) {
            const double lo = (pass == 0) ? 0.5 * half_period : 0.25 * half_period;
            const double hi = (pass == 0) ? 1.5 * half_period
                                          : g.x(g.nx - 3);
            for (int i = 2; i + 2 < g.nx; ++i) {
                const double x = g.x(i);
                if (x < lo || x > hi) continue;
                if (axis[i] < axis[i - 1] && axis[i] < axis[i + 1]) {
                    imin = i;
                    break;
                }
            }
        }
        if (imin < 0) {
            rep.first_node_x = std::numeric_limits<double>::quiet_NaN();
            rep.first_node_rel_error = std::numeric_limits<double>::infinity();
            rep.node_ok = false;
            rep.winding_ok = false;
            rep.curvature_at_node = 0.0;
            const int i_origin =
                std::max(2, static_cast<int>(std::lround(0.1 / g.hx)));
            std::vector<double> col(g.ny);
            for (int j = 0; j < g.ny; ++j) col[j] = std::abs(g.at(i_origin, j));
            rep.curvature_at_origin = second_derivative_5pt(col, j0, g.hy);
            rep.disjoining_ok = false;
        } else {
        const double l0 = std::log(axis[imin - 1]);
        const double l1 = std::log(axis[imin]);
        const double l2 = std::log(axis[imin + 1]);
        const double off = 0.5 * (l0 - l2) / (l0 - 2.0 * l1 + l2);
        rep.first_node_x = g.x(imin) + off * g.hx;
        rep.first_node_rel_error =
            std::abs(rep.first_node_x - half_period) / half_period;
        rep.node_ok = rep.first_node_rel_error <= 0.05;

        // (c) Disjoining sign pattern of d^2|psi|/dy^2 at y = 0.
        auto y_curvature = [&](int i) {
            std::vector<double> col(g.ny);
            for (int j = 0; j < g.ny; ++j) col[j] = std::abs(g.at(i, j));
            return second_derivative_5pt(col, j0, g.hy);
        };
        rep.curvature_at_node = y_curvature(imin);
        const int i_origin = std::max(2, static_cast<int>(std::lround(0.1 / g.hx)));
        rep.curvature_at_origin = y_curvature(i_origin);
        rep.disjoining_ok =
            rep.curvature_at_node > 0.0 && rep.curvature_at_origin < 0.0;

        // (d) Winding around the node.
        const double radius =
            std::min(0.3 * half_period, std::max(8.0 * g.hy, 0.1));
        const auto circ =
            field::circulation(g, field::circle_loop(rep.first_node_x, 0.0, radius));
        rep.node_winding = circ.winding;
        rep.winding_ok = std::abs(circ.winding) == 1;
        }
    }

    // (e) Per-period suppression vs exp(-A).
    {
        const double xp = dx_period;
        const int i = static_cast<int>(xp / g.hx);
        const double f = xp / g.hx - i;
        const double ln_at_period =
            (1.0 - f) * std::log(axis[i]) + f * std::log(axis[i + 1]);
        rep.measured_log_suppression = 2.0 * (ln_at_period - std::log(axis[0]));
        rep.predicted_log_suppression =
            -bounce::hard_wall_action(alpha, nu).total_action;
        rep.suppression_log_ratio =
            rep.measured_log_suppression / rep.predicted_log_suppression;
        rep.suppression_ok =
            rep.suppression_log_ratio >= 0.7 && rep.suppression_log_ratio <= 1.3;
    }
    return rep;
}

std::vector<ScanRow> resonance_scan(double nu, const std::vector<double>& alphas,
                                    ProblemSpec base) {
    std::vector<ScanRow> rows;
    for (double alpha : alphas) {
        if (!(alpha > 0.3 && alpha < 2.2))
            throw DomainError("scan alpha out of the supported range (0.3, 2.2)");
        ProblemSpec spec = base;
        spec.nu = nu;
        spec.alpha = alpha;
        const DiscreteProblem p = build_problem(spec); // revalidates resolution
        const EigenSolution sol = solve_ground(p);
        const SemiclassicsReport rep = compare_semiclassics(sol, alpha, nu);
        rows.push_back({alpha, rep.measured_log_suppression,
                        rep.predicted_log_suppression});
    }
    return rows;
}

Robin1DSolution solve_robin_1d(double nu, double x_extent, int cells) {
    if (!(nu > 0.0)) throw DomainError("nu must be positive");
    if (cells < 8) throw DomainError("grid too small");
    const int n = cells; // Dirichlet node at x = X dropped
    const double h = x_extent / cells;
    const double t = 1.0 / (nu * nu * h * h);
    std::vector<double> diag(n, 2.0 * t), off(n - 1, -t);
    diag[0] = (2.0 - 2.0 * h * nu) * t;
    off[0] = -std::sqrt(2.0) * t;
    const double lambda =
        num::tridiag_eigenvalues(diag, off, 0, 0, 1e-14).front();

    // Eigenvector by one tridiagonal inverse-iteration sweep (Thomas solve).
    std::vector<double> v(n, 1.0);
    for (int sweep = 0; sweep < 3; ++sweep) {
        std::vector<double> d(n), rhs(v);
        for (int i = 0; i < n; ++i) d[i] = diag[i] - lambda * (1.0 + 1e-12);
        for (int i = 1; i < n; ++i) {
            const double m = off[i - 1] / d[i - 1];
            d[i] -= m * off[i - 1];
            rhs[i] -= m * rhs[i - 1];
        }
        v[n - 1] = rhs[n - 1] / d[n - 1];
        for (int i = n - 2; i >= 0; --i)
            v[i] = (rhs[i] - off[i] * v[i + 1]) / d[i];
        double norm = 0.0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        for (double& x : v) x /= norm;
        if (v[0] < 0.0)
            for (double& x : v) x = -x;
    }
    Robin1DSolution sol;
    sol.eigenvalue = lambda;
    sol.h = h;
    sol.psi.resize(n);
    for (int i = 0; i < n; ++i) sol.psi[i] = (i == 0 ? std::sqrt(2.0) : 1.0) * v[i];
    return sol;
}

} // namespace er::oracle
