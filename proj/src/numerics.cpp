#include "er/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace er::num {

namespace {

// G7/K15 nodes and weights on [-1, 1]. Column 0: abscissa, 1: Gauss weight,
// 2: Kronrod weight. First row is the center node, the rest are +/- pairs.
constexpr double kNW[8][3] = {
    {0.000000000000000000, 0.417959183673469388, 0.209482141084727828},
    {0.405845151377397167, 0.381830050505118945, 0.190350578064785410},
    {0.741531185599394440, 0.279705391489276668, 0.140653259715525919},
    {0.949107912342758525, 0.129484966168869693, 0.063092092629978553},
    {0.207784955007898468, 0.0,                  0.204432940075298892},
    {0.586087235467691130, 0.0,                  0.169004726639267903},
    {0.864864423359769073, 0.0,                  0.104790010322250184},
    {0.991455371120812639, 0.0,                  0.022935322010529225},
};

struct PanelResult {
    double value;
    double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double m = 0.5 * (b - a);
    const double f0 = f(c);
    double g7 = kNW[0][1] * f0;
    double k15 = kNW[0][2] * f0;
    for (int i = 1; i < 8; ++i) {
        const double dx = m * kNW[i][0];
        const double fi = f(c + dx) + f(c - dx);
        g7 += kNW[i][1] * fi;
        k15 += kNW[i][2] * fi;
    }
    g7 *= m;
    k15 *= m;
    // Conservative estimate; the Kronrod refinement is usually far more
    // accurate than this, which buys safety margin for endpoint singularities.
    const double err = std::abs(k15 - g7) + 1e-300;
    return {k15, err};
}

} // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, double rel_tol, int max_intervals) {
    if (a == b) return 0.0;
    struct Interval {
        double a, b, value, error;
    };
    std::vector<Interval> stack;
    PanelResult whole = gk15(f, a, b);
    stack.push_back({a, b, whole.value, whole.error});
    double total = whole.value;
    double total_err = whole.error;
    int panels = 1;
    while (total_err > std::max(abs_tol, rel_tol * std::abs(total))) {
        if (panels >= max_intervals)
            throw NumericError("adaptive quadrature: interval budget exhausted");
        // Split the interval with the largest error estimate.
        auto worst = std::max_element(
            stack.begin(), stack.end(),
            [](const Interval& p, const Interval& q) { return p.error < q.error; });
        Interval iv = *worst;
        stack.erase(worst);
        const double mid = 0.5 * (iv.a + iv.b);
        PanelResult left = gk15(f, iv.a, mid);
        PanelResult right = gk15(f, mid, iv.b);
        total += left.value + right.value - iv.value;
        total_err += left.error + right.error - iv.error;
        stack.push_back({iv.a, mid, left.value, left.error});
        stack.push_back({mid, iv.b, right.value, right.error});
        ++panels;
    }
    // Fixed-order reduction: sum by interval position for reproducibility.
    std::sort(stack.begin(), stack.end(),
              [](const Interval& p, const Interval& q) { return p.a < q.a; });
    double sum = 0.0;
    for (const Interval& iv : stack) sum += iv.value;
    return sum;
}

double find_root(const std::function<double(double)>& f, double a, double b,
                 double tol, int max_iter) {
    double fa = f(a);
    double fb = f(b);
    if (fa == 0.0) return a;
    if (fb == 0.0) return b;
    if ((fa > 0.0) == (fb > 0.0))
        throw DomainError("find_root: endpoints do not bracket a root");
    for (int it = 0; it < max_iter; ++it) {
        // Secant proposal, clipped to the bracket interior.
        double x = b - fb * (b - a) / (fb - fa);
        const double mid = 0.5 * (a + b);
        if (!(x > std::min(a, b) && x < std::max(a, b))) x = mid;
        // Alternate with bisection to guarantee bracket shrinkage.
        if (it % 2 == 1) x = mid;
        const double fx = f(x);
        if (fx == 0.0 || std::abs(b - a) < tol) return x;
        if ((fx > 0.0) == (fa > 0.0)) {
            a = x;
            fa = fx;
        } else {
            b = x;
            fb = fx;
        }
    }
    return 0.5 * (a + b);
}

int tridiag_count_below(const std::vector<double>& diag,
                        const std::vector<double>& offdiag, double x) {
    // Sturm sequence via the LDL^T pivot recurrence.
    const std::size_t n = diag.size();
    int count = 0;
    double d = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double e2 = (i == 0) ? 0.0 : offdiag[i - 1] * offdiag[i - 1];
        d = diag[i] - x - e2 / d;
        if (d == 0.0) d = 1e-300;
        if (d < 0.0) ++count;
    }
    return count;
}

std::vector<double> tridiag_eigenvalues(const std::vector<double>& diag,
                                        const std::vector<double>& offdiag,
                                        int first, int last, double tol) {
    // Gershgorin bounds.
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    const std::size_t n = diag.size();
    for (std::size_t i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(offdiag[i - 1]);
        if (i + 1 < n) r += std::abs(offdiag[i]);
        lo = std::min(lo, diag[i] - r);
        hi = std::max(hi, diag[i] + r);
    }
    std::vector<double> out;
    for (int k = first; k <= last; ++k) {
        double a = lo, b = hi;
        while (b - a > tol * std::max(1.0, std::abs(a) + std::abs(b))) {
            const double mid = 0.5 * (a + b);
            if (tridiag_count_below(diag, offdiag, mid) > k)
                b = mid;
            else
                a = mid;
        }
        out.push_back(0.5 * (a + b));
    }
    return out;
}

} // namespace er::num
