#include "fbosc/oracle.hpp"

#include "fbosc/wavefn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace fbosc {

double effective_potential(const ModelConfig& cfg, Channel c, double r) {
    const auto [a_sq, s] = effective_tension(cfg, c);
    const double kappa = c.kappa();
    return kappa * (kappa + 1.0) / (r * r) + a_sq * a_sq * r * r +
           s * a_sq * (2.0 * kappa - 1.0);
}

DiscretizedOperator discretize(const ModelConfig& cfg, Channel c, int point_count,
                               double r_max) {
    if (point_count < 16)
        throw std::invalid_argument("discretize: needs at least 16 points");
    if (!(r_max > 0.0))
        throw std::invalid_argument("discretize: r_max must be positive");
    effective_tension(cfg, c);  // rejects degenerate channels

    DiscretizedOperator op{c, 0.0, r_max, {}, 0.0};
    op.h = r_max / (point_count + 1);
    op.off_diagonal = -1.0 / (op.h * op.h);
    op.diagonal.resize(point_count);
    const double stencil = 2.0 / (op.h * op.h);
    for (int i = 0; i < point_count; ++i)
        op.diagonal[i] = stencil + effective_potential(cfg, c, (i + 1) * op.h);
    return op;
}

namespace {

// Gershgorin bounds for the tridiagonal matrix.
std::pair<double, double> spectral_bounds(const DiscretizedOperator& op) {
    const double radius = 2.0 * std::abs(op.off_diagonal);
    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
    for (const double d : op.diagonal) {
        lo = std::min(lo, d - radius);
        hi = std::max(hi, d + radius);
    }
    return {lo, hi};
}

}  // namespace

int sturm_count_below(const DiscretizedOperator& op, double x) {
    const double b_sq = op.off_diagonal * op.off_diagonal;
    // Pivot floor in the spirit of LAPACK's pivmin: keeps the LDL^T count
    // monotone when a pivot lands on zero.
    const double pivot_floor = std::numeric_limits<double>::min() * 1e16;
    int count = 0;
    double q = 1.0;
    for (int i = 0; i < op.size(); ++i) {
        double d = op.diagonal[i] - x - (i > 0 ? b_sq / q : 0.0);
        if (d < 0.0)
            ++count;
        if (std::abs(d) < pivot_floor)
            d = -pivot_floor;
        q = d;
    }
    return count;
}

std::vector<double> lowest_eigenvalues_fixed_h(const DiscretizedOperator& op, int k) {
    if (k < 1)
        throw std::invalid_argument("lowest_eigenvalues: k must be positive");
    if (k >= op.size())
        throw std::invalid_argument("lowest_eigenvalues: k must be well below the matrix size");

    const auto [glo, ghi] = spectral_bounds(op);
    constexpr int kMaxIter = 200;

    std::vector<double> eigenvalues(k);
    for (int j = 1; j <= k; ++j) {
        double lo = glo, hi = ghi;
        int iter = 0;
        for (;;) {
            // Absolute tolerance 1e-10 at the scale of the bracketed
            // eigenvalue itself, not of the (h^-2 sized) matrix norm.
            const double tol =
                1e-10 * std::max(1.0, std::min(std::abs(lo), std::abs(hi)));
            if (hi - lo <= tol)
                break;
            if (++iter > kMaxIter)
                throw BisectionError(lo, hi);
            const double mid = 0.5 * (lo + hi);
            if (sturm_count_below(op, mid) >= j)
                hi = mid;
            else
                lo = mid;
        }
        eigenvalues[j - 1] = 0.5 * (lo + hi);
    }
    return eigenvalues;
}

std::vector<double> lowest_eigenvector(const DiscretizedOperator& op, double eigenvalue) {
    const int n = op.size();
    const double b = op.off_diagonal;

    // Shifted inverse iteration with a Thomas solve; the near-singular solve
    // is exactly what drives convergence onto the eigenvector.
    std::vector<double> v(n), diag(n), rhs(n);
    for (int i = 0; i < n; ++i)
        v[i] = std::sin((i + 1) * 3.14159265358979323846 / (n + 1));

    const double floor_pivot = 1e-300;
    for (int sweep = 0; sweep < 4; ++sweep) {
        for (int i = 0; i < n; ++i) {
            diag[i] = op.diagonal[i] - eigenvalue;
            rhs[i] = v[i];
        }
        // Forward elimination.
        for (int i = 1; i < n; ++i) {
            double pivot = diag[i - 1];
            if (std::abs(pivot) < floor_pivot)
                pivot = pivot < 0 ? -floor_pivot : floor_pivot;
            const double m = b / pivot;
            diag[i] -= m * b;
            rhs[i] -= m * rhs[i - 1];
        }
        // Back substitution.
        double pivot = diag[n - 1];
        if (std::abs(pivot) < floor_pivot)
            pivot = pivot < 0 ? -floor_pivot : floor_pivot;
        v[n - 1] = rhs[n - 1] / pivot;
        for (int i = n - 2; i >= 0; --i) {
            pivot = diag[i];
            if (std::abs(pivot) < floor_pivot)
                pivot = pivot < 0 ? -floor_pivot : floor_pivot;
            v[i] = (rhs[i] - b * v[i + 1]) / pivot;
        }
        double norm = 0.0;
        for (const double x : v)
            norm += x * x;
        norm = std::sqrt(norm);
        for (double& x : v)
            x /= norm;
    }

    // Fix scale (unit L2 norm on the grid measure) and sign (positive at the
    // largest component).
    double scale = 1.0 / std::sqrt(op.h);
    int peak = 0;
    for (int i = 1; i < n; ++i)
        if (std::abs(v[i]) > std::abs(v[peak]))
            peak = i;
    if (v[peak] < 0.0)
        scale = -scale;
    for (double& x : v)
        x *= scale;
    return v;
}

OracleResult lowest_eigenvalues(const ModelConfig& cfg, Channel c, int k, int point_count,
                                double r_max) {
    const auto [a_sq, s] = effective_tension(cfg, c);
    if (r_max <= 0.0)
        r_max = truncation_radius(oscillator_eigenvalue(cfg, k, c), a_sq);

    const DiscretizedOperator coarse = discretize(cfg, c, point_count, r_max);
    const DiscretizedOperator fine = discretize(cfg, c, 2 * point_count + 1, r_max);
    const std::vector<double> e_h = lowest_eigenvalues_fixed_h(coarse, k);
    const std::vector<double> e_h2 = lowest_eigenvalues_fixed_h(fine, k);

    OracleResult out{c, {}, coarse.h, r_max, {}};
    out.eigenvalues.resize(k);
    out.error_estimates.resize(k);
    for (int i = 0; i < k; ++i) {
        // O(h^2) scheme: Richardson step cancels the leading error term.
        out.eigenvalues[i] = (4.0 * e_h2[i] - e_h[i]) / 3.0;
        const double est = std::abs(e_h2[i] - e_h[i]) / 3.0;
        out.error_estimates[i] =
            std::max(est, 1e-16 * (1.0 + std::abs(out.eigenvalues[i])));
    }
    return out;
}

VerificationReport verify_level(const ModelConfig& cfg, int n, Channel c, int point_count) {
    const auto [a_sq, s] = effective_tension(cfg, c);
    const double analytic = oscillator_eigenvalue(cfg, n, c);
    const OracleResult oracle = lowest_eigenvalues(cfg, c, n + 1, point_count);
    const double numeric = oracle.eigenvalues[n];
    const double abs_err = std::abs(analytic - numeric);
    const double tolerance = std::max(1e-6 * analytic, 1e-6 * a_sq);
    return {n, c, analytic, numeric, abs_err, tolerance, abs_err <= tolerance};
}

}  // namespace fbosc
