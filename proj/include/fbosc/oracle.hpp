#ifndef FBOSC_ORACLE_HPP
#define FBOSC_ORACLE_HPP

#include "fbosc/spectrum.hpp"

#include <stdexcept>
#include <vector>

namespace fbosc {

class BisectionError : public std::runtime_error {
public:
    BisectionError(double lo, double hi)
        : std::runtime_error("bisection did not converge in bracket [" +
                             std::to_string(lo) + ", " + std::to_string(hi) + "]"),
          lo_(lo),
          hi_(hi) {}
    double lo() const noexcept { return lo_; }
    double hi() const noexcept { return hi_; }

private:
    double lo_, hi_;
};

// Effective potential of the second-order radial equation:
//   V_eff(r) = kappa(kappa+1)/r^2 + a^4 r^2 + s a^2 (2 kappa - 1).
double effective_potential(const ModelConfig& cfg, Channel c, double r);

// Symmetric tridiagonal central-difference form of -d^2/dr^2 + V_eff on the
// uniform grid r_i = i h, i = 1..N, h = r_max/(N+1), Dirichlet at both ends.
// The r = 0 boundary is exact (G ~ r^{l+1}); the r_max one is folded into
// the O(h^2) budget by the truncation-radius rule.
struct DiscretizedOperator {
    Channel channel;
    double h;
    double r_max;
    std::vector<double> diagonal;  // 2/h^2 + V_eff(r_i)
    double off_diagonal;           // -1/h^2
    int size() const noexcept { return static_cast<int>(diagonal.size()); }
};

DiscretizedOperator discretize(const ModelConfig& cfg, Channel c, int point_count,
                               double r_max);

// Number of eigenvalues strictly below x (Sturm sequence / LDL^T count).
int sturm_count_below(const DiscretizedOperator& op, double x);

// k smallest eigenvalues at fixed h, by Sturm counting + bisection to
// absolute tolerance 1e-10 * spectral scale.
std::vector<double> lowest_eigenvalues_fixed_h(const DiscretizedOperator& op, int k);

// Eigenvector for an isolated converged eigenvalue via shifted inverse
// iteration; normalized so that sum(v_i^2) h = 1 and v > 0 near its largest
// component.
std::vector<double> lowest_eigenvector(const DiscretizedOperator& op, double eigenvalue);

struct OracleResult {
    Channel channel;
    std::vector<double> eigenvalues;       // Richardson-extrapolated, ascending
    double h;                              // coarse spacing
    double r_max;
    std::vector<double> error_estimates;   // positive, |e_h - e_{h/2}|/3 floored
};

inline constexpr int kOracleDefaultPoints = 4000;

// Runs the discretization at h and h/2 and Richardson-extrapolates the k
// smallest eigenvalues. r_max = 0 selects the truncation-radius rule sized
// for n = k.
OracleResult lowest_eigenvalues(const ModelConfig& cfg, Channel c, int k,
                                int point_count = kOracleDefaultPoints, double r_max = 0.0);

struct VerificationReport {
    int n;
    Channel channel;
    double analytic_cal_e;
    double numeric_cal_e;
    double abs_err;
    double tolerance;
    bool pass;
};

// Compares the closed-form eigenvalue with the finite-difference one;
// pass iff |analytic - numeric| <= max(1e-6 * analytic, 1e-6 * a^2).
VerificationReport verify_level(const ModelConfig& cfg, int n, Channel c,
                                int point_count = kOracleDefaultPoints);

}  // namespace fbosc

#endif
