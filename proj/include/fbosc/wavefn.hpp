#ifndef FBOSC_WAVEFN_HPP
#define FBOSC_WAVEFN_HPP

#include "fbosc/spectrum.hpp"

#include <span>
#include <stdexcept>
#include <vector>

namespace fbosc {

// (E + m1)^2 = m2^2: the lower-component prefactor denominator vanishes.
// Cannot occur for levels built by make_level (E >= m1 + m2), only for
// hand-assembled data.
class SingularConfigurationError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// Strictly increasing positive sample points.
class RadialGrid {
public:
    explicit RadialGrid(std::vector<double> r_values);

    // count points r_i = i * (r_max / count), i = 1..count.
    static RadialGrid uniform(double r_max, int count);

    const std::vector<double>& r() const noexcept { return r_; }
    std::size_t size() const noexcept { return r_.size(); }
    double front() const noexcept { return r_.front(); }
    double back() const noexcept { return r_.back(); }

private:
    std::vector<double> r_;
};

// Quadrature/oracle truncation radius: classical turning point of the
// second-order equation plus 12 Gaussian decay lengths 1/a, so the
// neglected tail is ~exp(-72).
double truncation_radius(double cal_e_max, double a_sq);

// Upper radial function G = A exp(-a^2 r^2/2) (a^2 r^2)^{(l+1)/2} L_n^{l+1/2}(a^2 r^2).
double radial_g(double r, const Level& level, double norm_a);

// Lower radial function F built from the Laguerre recursion images of G;
// branches on the sign of kappa. Requires (E+m1)^2 != m2^2.
double radial_f(double r, const Level& level, double norm_a, double m1, double m2);

// A > 0 such that the quadrature of G^2 + F^2 over the truncated half-line
// equals 1 (phase convention: G, F real, A positive).
double normalization_constant(const Level& level, double m1, double m2,
                              double rel_tol = 1e-12);

struct GridSpec {
    int point_count = 600;
    double r_max = 0.0;  // 0 selects the truncation-radius rule
};

struct RadialSolution {
    Level level;
    RadialGrid grid;
    std::vector<double> g;
    std::vector<double> f;
    double norm_a;
    double norm_quadrature;  // recomputed integral of G^2+F^2 on an extended domain
    double norm_residual;    // |norm_quadrature - 1|
};

RadialSolution sample_radial_solution(const ModelConfig& cfg, int n, Channel c,
                                      const GridSpec& spec = {});

// Sup-norm residuals of the coupled first-order system evaluated on the
// solution grid, each divided by the sup of the largest constituent term of
// the system. Derivatives come from the Laguerre identity
// dL_n^a/dx = -L_{n-1}^{a+1}, never from differencing; the zero-order terms
// use the sampled arrays so corrupted samples are detected.
struct FirstOrderResidual {
    double g_equation;
    double f_equation;
};

FirstOrderResidual first_order_residual(const RadialSolution& solution, double m1, double m2);

// Relative sup-norm of (d^2/dr^2 - kappa(kappa+1)/r^2 - a^4 r^2
// - s a^2 (2 kappa - 1) + calE) G over the given radii, all derivatives
// analytic. Zero for exact levels up to roundoff.
double second_order_residual(const Level& level, std::span<const double> r_values);

// Normalized inner product of two levels of the same model,
// integral of (G_a G_b + F_a F_b) dr; delta_{n n'} for a common channel.
double radial_overlap(const ModelConfig& cfg, const Level& a, const Level& b);

}  // namespace fbosc

#endif
