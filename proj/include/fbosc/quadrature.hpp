#ifndef FBOSC_QUADRATURE_HPP
#define FBOSC_QUADRATURE_HPP

#include <functional>
#include <stdexcept>
#include <vector>

namespace fbosc {

class QuadratureError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1],
// computed by Newton iteration on the Legendre polynomial.
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

GaussLegendreRule gauss_legendre_rule(int point_count);

// Composite Gauss-Legendre integration of f over [a, b]. The panel count
// doubles until two successive refinements agree to
//   |I_fine - I_coarse| <= rel_tol * max(|I_fine|, scale);
// `scale` guards integrals whose true value is ~0 (e.g. orthogonality
// overlaps). Throws QuadratureError if the doubling limit is exhausted.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol = 1e-12, double scale = 0.0);

}  // namespace fbosc

#endif
