#include "fbosc/laguerre.hpp"

#include <stdexcept>

namespace fbosc {

double laguerre(int n, double alpha, double x) {
    if (n < 0)
        throw std::domain_error("laguerre: n must be nonnegative");
    if (!(alpha > -1.0))
        throw std::domain_error("laguerre: alpha must exceed -1");
    if (x < 0.0)
        throw std::domain_error("laguerre: x must be nonnegative");

    double prev = 1.0;  // L_0
    if (n == 0)
        return prev;
    double cur = 1.0 + alpha - x;  // L_1
    for (int k = 1; k < n; ++k) {
        const double next =
            ((2.0 * k + 1.0 + alpha - x) * cur - (k + alpha) * prev) / (k + 1.0);
        prev = cur;
        cur = next;
    }
    return cur;
}

double laguerre_derivative(int n, double alpha, double x) {
    if (n == 0)
        return 0.0;
    return -laguerre(n - 1, alpha + 1.0, x);
}

}  // namespace fbosc
