#include "fbosc/quadrature.hpp"

#include <cmath>
#include <numbers>

namespace fbosc {

GaussLegendreRule gauss_legendre_rule(int point_count) {
    if (point_count < 1)
        throw std::invalid_argument("gauss_legendre_rule: point_count must be positive");

    GaussLegendreRule rule;
    rule.nodes.resize(point_count);
    rule.weights.resize(point_count);

    const int n = point_count;
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-like initial guess for the i-th root of P_n.
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            // Evaluate P_n and P_n' by the Legendre recurrence.
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15)
                break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = -x;
        rule.weights[i] = w;
        rule.nodes[n - 1 - i] = x;
        rule.weights[n - 1 - i] = w;
    }
    return rule;
}

namespace {

double composite_panels(const std::function<double(double)>& f, double a, double b,
                        int panel_count, const GaussLegendreRule& rule) {
    const double width = (b - a) / panel_count;
    double sum = 0.0;
    for (int p = 0; p < panel_count; ++p) {
        const double lo = a + p * width;
        const double mid = lo + 0.5 * width;
        double panel = 0.0;
        for (std::size_t i = 0; i < rule.nodes.size(); ++i)
            panel += rule.weights[i] * f(mid + 0.5 * width * rule.nodes[i]);
        sum += 0.5 * width * panel;
    }
    return sum;
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double rel_tol, double scale) {
    if (!(b > a))
        throw std::invalid_argument("integrate_adaptive: requires b > a");

    static const GaussLegendreRule rule = gauss_legendre_rule(16);

    constexpr int kMaxDoublings = 14;
    int panels = 4;
    double coarse = composite_panels(f, a, b, panels, rule);
    for (int i = 0; i < kMaxDoublings; ++i) {
        panels *= 2;
        const double fine = composite_panels(f, a, b, panels, rule);
        if (std::abs(fine - coarse) <= rel_tol * std::max(std::abs(fine), scale))
            return fine;
        coarse = fine;
    }
    throw QuadratureError("integrate_adaptive: panel doubling did not converge");
}

}  // namespace fbosc
