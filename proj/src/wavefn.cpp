#include "fbosc/wavefn.hpp"

#include "fbosc/laguerre.hpp"
#include "fbosc/quadrature.hpp"

#include <algorithm>
#include <cmath>

namespace fbosc {

RadialGrid::RadialGrid(std::vector<double> r_values) : r_(std::move(r_values)) {
    if (r_.size() < 16)
        throw std::invalid_argument("RadialGrid: needs at least 16 points");
    if (!(r_.front() > 0.0))
        throw std::invalid_argument("RadialGrid: first point must be positive");
    for (std::size_t i = 1; i < r_.size(); ++i)
        if (!(r_[i] > r_[i - 1]))
            throw std::invalid_argument("RadialGrid: points must be strictly increasing");
}

RadialGrid RadialGrid::uniform(double r_max, int count) {
    if (!(r_max > 0.0))
        throw std::invalid_argument("RadialGrid::uniform: r_max must be positive");
    if (count < 16)
        throw std::invalid_argument("RadialGrid::uniform: needs at least 16 points");
    const double h = r_max / count;
    std::vector<double> r(count);
    for (int i = 0; i < count; ++i)
        r[i] = (i + 1) * h;
    return RadialGrid(std::move(r));
}

double truncation_radius(double cal_e_max, double a_sq) {
    if (!(a_sq > 0.0))
        throw std::invalid_argument("truncation_radius: a_sq must be positive");
    return std::sqrt(2.0 * std::max(cal_e_max, 0.0)) / a_sq + 12.0 / std::sqrt(a_sq);
}

namespace {

// G(r) = A e^{-x/2} x^p L_n^{l+1/2}(x) with x = a^2 r^2, p = (l+1)/2.
// Derivatives in r follow from d/dr = 2 a^2 r d/dx and the Laguerre
// derivative identity; W(x) collects the first x-derivative bracket.
struct UpperEval {
    double g, dg, d2g;
};

UpperEval eval_upper(double r, const Level& lv, double norm_a) {
    const int l = lv.channel.l();
    const int n = lv.n;
    const double alpha = l + 0.5;
    const double x = lv.a_sq * r * r;
    const double p = 0.5 * (l + 1);
    const double damp = std::exp(-0.5 * x);
    const double xp = std::pow(x, p);

    const double L = laguerre(n, alpha, x);
    const double dL = laguerre_derivative(n, alpha, x);
    const double d2L = n >= 2 ? laguerre(n - 2, alpha + 2.0, x) : 0.0;

    const double W = (p - 0.5 * x) * L + x * dL;
    const double dW = -0.5 * L + (p + 1.0 - 0.5 * x) * dL + x * d2L;

    UpperEval out;
    out.g = norm_a * damp * xp * L;
    out.dg = 2.0 * norm_a * damp * xp * W / r;
    out.d2g = 2.0 * lv.a_sq * norm_a * damp * std::pow(x, p - 1.0) *
              ((2.0 * p - 1.0 - x) * W + 2.0 * x * dW);
    return out;
}

// Lower-component prefactor 2 a E A / ((E+m1)^2 - m2^2).
double lower_prefactor(const Level& lv, double norm_a, double m1, double m2) {
    const double denom = (lv.energy + m1 - m2) * (lv.energy + m1 + m2);
    if (denom == 0.0)
        throw SingularConfigurationError("radial_f: (E+m1)^2 - m2^2 vanishes");
    return 2.0 * std::sqrt(lv.a_sq) * lv.energy * norm_a / denom;
}

// Bracket polynomial B(x) of the lower component and its x-derivative.
// kappa > 0: B = (1+s)(n+l+1/2) L_n^{l-1/2} + (1-s)(n+1) L_{n+1}^{l-1/2}
// kappa < 0: B = (1+s) L_n^{l+1/2} - 2 L_n^{l+3/2}
struct LowerBracket {
    double b, db, q;  // q = power of x in front
};

LowerBracket eval_lower_bracket(const Level& lv, double x) {
    const int l = lv.channel.l();
    const int n = lv.n;
    const double s = lv.sign;
    LowerBracket out;
    if (lv.channel.kappa() > 0) {
        out.q = 0.5 * l;
        const double alpha = l - 0.5;
        const double c0 = (1.0 + s) * (n + l + 0.5);
        const double c1 = (1.0 - s) * (n + 1);
        out.b = 0.0;
        out.db = 0.0;
        if (c0 != 0.0) {
            out.b += c0 * laguerre(n, alpha, x);
            out.db += c0 * laguerre_derivative(n, alpha, x);
        }
        if (c1 != 0.0) {
            out.b += c1 * laguerre(n + 1, alpha, x);
            out.db += c1 * laguerre_derivative(n + 1, alpha, x);
        }
    } else {
        out.q = 0.5 * (l + 2);
        const double alpha = l + 0.5;
        const double c0 = 1.0 + s;
        out.b = -2.0 * laguerre(n, alpha + 1.0, x);
        out.db = -2.0 * laguerre_derivative(n, alpha + 1.0, x);
        if (c0 != 0.0) {
            out.b += c0 * laguerre(n, alpha, x);
            out.db += c0 * laguerre_derivative(n, alpha, x);
        }
    }
    return out;
}

struct LowerEval {
    double f, df;
};

LowerEval eval_lower(double r, const Level& lv, double norm_a, double m1, double m2) {
    const double pref = lower_prefactor(lv, norm_a, m1, m2);
    const double x = lv.a_sq * r * r;
    const auto [b, db, q] = eval_lower_bracket(lv, x);
    const double damp = std::exp(-0.5 * x);
    const double xq = std::pow(x, q);
    LowerEval out;
    out.f = pref * damp * xq * b;
    out.df = 2.0 * pref * damp * xq * ((q - 0.5 * x) * b + x * db) / r;
    return out;
}

void require_radius(double r, const char* where) {
    if (!(r >= 0.0))
        throw std::invalid_argument(std::string(where) + ": r must be nonnegative");
}

}  // namespace

double radial_g(double r, const Level& level, double norm_a) {
    require_radius(r, "radial_g");
    if (r == 0.0)
        return 0.0;  // leading power r^{l+1}, l >= 0
    return eval_upper(r, level, norm_a).g;
}

double radial_f(double r, const Level& level, double norm_a, double m1, double m2) {
    require_radius(r, "radial_f");
    if (r == 0.0) {
        lower_prefactor(level, norm_a, m1, m2);  // still validate the denominator
        return 0.0;
    }
    return eval_lower(r, level, norm_a, m1, m2).f;
}

double normalization_constant(const Level& level, double m1, double m2, double rel_tol) {
    const double r_max = truncation_radius(level.cal_e, level.a_sq);
    lower_prefactor(level, 1.0, m1, m2);  // fail fast on singular configs
    const auto density = [&](double r) {
        const double g = radial_g(r, level, 1.0);
        const double f = radial_f(r, level, 1.0, m1, m2);
        return g * g + f * f;
    };
    const double total = integrate_adaptive(density, 0.0, r_max, rel_tol);
    if (!(total > 0.0) || !std::isfinite(total))
        throw QuadratureError("normalization_constant: non-positive norm integral");
    return 1.0 / std::sqrt(total);
}

RadialSolution sample_radial_solution(const ModelConfig& cfg, int n, Channel c,
                                      const GridSpec& spec) {
    const Level level = make_level(cfg, n, c);
    const double norm_a = normalization_constant(level, cfg.m1, cfg.m2);
    const double auto_r_max = truncation_radius(level.cal_e, level.a_sq);
    const double r_max = spec.r_max > 0.0 ? spec.r_max : auto_r_max;
    RadialGrid grid = RadialGrid::uniform(r_max, std::max(spec.point_count, 16));

    std::vector<double> g(grid.size()), f(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        g[i] = radial_g(grid.r()[i], level, norm_a);
        f[i] = radial_f(grid.r()[i], level, norm_a, cfg.m1, cfg.m2);
    }

    // Re-integrate on an extended domain as an independent self-consistency
    // check of both the quadrature and the truncation rule.
    const auto density = [&](double r) {
        const double gg = radial_g(r, level, norm_a);
        const double ff = radial_f(r, level, norm_a, cfg.m1, cfg.m2);
        return gg * gg + ff * ff;
    };
    const double extended = integrate_adaptive(density, 0.0, 1.25 * auto_r_max, 1e-12, 1.0);
    const double norm_residual = std::abs(extended - 1.0);

    return RadialSolution{level,  std::move(grid), std::move(g), std::move(f),
                          norm_a, extended,        norm_residual};
}

FirstOrderResidual first_order_residual(const RadialSolution& solution, double m1, double m2) {
    const Level& lv = solution.level;
    const double mass_diff = (m1 - m2) * (m1 + m2);
    const double c_plus = 0.5 * lv.energy + 0.5 * mass_diff / lv.energy + m1;
    const double c_minus = 0.5 * lv.energy + 0.5 * mass_diff / lv.energy - m1;
    const double w = lv.sign * lv.a_sq;  // nu - lambda*kappa
    const double kappa = lv.channel.kappa();

    double sup_g = 0.0, sup_f = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < solution.grid.size(); ++i) {
        const double r = solution.grid.r()[i];
        const double g = solution.g[i];
        const double f = solution.f[i];
        const double dg = eval_upper(r, lv, solution.norm_a).dg;
        const double df = eval_lower(r, lv, solution.norm_a, m1, m2).df;

        const double res_g = dg + (kappa / r) * g + w * r * g - c_plus * f;
        const double res_f = df - (kappa / r) * f - w * r * f + c_minus * g;
        sup_g = std::max(sup_g, std::abs(res_g));
        sup_f = std::max(sup_f, std::abs(res_f));

        for (const double term :
             {dg, (kappa / r) * g, w * r * g, c_plus * f, df, (kappa / r) * f, w * r * f,
              c_minus * g})
            scale = std::max(scale, std::abs(term));
    }
    if (scale == 0.0)
        return {0.0, 0.0};
    return {sup_g / scale, sup_f / scale};
}

double second_order_residual(const Level& level, std::span<const double> r_values) {
    const double kappa = level.channel.kappa();
    const double centrifugal = kappa * (kappa + 1.0);
    const double spin_orbit = level.sign * level.a_sq * (2.0 * kappa - 1.0);

    double sup = 0.0, scale = 0.0;
    for (const double r : r_values) {
        const auto [g, dg, d2g] = eval_upper(r, level, 1.0);
        const double potential =
            centrifugal / (r * r) + level.a_sq * level.a_sq * r * r + spin_orbit;
        const double res = d2g - potential * g + level.cal_e * g;
        sup = std::max(sup, std::abs(res));
        for (const double term : {d2g, potential * g, level.cal_e * g})
            scale = std::max(scale, std::abs(term));
    }
    return scale == 0.0 ? 0.0 : sup / scale;
}

double radial_overlap(const ModelConfig& cfg, const Level& a, const Level& b) {
    const double norm_a = normalization_constant(a, cfg.m1, cfg.m2);
    const double norm_b = normalization_constant(b, cfg.m1, cfg.m2);
    const double r_max = std::max(truncation_radius(a.cal_e, a.a_sq),
                                  truncation_radius(b.cal_e, b.a_sq));
    const auto product = [&](double r) {
        return radial_g(r, a, norm_a) * radial_g(r, b, norm_b) +
               radial_f(r, a, norm_a, cfg.m1, cfg.m2) * radial_f(r, b, norm_b, cfg.m1, cfg.m2);
    };
    return integrate_adaptive(product, 0.0, r_max, 1e-12, 1.0);
}

}  // namespace fbosc
