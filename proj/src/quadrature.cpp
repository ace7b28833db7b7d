#include "convdiff/quadrature.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace convdiff {

QuadratureRule QuadratureRule::gauss_legendre(int npoints) {
    if (npoints < 1 || npoints > 64)
        throw std::invalid_argument("gauss_legendre: point count must be in 1..64");
    QuadratureRule rule;
    rule.points.resize(npoints);
    rule.weights.resize(npoints);
    // Newton iteration on P_n with the Chebyshev-like initial guess.
    for (int k = 0; k < npoints; ++k) {
        double x = std::cos(std::numbers::pi * (k + 0.75) / (npoints + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int j = 2; j <= npoints; ++j) {
                const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
                p0 = p1;
                p1 = p2;
            }
            dp = npoints * (x * p1 - p0) / (x * x - 1.0);
            const double step = p1 / dp;
            x -= step;
            if (std::abs(step) < 1e-15) break;
        }
        rule.points[npoints - 1 - k] = x;
        rule.weights[npoints - 1 - k] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

int CompositePolicy::default_points() {
    if (const char* env = std::getenv("CONVDIFF_QUAD_POINTS")) {
        const int v = std::atoi(env);
        if (v >= 1 && v <= 64) return v;
    }
    return 5;
}

CompositePolicy CompositePolicy::plain(int npoints) {
    CompositePolicy p;
    p.rule = QuadratureRule::gauss_legendre(npoints);
    return p;
}

CompositePolicy CompositePolicy::layered(double eps, int npoints) {
    if (eps <= 0.0) return plain(npoints);
    CompositePolicy p;
    p.rule = QuadratureRule::gauss_legendre(npoints);
    p.layer_split = true;
    p.eps = eps;
    p.layer_width = std::max(eps * std::abs(std::log(eps)),
                             10.0 * std::numeric_limits<double>::epsilon());
    return p;
}

namespace {

double apply_rule(const std::function<double(double)>& g, double a, double b,
                  const QuadratureRule& rule) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t k = 0; k < rule.points.size(); ++k) {
        const double x = mid + half * rule.points[k];
        const double v = g(x);
        if (!std::isfinite(v))
            throw std::runtime_error("integrate: non-finite integrand at x = " + std::to_string(x));
        sum += rule.weights[k] * v;
    }
    return half * sum;
}

// Same rule, abscissae placed in the distance variable t = 1 - x. Inside the
// layer this keeps the node positions as sharp as the representable points
// near x = 1 allow.
double apply_rule_from_right(const std::function<double(double)>& g, double a, double b,
                             const QuadratureRule& rule) {
    const double ta = 1.0 - a;
    const double tb = 1.0 - b;
    const double tmid = 0.5 * (ta + tb);
    const double thalf = 0.5 * (ta - tb);
    double sum = 0.0;
    for (std::size_t k = 0; k < rule.points.size(); ++k) {
        const double x = 1.0 - (tmid - thalf * rule.points[k]);
        const double v = g(x);
        if (!std::isfinite(v))
            throw std::runtime_error("integrate: non-finite integrand at x = " + std::to_string(x));
        sum += rule.weights[k] * v;
    }
    return thalf * sum;
}

} // namespace

double integrate(const std::function<double(double)>& g, double a, double b,
                 const CompositePolicy& policy) {
    if (!(a < b)) throw std::invalid_argument("integrate: need a < b");

    const double zone = 10.0 * policy.layer_width;
    if (!policy.layer_split || policy.eps <= 0.0 || b < 1.0 - zone)
        return apply_rule(g, a, b, policy.rule);

    const double eps = policy.eps;
    const double width = b - a;

    // Cells lying within ~45 eps of x = 1 see the layer at full strength and
    // are cut down to about half an e-folding each; farther out the integrand
    // contribution is below 1e-19 of the layer scale.
    const auto layered_cell = [&](double left, double right) {
        double sum = 0.0;
        if (1.0 - right <= 45.0 * eps) {
            const int m = std::clamp(static_cast<int>(std::ceil((right - left) / (0.5 * eps))), 1, 512);
            for (int k = 0; k < m; ++k) {
                const double lo = left + (right - left) * k / m;
                const double hi = k + 1 == m ? right : left + (right - left) * (k + 1) / m;
                sum += apply_rule_from_right(g, lo, hi, policy.rule);
            }
        } else {
            sum = apply_rule(g, left, right, policy.rule);
        }
        return sum;
    };

    if (b >= 1.0 - 1e-14 * std::max(1.0, width)) {
        // Interval reaches the outflow boundary: geometric chain toward x = 1
        // until the finest cell resolves the layer scale.
        const double r = policy.geometric_ratio;
        int depth = 0;
        double w = width;
        while (w > 0.25 * eps && depth < policy.max_subdivisions) {
            w *= r;
            ++depth;
        }
        double sum = 0.0;
        double left = a;
        for (int k = 1; k <= depth; ++k) {
            const double right = b - width * std::pow(r, k);
            if (right <= left) continue;
            sum += layered_cell(left, right);
            left = right;
        }
        sum += apply_rule_from_right(g, left, b, policy.rule);
        return sum;
    }

    // Interval inside the grading zone but away from x = 1.
    return layered_cell(a, b);
}

std::vector<double> load_p1(const Forcing& f, const Mesh& mesh, const CompositePolicy& policy) {
    const int n = mesh.n();
    std::vector<double> out(n - 1);
    for (int i = 1; i < n; ++i) {
        const auto g = [&](double x) { return f(x) * hat(mesh, i, x); };
        out[i - 1] = integrate(g, mesh.node(i - 1), mesh.node(i), policy) +
                     integrate(g, mesh.node(i), mesh.node(i + 1), policy);
    }
    return out;
}

std::vector<double> load_bubble(const Forcing& f, const Mesh& mesh, const CompositePolicy& policy) {
    const int n = mesh.n();
    std::vector<double> out(n);
    for (int i = 1; i <= n; ++i) {
        const auto g = [&](double x) { return f(x) * bubble(mesh, i, x); };
        out[i - 1] = integrate(g, mesh.node(i - 1), mesh.node(i), policy);
    }
    return out;
}

std::vector<double> load_p1_deriv(const Forcing& f, const Mesh& mesh, const CompositePolicy& policy) {
    const int n = mesh.n();
    std::vector<double> elem(n);
    for (int i = 1; i <= n; ++i)
        elem[i - 1] = integrate([&](double x) { return f(x); }, mesh.node(i - 1), mesh.node(i), policy);
    std::vector<double> out(n - 1);
    for (int i = 1; i < n; ++i) out[i - 1] = (elem[i - 1] - elem[i]) / mesh.h();
    return out;
}

} // namespace convdiff
