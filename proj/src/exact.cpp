#include "convdiff/exact.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace convdiff {

namespace {

// r(x) in long double given e^{-1/eps} and the denominator 1 - e^{-1/eps}.
long double layer_ld(long double x, long double eps, long double e1, long double dden) {
    return (expl((x - 1.0L) / eps) - e1) / dden;
}

} // namespace

double layer_ratio(double x, double eps) {
    if (eps <= 0.0) throw std::domain_error("layer_ratio: eps must be positive");
    if (x < 0.0 || x > 1.0) throw std::domain_error("layer_ratio: x outside [0,1]");
    const long double e = eps;
    const long double e1 = expl(-1.0L / e);
    const long double dden = -expm1l(-1.0L / e);
    return static_cast<double>(layer_ld(x, e, e1, dden));
}

ExactSolution::ExactSolution(const Forcing& f, double eps) : f_(f), eps_(eps) {
    if (!f.has_exact())
        throw std::invalid_argument(
            "ExactSolution: custom forcings have no closed form (error norms unsupported)");
    if (eps <= 0.0) throw std::domain_error("ExactSolution: eps must be positive");

    eps_ld_ = eps;
    e1_ = expl(-1.0L / eps_ld_);
    dden_ = -expm1l(-1.0L / eps_ld_);
    c1_ = 1.0L / (eps_ld_ * dden_);

    if (f_.tag() == Forcing::Tag::CosSevenPiHalf) {
        omega_ = 7.0L * std::numbers::pi_v<long double> / 2.0L;
        // Match -eps*up'' + up' = cos(omega x) for up = A sin + B cos:
        //   (eps w^2) A - w B = 0,  w A + (eps w^2) B = 1.
        const long double a11 = eps_ld_ * omega_ * omega_, a12 = -omega_;
        const long double a21 = omega_, a22 = eps_ld_ * omega_ * omega_;
        const long double det = a11 * a22 - a12 * a21;
        cosA_ = (0.0L * a22 - a12 * 1.0L) / det;
        cosB_ = (a11 * 1.0L - 0.0L * a21) / det;
    }

    up0_ = up(0.0L);
    delta_ = up(1.0L) - up0_;
}

long double ExactSolution::up(long double x) const {
    switch (f_.tag()) {
        case Forcing::Tag::One: return x;
        case Forcing::Tag::TwoX: return x * x + 2.0L * eps_ld_ * x;
        case Forcing::Tag::OneMinusTwoX: return x - x * x - 2.0L * eps_ld_ * x;
        case Forcing::Tag::CosSevenPiHalf: return cosA_ * sinl(omega_ * x) + cosB_ * cosl(omega_ * x);
        default: break;
    }
    throw std::logic_error("ExactSolution::up: unreachable");
}

long double ExactSolution::dup(long double x) const {
    switch (f_.tag()) {
        case Forcing::Tag::One: return 1.0L;
        case Forcing::Tag::TwoX: return 2.0L * x + 2.0L * eps_ld_;
        case Forcing::Tag::OneMinusTwoX: return 1.0L - 2.0L * x - 2.0L * eps_ld_;
        case Forcing::Tag::CosSevenPiHalf:
            return omega_ * (cosA_ * cosl(omega_ * x) - cosB_ * sinl(omega_ * x));
        default: break;
    }
    throw std::logic_error("ExactSolution::dup: unreachable");
}

long double ExactSolution::d2up(long double x) const {
    switch (f_.tag()) {
        case Forcing::Tag::One: return 0.0L;
        case Forcing::Tag::TwoX: return 2.0L;
        case Forcing::Tag::OneMinusTwoX: return -2.0L;
        case Forcing::Tag::CosSevenPiHalf:
            return -omega_ * omega_ * (cosA_ * sinl(omega_ * x) + cosB_ * cosl(omega_ * x));
        default: break;
    }
    throw std::logic_error("ExactSolution::d2up: unreachable");
}

long double ExactSolution::layer(long double x) const {
    return layer_ld(x, eps_ld_, e1_, dden_);
}

long double ExactSolution::layer_du(long double x) const {
    return expl((x - 1.0L) / eps_ld_) * c1_;
}

long double ExactSolution::f_ld(long double x) const {
    switch (f_.tag()) {
        case Forcing::Tag::One: return 1.0L;
        case Forcing::Tag::TwoX: return 2.0L * x;
        case Forcing::Tag::OneMinusTwoX: return 1.0L - 2.0L * x;
        case Forcing::Tag::CosSevenPiHalf: return cosl(omega_ * x);
        default: break;
    }
    throw std::logic_error("ExactSolution::f_ld: unreachable");
}

double ExactSolution::u(double x) const {
    if (x < 0.0 || x > 1.0) throw std::domain_error("ExactSolution::u: x outside [0,1]");
    const long double xl = x;
    return static_cast<double>((up(xl) - up0_) - delta_ * layer(xl));
}

double ExactSolution::du(double x) const {
    if (x < 0.0 || x > 1.0) throw std::domain_error("ExactSolution::du: x outside [0,1]");
    const long double xl = x;
    return static_cast<double>(dup(xl) - delta_ * layer_du(xl));
}

double ExactSolution::d2u(double x) const {
    if (x < 0.0 || x > 1.0) throw std::domain_error("ExactSolution::d2u: x outside [0,1]");
    const long double xl = x;
    return static_cast<double>(d2up(xl) - delta_ * (layer_du(xl) / eps_ld_));
}

double ExactSolution::residual(double x) const {
    const long double xl = x;
    const long double d2 = d2up(xl) - delta_ * (layer_du(xl) / eps_ld_);
    const long double d1 = dup(xl) - delta_ * layer_du(xl);
    return static_cast<double>(fmal(-eps_ld_, d2, d1) - f_ld(xl));
}

ExactSolution exact_solution(const Forcing& f, double eps) { return ExactSolution(f, eps); }

std::function<double(double)> reduced_w(const Forcing& f) {
    switch (f.tag()) {
        case Forcing::Tag::One: return [](double x) { return x; };
        case Forcing::Tag::OneMinusTwoX: return [](double x) { return x - x * x; };
        case Forcing::Tag::TwoX: return [](double x) { return x * x; };
        case Forcing::Tag::CosSevenPiHalf:
            return [](double x) {
                const double w = 7.0 * std::numbers::pi / 2.0;
                return std::sin(w * x) / w;
            };
        default: break;
    }
    throw std::invalid_argument("reduced_w: unsupported for custom forcings");
}

std::function<double(double)> reduced_theta(const Forcing& f) {
    auto w = reduced_w(f);
    const double mean = f.mean();
    return [w = std::move(w), mean](double x) { return w(x) - mean; };
}

std::vector<double> layer_graded_samples(double eps, int count) {
    if (eps <= 0.0) throw std::domain_error("layer_graded_samples: eps must be positive");
    if (count < 4) throw std::invalid_argument("layer_graded_samples: need at least 4 samples");
    std::vector<double> xs;
    xs.reserve(count);
    // Half uniform across [0,1], half log-spaced distances from x=1 reaching
    // well inside the layer.
    const int uniform = count / 2;
    for (int k = 0; k < uniform; ++k) xs.push_back(static_cast<double>(k) / uniform);
    const int graded = count - uniform;
    const double dmin = 0.01 * eps;
    const double dmax = 0.5;
    for (int k = 0; k < graded; ++k) {
        const double t = static_cast<double>(k) / (graded - 1);
        const double d = dmax * std::pow(dmin / dmax, t);
        xs.push_back(1.0 - d);
    }
    xs.push_back(1.0);
    std::sort(xs.begin(), xs.end());
    return xs;
}

double verify_residual(const ExactSolution& sol, std::span<const double> samples) {
    double worst = 0.0;
    for (double x : samples) worst = std::max(worst, std::abs(sol.residual(x)));
    return worst;
}

} // namespace convdiff
