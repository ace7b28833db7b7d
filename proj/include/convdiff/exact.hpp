#pragma once

#include "convdiff/forcing.hpp"

#include <functional>
#include <span>
#include <vector>

namespace convdiff {

/// Stable boundary-layer ratio r(x) = (e^{(x-1)/eps} - e^{-1/eps}) / (1 - e^{-1/eps}),
/// the well-scaled form of (e^{x/eps}-1)/(e^{1/eps}-1). r(0)=0, r(1)=1, monotone;
/// no exponential ever sees a positive argument. Throws for eps <= 0.
double layer_ratio(double x, double eps);

/// Closed-form solution of -eps*u'' + u' = f, u(0)=u(1)=0, for the named
/// forcings. Built from a particular solution u_p and the layer ratio:
///   u(x) = (u_p(x) - u_p(0)) - (u_p(1) - u_p(0)) * r(x).
/// Evaluators run in extended precision internally so that the residual
/// -eps*u'' + u' - f stays meaningful inside the layer, where the individual
/// terms grow like 1/eps.
class ExactSolution {
public:
    ExactSolution(const Forcing& f, double eps);

    double u(double x) const;
    double du(double x) const;
    double d2u(double x) const;

    /// -eps*u''(x) + u'(x) - f(x), combined before rounding to double.
    double residual(double x) const;

    double eps() const noexcept { return eps_; }
    const Forcing& forcing() const noexcept { return f_; }

private:
    long double up(long double x) const;
    long double dup(long double x) const;
    long double d2up(long double x) const;
    long double layer(long double x) const;       // r(x)
    long double layer_du(long double x) const;    // r'(x)
    long double f_ld(long double x) const;

    Forcing f_;
    double eps_;
    long double eps_ld_;
    long double omega_ = 0.0L;          // 7*pi/2 for the cosine forcing
    long double cosA_ = 0.0L, cosB_ = 0.0L;
    long double up0_ = 0.0L, delta_ = 0.0L; // u_p(0), u_p(1) - u_p(0)
    long double e1_ = 0.0L, dden_ = 0.0L;   // e^{-1/eps}, 1 - e^{-1/eps}
    long double c1_ = 0.0L;                 // 1/(eps*(1 - e^{-1/eps}))
};

ExactSolution exact_solution(const Forcing& f, double eps);

/// Solution of the reduced problem w' = f, w(0) = 0.
std::function<double(double)> reduced_w(const Forcing& f);
/// Outflow-anchored counterpart theta' = f, theta(1) = 0; theta = w - mean(f).
std::function<double(double)> reduced_theta(const Forcing& f);

/// Deterministic sample set on [0,1] graded geometrically into the layer at x=1.
std::vector<double> layer_graded_samples(double eps, int count);

/// Max absolute residual of the closed form over the given samples.
double verify_residual(const ExactSolution& sol, std::span<const double> samples);

} // namespace convdiff
