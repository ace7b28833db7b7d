#pragma once

#include "convdiff/forcing.hpp"
#include "convdiff/mesh.hpp"

#include <functional>
#include <vector>

namespace convdiff {

/// Gauss-Legendre rule on (-1,1); exact for polynomials up to degree 2*npoints-1.
struct QuadratureRule {
    std::vector<double> points;
    std::vector<double> weights;

    static QuadratureRule gauss_legendre(int npoints);
};

/// Element-level integration policy. With layer_split set, subintervals close
/// to the outflow boundary x=1 are refined geometrically so that integrands
/// carrying the e^{(x-1)/eps} layer are resolved.
struct CompositePolicy {
    QuadratureRule rule;
    bool layer_split = false;
    double eps = 0.0;
    double layer_width = 0.0;     // grading trigger zone scale, default eps*|ln eps|
    double geometric_ratio = 0.5; // subinterval width ratio toward x=1
    int max_subdivisions = 60;

    /// Base number of Gauss points: CONVDIFF_QUAD_POINTS env override, else 5.
    static int default_points();
    static CompositePolicy plain(int npoints = default_points());
    static CompositePolicy layered(double eps, int npoints = default_points());
};

/// Composite Gauss approximation of the integral of g over [a,b].
/// Throws if g evaluates to a non-finite value (the abscissa is reported).
double integrate(const std::function<double(double)>& g, double a, double b,
                 const CompositePolicy& policy);

// Load functionals. Components are ordered by interior node / element index.
std::vector<double> load_p1(const Forcing& f, const Mesh& mesh, const CompositePolicy& policy);       // (f, phi_i), i=1..n-1
std::vector<double> load_bubble(const Forcing& f, const Mesh& mesh, const CompositePolicy& policy);   // (f, B_i),   i=1..n
std::vector<double> load_p1_deriv(const Forcing& f, const Mesh& mesh, const CompositePolicy& policy); // (f, phi_i'), i=1..n-1

} // namespace convdiff
