#pragma once

#include <functional>
#include <span>
#include <vector>

namespace convdiff {

/// Uniform partition of [0,1] into n elements of width h = 1/n.
class Mesh {
public:
    explicit Mesh(int n);

    int n() const noexcept { return n_; }
    double h() const noexcept { return h_; }

    /// Node x_j = j*h, j = 0..n.
    double node(int j) const;

    /// Element index i in 1..n whose closure contains x. At interior nodes the
    /// right element is returned; at x=1 the last element (left limit).
    int element_of(double x) const;

private:
    int n_;
    double h_;
};

// Nodal hat functions phi_i, i = 0..n; the interior basis is i = 1..n-1.
double hat(const Mesh& mesh, int i, double x);
double hat_deriv(const Mesh& mesh, int i, double x);

// Element bubble B_i = 4*phi_{i-1}*phi_i supported on [x_{i-1}, x_i], i = 1..n.
double bubble(const Mesh& mesh, int i, double x);
double bubble_deriv(const Mesh& mesh, int i, double x);

/// Piecewise-linear continuous function with homogeneous Dirichlet boundary.
/// coeffs holds the interior nodal values u_1..u_{n-1}; u_0 = u_n = 0.
class P1Function {
public:
    P1Function(Mesh mesh, std::vector<double> coeffs);

    double operator()(double x) const;
    /// Piecewise-constant derivative (u_i - u_{i-1})/h; right limit at nodes,
    /// left limit at x = 1.
    double deriv(double x) const;

    /// Nodal value u_j including the boundary zeros, j = 0..n.
    double node_value(int j) const;

    const Mesh& mesh() const noexcept { return mesh_; }
    std::span<const double> coeffs() const noexcept { return coeffs_; }

private:
    Mesh mesh_;
    std::vector<double> coeffs_;
};

/// Continuous piecewise quadratic in hierarchical form: vertex part (interior
/// hats) plus one bubble coefficient per element.
class P2Function {
public:
    P2Function(Mesh mesh, std::vector<double> vertex_coeffs, std::vector<double> bubble_coeffs);

    double operator()(double x) const;
    double deriv(double x) const;

    const Mesh& mesh() const noexcept { return mesh_; }
    std::span<const double> vertex_coeffs() const noexcept { return vertex_; }
    std::span<const double> bubble_coeffs() const noexcept { return bubble_; }

private:
    Mesh mesh_;
    std::vector<double> vertex_;
    std::vector<double> bubble_;
};

/// Nodal interpolant onto the interior P1 basis. Boundary values of u are
/// discarded (forced to zero); a warning is printed if they exceed 1e-12.
P1Function interpolate_p1(const std::function<double(double)>& u, const Mesh& mesh);

} // namespace convdiff
