#include "convdiff/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace convdiff {

Mesh::Mesh(int n) : n_(n), h_(1.0 / n) {
    if (n < 2) throw std::invalid_argument("Mesh: need at least 2 elements");
}

double Mesh::node(int j) const {
    if (j < 0 || j > n_) throw std::out_of_range("Mesh::node: index out of range");
    return j == n_ ? 1.0 : j * h_;
}

int Mesh::element_of(double x) const {
    if (x < 0.0 || x > 1.0) throw std::domain_error("Mesh::element_of: x outside [0,1]");
    int i = static_cast<int>(x * n_) + 1;
    return std::clamp(i, 1, n_);
}

double hat(const Mesh& mesh, int i, double x) {
    if (i < 0 || i > mesh.n()) throw std::out_of_range("hat: index out of range");
    if (x < 0.0 || x > 1.0) throw std::domain_error("hat: x outside [0,1]");
    const double t = std::abs(x / mesh.h() - i);
    return t >= 1.0 ? 0.0 : 1.0 - t;
}

double hat_deriv(const Mesh& mesh, int i, double x) {
    if (i < 0 || i > mesh.n()) throw std::out_of_range("hat_deriv: index out of range");
    const int e = mesh.element_of(x);
    if (e == i) return 1.0 / mesh.h();
    if (e == i + 1) return -1.0 / mesh.h();
    return 0.0;
}

double bubble(const Mesh& mesh, int i, double x) {
    if (i < 1 || i > mesh.n()) throw std::out_of_range("bubble: element index out of range");
    const double h = mesh.h();
    const double a = (i - 1) * h;
    const double b = i == mesh.n() ? 1.0 : i * h;
    if (x <= a || x >= b) return 0.0;
    return 4.0 * (x - a) * (b - x) / ((b - a) * (b - a));
}

double bubble_deriv(const Mesh& mesh, int i, double x) {
    if (i < 1 || i > mesh.n()) throw std::out_of_range("bubble_deriv: element index out of range");
    const double h = mesh.h();
    const double a = (i - 1) * h;
    const double b = i == mesh.n() ? 1.0 : i * h;
    if (x <= a || x >= b) return 0.0;
    return 4.0 * (a + b - 2.0 * x) / ((b - a) * (b - a));
}

P1Function::P1Function(Mesh mesh, std::vector<double> coeffs)
    : mesh_(mesh), coeffs_(std::move(coeffs)) {
    if (static_cast<int>(coeffs_.size()) != mesh_.n() - 1)
        throw std::invalid_argument("P1Function: coefficient count must be n-1");
}

double P1Function::node_value(int j) const {
    if (j < 0 || j > mesh_.n()) throw std::out_of_range("P1Function::node_value");
    if (j == 0 || j == mesh_.n()) return 0.0;
    return coeffs_[j - 1];
}

double P1Function::operator()(double x) const {
    if (x < 0.0 || x > 1.0) throw std::domain_error("P1Function: x outside [0,1]");
    const int e = mesh_.element_of(x);
    const double left = node_value(e - 1);
    const double right = node_value(e);
    const double t = x / mesh_.h() - (e - 1);
    return left + (right - left) * t;
}

double P1Function::deriv(double x) const {
    if (x < 0.0 || x > 1.0) throw std::domain_error("P1Function: x outside [0,1]");
    const int e = mesh_.element_of(x);
    return (node_value(e) - node_value(e - 1)) / mesh_.h();
}

P2Function::P2Function(Mesh mesh, std::vector<double> vertex_coeffs, std::vector<double> bubble_coeffs)
    : mesh_(mesh), vertex_(std::move(vertex_coeffs)), bubble_(std::move(bubble_coeffs)) {
    if (static_cast<int>(vertex_.size()) != mesh_.n() - 1)
        throw std::invalid_argument("P2Function: vertex coefficient count must be n-1");
    if (static_cast<int>(bubble_.size()) != mesh_.n())
        throw std::invalid_argument("P2Function: bubble coefficient count must be n");
}

double P2Function::operator()(double x) const {
    if (x < 0.0 || x > 1.0) throw std::domain_error("P2Function: x outside [0,1]");
    const int e = mesh_.element_of(x);
    const double left = e >= 2 ? vertex_[e - 2] : 0.0;
    const double right = e <= mesh_.n() - 1 ? vertex_[e - 1] : 0.0;
    const double t = x / mesh_.h() - (e - 1);
    return left + (right - left) * t + bubble_[e - 1] * bubble(mesh_, e, x);
}

double P2Function::deriv(double x) const {
    if (x < 0.0 || x > 1.0) throw std::domain_error("P2Function: x outside [0,1]");
    const int e = mesh_.element_of(x);
    const double left = e >= 2 ? vertex_[e - 2] : 0.0;
    const double right = e <= mesh_.n() - 1 ? vertex_[e - 1] : 0.0;
    return (right - left) / mesh_.h() + bubble_[e - 1] * bubble_deriv(mesh_, e, x);
}

P1Function interpolate_p1(const std::function<double(double)>& u, const Mesh& mesh) {
    constexpr double boundary_tol = 1e-12;
    const double u0 = u(0.0);
    const double u1 = u(1.0);
    if (std::abs(u0) > boundary_tol || std::abs(u1) > boundary_tol) {
        std::fprintf(stderr,
                     "interpolate_p1: nonzero boundary values (%.3e, %.3e) forced to zero\n",
                     u0, u1);
    }
    std::vector<double> coeffs(mesh.n() - 1);
    for (int j = 1; j < mesh.n(); ++j) coeffs[j - 1] = u(mesh.node(j));
    return P1Function(mesh, std::move(coeffs));
}

} // namespace convdiff
