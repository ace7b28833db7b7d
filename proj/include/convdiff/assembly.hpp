#pragma once

#include "convdiff/forcing.hpp"
#include "convdiff/mesh.hpp"
#include "convdiff/quadrature.hpp"

#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace convdiff {

/// Raised when a factorization meets a pivot that is singular to working
/// precision (expected for the eps=0 standard system with an even element count).
class SingularMatrixError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Banded real matrix stored by diagonals; get() returns 0 outside the band.
class BandMatrix {
public:
    BandMatrix(int dim, int lower_bw, int upper_bw);

    int dim() const noexcept { return dim_; }
    int lower_bw() const noexcept { return lower_; }
    int upper_bw() const noexcept { return upper_; }

    double get(int i, int j) const;
    void set(int i, int j, double v);
    void add(int i, int j, double v);

    std::vector<double> apply(std::span<const double> x) const; // M*x
    double inf_norm() const;
    double max_row_norm() const { return inf_norm(); }

private:
    bool in_band(int i, int j) const noexcept {
        return i - j <= lower_ && j - i <= upper_;
    }
    std::size_t index(int i, int j) const noexcept {
        return static_cast<std::size_t>(i) * (lower_ + upper_ + 1) + (j - i + lower_);
    }

    int dim_, lower_, upper_;
    std::vector<double> data_;
};

// Stencil matrices of the uniform-mesh discretization, (n-1) x (n-1):
// S = tridiag(-1, 2, -1), C = (1/2) tridiag(-1, 0, 1).
BandMatrix matrix_S(int n);
BandMatrix matrix_C(int n);

/// Standard linear Galerkin system (eps/h) S + C; eps = 0 gives exactly C.
BandMatrix system_standard(const Mesh& mesh, double eps);

/// Upwind Petrov-Galerkin / streamline-diffusion system. Both methods share
/// the matrix of the bilinear form (eps + delta)(u', w') + (u', w), i.e.
/// ((eps + delta)/h) S + C.
BandMatrix system_pg_sd(const Mesh& mesh, double eps, double delta);

std::vector<double> rhs_standard(const Forcing& f, const Mesh& mesh, const CompositePolicy& policy);
std::vector<double> rhs_pg(const Forcing& f, const Mesh& mesh, const CompositePolicy& policy);
std::vector<double> rhs_sd(const Forcing& f, const Mesh& mesh, double delta, const CompositePolicy& policy);

/// Default stabilization weight delta = 2h/3.
double default_delta(const Mesh& mesh);

/// Saddle system of the P1-P2 least-squares discretization:
///   a0(w,v) + b(v,u) = (f,v)   for all v in the P2 test space,
///   b(w,q)           = 0       for all q in the P1 trial space,
/// with b(v,q) = eps(q',v') + (q',v). P2 degrees of freedom are interleaved
/// bubble/vertex (B_1, v_1, B_2, v_2, ..., B_n) so A has bandwidth 2.
struct SaddleSystem {
    BandMatrix A;     // (2n-1) x (2n-1) test-space stiffness, SPD
    std::vector<std::vector<std::pair<int, double>>> b_cols; // column j-1: b(. , phi_j)
    std::vector<double> rhs;  // (f, v) over the P2 basis
    Mesh mesh;
    double eps;

    static int bubble_index(int i) { return 2 * (i - 1); } // i = 1..n
    static int vertex_index(int j) { return 2 * j - 1; }   // j = 1..n-1
};

SaddleSystem system_spls(const Mesh& mesh, double eps, const Forcing& f,
                         const CompositePolicy& policy);

} // namespace convdiff
