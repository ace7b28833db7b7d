#pragma once

#include "convdiff/assembly.hpp"
#include "convdiff/mesh.hpp"

#include <optional>
#include <span>
#include <vector>

namespace convdiff {

/// Banded LU factorization with partial pivoting (LAPACK-style fill storage).
class BandLU {
public:
    static BandLU factor(const BandMatrix& m);
    std::vector<double> solve(std::span<const double> rhs) const;
    int dim() const noexcept { return dim_; }

private:
    BandLU() = default;
    double& ab(int r, int j) { return data_[static_cast<std::size_t>(j) * ldab_ + r]; }
    double ab(int r, int j) const { return data_[static_cast<std::size_t>(j) * ldab_ + r]; }

    int dim_ = 0, kl_ = 0, ku_ = 0, ldab_ = 0;
    std::vector<double> data_;
    std::vector<int> pivots_;
};

struct BandSolveResult {
    std::vector<double> x;
    double residual_inf; // ||Mx - r||_inf
};

/// Direct banded solve; throws SingularMatrixError when a pivot falls under
/// dim * machine_eps * max_row_norm.
BandSolveResult band_solve(const BandMatrix& m, std::span<const double> rhs);

/// Dense symmetric positive (semi)definite solve via Cholesky, column-major
/// storage. A one-time diagonal shift of 1e-14 * trace/dim is applied if a
/// nonpositive pivot shows up at working precision; a second failure throws.
std::vector<double> dense_spd_solve(std::vector<double> m_colmajor, int dim,
                                    std::span<const double> rhs);

/// Strict variant: refuses pivots at or below dim * machine_eps * max_diag and
/// returns nothing instead (used to classify degenerate Gram matrices).
std::optional<std::vector<double>> dense_spd_solve_checked(std::vector<double> m_colmajor, int dim,
                                                           std::span<const double> rhs);

struct SaddleSolution {
    P2Function w;
    P1Function u;
    double residual_block1; // ||A w + B u - rhs||_inf
    double residual_block2; // ||B^T w||_inf
};

/// Block elimination for the saddle system: factor A, build the dense Schur
/// complement B^T A^{-1} B column by column, solve for u, back-substitute w.
SaddleSolution saddle_solve(const SaddleSystem& sys);

} // namespace convdiff
