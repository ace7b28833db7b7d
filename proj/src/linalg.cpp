#include "convdiff/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace convdiff {

BandLU BandLU::factor(const BandMatrix& m) {
    const int n = m.dim();
    const int kl = m.lower_bw();
    const int ku = m.upper_bw();

    BandLU lu;
    lu.dim_ = n;
    lu.kl_ = kl;
    lu.ku_ = ku;
    lu.ldab_ = 2 * kl + ku + 1;
    lu.data_.assign(static_cast<std::size_t>(lu.ldab_) * n, 0.0);
    lu.pivots_.assign(n, 0);

    // Row i of column j sits at ab(i - j + kl + ku, j); the extra kl
    // superdiagonals hold pivoting fill.
    for (int j = 0; j < n; ++j) {
        const int ilo = std::max(0, j - ku);
        const int ihi = std::min(n - 1, j + kl);
        for (int i = ilo; i <= ihi; ++i) lu.ab(i - j + kl + ku, j) = m.get(i, j);
    }

    const double tol = n * std::numeric_limits<double>::epsilon() * m.max_row_norm();

    for (int k = 0; k < n; ++k) {
        const int imax = std::min(n - 1, k + kl);
        int piv = k;
        double pmag = std::abs(lu.ab(kl + ku, k));
        for (int i = k + 1; i <= imax; ++i) {
            const double mag = std::abs(lu.ab(i - k + kl + ku, k));
            if (mag > pmag) {
                pmag = mag;
                piv = i;
            }
        }
        lu.pivots_[k] = piv;
        if (!(pmag > tol))
            throw SingularMatrixError("band factorization: pivot singular to working precision at column " +
                                      std::to_string(k));
        const int jhi = std::min(n - 1, k + kl + ku);
        if (piv != k) {
            for (int j = k; j <= jhi; ++j)
                std::swap(lu.ab(k - j + kl + ku, j), lu.ab(piv - j + kl + ku, j));
        }
        const double d = lu.ab(kl + ku, k);
        for (int i = k + 1; i <= imax; ++i) {
            const double mult = lu.ab(i - k + kl + ku, k) / d;
            lu.ab(i - k + kl + ku, k) = mult;
            if (mult != 0.0)
                for (int j = k + 1; j <= jhi; ++j)
                    lu.ab(i - j + kl + ku, j) -= mult * lu.ab(k - j + kl + ku, j);
        }
    }
    return lu;
}

std::vector<double> BandLU::solve(std::span<const double> rhs) const {
    if (static_cast<int>(rhs.size()) != dim_)
        throw std::invalid_argument("BandLU::solve: size mismatch");
    std::vector<double> x(rhs.begin(), rhs.end());
    for (int k = 0; k < dim_; ++k) {
        if (pivots_[k] != k) std::swap(x[k], x[pivots_[k]]);
        const int imax = std::min(dim_ - 1, k + kl_);
        const double xk = x[k];
        if (xk != 0.0)
            for (int i = k + 1; i <= imax; ++i) x[i] -= ab(i - k + kl_ + ku_, k) * xk;
    }
    for (int k = dim_ - 1; k >= 0; --k) {
        x[k] /= ab(kl_ + ku_, k);
        const int ilo = std::max(0, k - kl_ - ku_);
        const double xk = x[k];
        if (xk != 0.0)
            for (int i = ilo; i < k; ++i) x[i] -= ab(i - k + kl_ + ku_, k) * xk;
    }
    return x;
}

BandSolveResult band_solve(const BandMatrix& m, std::span<const double> rhs) {
    const BandLU lu = BandLU::factor(m);
    std::vector<double> x = lu.solve(rhs);
    const std::vector<double> mx = m.apply(x);
    double res = 0.0;
    for (std::size_t i = 0; i < mx.size(); ++i) res = std::max(res, std::abs(mx[i] - rhs[i]));
    return BandSolveResult{std::move(x), res};
}

namespace {

// In-place lower Cholesky on column-major storage; returns false when a pivot
// falls at or below min_pivot.
bool cholesky(std::vector<double>& a, int n, double min_pivot = 0.0) {
    for (int j = 0; j < n; ++j) {
        double* colj = a.data() + static_cast<std::size_t>(j) * n;
        for (int k = 0; k < j; ++k) {
            const double q = a[static_cast<std::size_t>(k) * n + j]; // L(j,k)
            if (q == 0.0) continue;
            const double* colk = a.data() + static_cast<std::size_t>(k) * n;
            for (int i = j; i < n; ++i) colj[i] -= q * colk[i];
        }
        const double d = colj[j];
        if (!(d > min_pivot) || !std::isfinite(d)) return false;
        const double r = std::sqrt(d);
        colj[j] = r;
        for (int i = j + 1; i < n; ++i) colj[i] /= r;
    }
    return true;
}

void cholesky_solve(const std::vector<double>& l, int n, std::vector<double>& x) {
    for (int j = 0; j < n; ++j) {
        x[j] /= l[static_cast<std::size_t>(j) * n + j];
        const double xj = x[j];
        const double* colj = l.data() + static_cast<std::size_t>(j) * n;
        for (int i = j + 1; i < n; ++i) x[i] -= colj[i] * xj;
    }
    for (int j = n - 1; j >= 0; --j) {
        const double* colj = l.data() + static_cast<std::size_t>(j) * n;
        double s = x[j];
        for (int i = j + 1; i < n; ++i) s -= colj[i] * x[i];
        x[j] = s / colj[j];
    }
}

} // namespace

std::vector<double> dense_spd_solve(std::vector<double> m_colmajor, int dim,
                                    std::span<const double> rhs) {
    if (static_cast<int>(rhs.size()) != dim ||
        m_colmajor.size() != static_cast<std::size_t>(dim) * dim)
        throw std::invalid_argument("dense_spd_solve: size mismatch");

    std::vector<double> work = m_colmajor;
    if (!cholesky(work, dim)) {
        double trace = 0.0;
        for (int i = 0; i < dim; ++i) trace += m_colmajor[static_cast<std::size_t>(i) * dim + i];
        const double shift = 1e-14 * trace / dim;
        work = m_colmajor;
        for (int i = 0; i < dim; ++i) work[static_cast<std::size_t>(i) * dim + i] += shift;
        if (!cholesky(work, dim))
            throw SingularMatrixError("dense_spd_solve: matrix not positive definite after shift");
    }
    std::vector<double> x(rhs.begin(), rhs.end());
    cholesky_solve(work, dim, x);
    return x;
}

std::optional<std::vector<double>> dense_spd_solve_checked(std::vector<double> m_colmajor, int dim,
                                                           std::span<const double> rhs) {
    if (static_cast<int>(rhs.size()) != dim ||
        m_colmajor.size() != static_cast<std::size_t>(dim) * dim)
        throw std::invalid_argument("dense_spd_solve_checked: size mismatch");
    double max_diag = 0.0;
    for (int i = 0; i < dim; ++i)
        max_diag = std::max(max_diag, std::abs(m_colmajor[static_cast<std::size_t>(i) * dim + i]));
    const double min_pivot = dim * std::numeric_limits<double>::epsilon() * max_diag;
    if (!cholesky(m_colmajor, dim, min_pivot)) return std::nullopt;
    std::vector<double> x(rhs.begin(), rhs.end());
    cholesky_solve(m_colmajor, dim, x);
    return x;
}

SaddleSolution saddle_solve(const SaddleSystem& sys) {
    const int n = sys.mesh.n();
    const int dim = 2 * n - 1;
    const int ncols = n - 1;

    const BandLU lu = BandLU::factor(sys.A);
    const std::vector<double> y0 = lu.solve(sys.rhs);

    // Schur complement B^T A^{-1} B, built column by column (lower triangle).
    std::vector<double> schur(static_cast<std::size_t>(ncols) * ncols, 0.0);
    std::vector<double> srhs(ncols, 0.0);
    std::vector<double> e(dim, 0.0);
    for (int j = 0; j < ncols; ++j) {
        std::fill(e.begin(), e.end(), 0.0);
        for (const auto& [row, val] : sys.b_cols[j]) e[row] = val;
        const std::vector<double> x = lu.solve(e);
        for (int i = j; i < ncols; ++i) {
            double s = 0.0;
            for (const auto& [row, val] : sys.b_cols[i]) s += val * x[row];
            schur[static_cast<std::size_t>(j) * ncols + i] = s;
        }
        double s = 0.0;
        for (const auto& [row, val] : sys.b_cols[j]) s += val * y0[row];
        srhs[j] = s;
    }

    std::vector<double> u;
    try {
        u = dense_spd_solve(std::move(schur), ncols, srhs);
    } catch (const SingularMatrixError&) {
        throw SingularMatrixError("saddle_solve: Schur complement rank-deficient");
    }

    std::vector<double> w_rhs = sys.rhs;
    for (int j = 0; j < ncols; ++j)
        for (const auto& [row, val] : sys.b_cols[j]) w_rhs[row] -= val * u[j];
    const std::vector<double> w_flat = lu.solve(w_rhs);

    // Residuals of both block equations.
    const std::vector<double> aw = sys.A.apply(w_flat);
    double res1 = 0.0;
    for (int i = 0; i < dim; ++i) {
        double bi = 0.0;
        for (int j = 0; j < ncols; ++j)
            for (const auto& [row, val] : sys.b_cols[j])
                if (row == i) bi += val * u[j];
        res1 = std::max(res1, std::abs(aw[i] + bi - sys.rhs[i]));
    }
    double res2 = 0.0;
    for (int j = 0; j < ncols; ++j) {
        double s = 0.0;
        for (const auto& [row, val] : sys.b_cols[j]) s += val * w_flat[row];
        res2 = std::max(res2, std::abs(s));
    }

    std::vector<double> vertex(ncols), bub(n);
    for (int j = 1; j < n; ++j) vertex[j - 1] = w_flat[SaddleSystem::vertex_index(j)];
    for (int i = 1; i <= n; ++i) bub[i - 1] = w_flat[SaddleSystem::bubble_index(i)];

    return SaddleSolution{P2Function(sys.mesh, std::move(vertex), std::move(bub)),
                          P1Function(sys.mesh, std::move(u)), res1, res2};
}

} // namespace convdiff
