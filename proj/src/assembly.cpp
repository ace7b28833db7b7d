#include "convdiff/assembly.hpp"

#include <cmath>
#include <stdexcept>

namespace convdiff {

BandMatrix::BandMatrix(int dim, int lower_bw, int upper_bw)
    : dim_(dim), lower_(lower_bw), upper_(upper_bw),
      data_(static_cast<std::size_t>(dim) * (lower_bw + upper_bw + 1), 0.0) {
    if (dim < 1 || lower_bw < 0 || upper_bw < 0)
        throw std::invalid_argument("BandMatrix: bad shape");
}

double BandMatrix::get(int i, int j) const {
    if (i < 0 || j < 0 || i >= dim_ || j >= dim_)
        throw std::out_of_range("BandMatrix::get: index out of range");
    return in_band(i, j) ? data_[index(i, j)] : 0.0;
}

void BandMatrix::set(int i, int j, double v) {
    if (i < 0 || j < 0 || i >= dim_ || j >= dim_ || !in_band(i, j))
        throw std::out_of_range("BandMatrix::set: entry outside stored band");
    data_[index(i, j)] = v;
}

void BandMatrix::add(int i, int j, double v) {
    if (i < 0 || j < 0 || i >= dim_ || j >= dim_ || !in_band(i, j))
        throw std::out_of_range("BandMatrix::add: entry outside stored band");
    data_[index(i, j)] += v;
}

std::vector<double> BandMatrix::apply(std::span<const double> x) const {
    if (static_cast<int>(x.size()) != dim_)
        throw std::invalid_argument("BandMatrix::apply: size mismatch");
    std::vector<double> y(dim_, 0.0);
    for (int i = 0; i < dim_; ++i) {
        const int jlo = std::max(0, i - lower_);
        const int jhi = std::min(dim_ - 1, i + upper_);
        double s = 0.0;
        for (int j = jlo; j <= jhi; ++j) s += data_[index(i, j)] * x[j];
        y[i] = s;
    }
    return y;
}

double BandMatrix::inf_norm() const {
    double worst = 0.0;
    for (int i = 0; i < dim_; ++i) {
        const int jlo = std::max(0, i - lower_);
        const int jhi = std::min(dim_ - 1, i + upper_);
        double s = 0.0;
        for (int j = jlo; j <= jhi; ++j) s += std::abs(data_[index(i, j)]);
        worst = std::max(worst, s);
    }
    return worst;
}

BandMatrix matrix_S(int n) {
    if (n < 2) throw std::invalid_argument("matrix_S: need n >= 2");
    const int dim = n - 1;
    BandMatrix m(dim, 1, 1);
    for (int i = 0; i < dim; ++i) {
        m.set(i, i, 2.0);
        if (i > 0) m.set(i, i - 1, -1.0);
        if (i < dim - 1) m.set(i, i + 1, -1.0);
    }
    return m;
}

BandMatrix matrix_C(int n) {
    if (n < 2) throw std::invalid_argument("matrix_C: need n >= 2");
    const int dim = n - 1;
    BandMatrix m(dim, 1, 1);
    for (int i = 0; i < dim; ++i) {
        if (i > 0) m.set(i, i - 1, -0.5);
        if (i < dim - 1) m.set(i, i + 1, 0.5);
    }
    return m;
}

BandMatrix system_standard(const Mesh& mesh, double eps) {
    if (eps < 0.0) throw std::domain_error("system_standard: eps must be >= 0");
    const int n = mesh.n();
    const double a = eps / mesh.h();
    BandMatrix m(n - 1, 1, 1);
    for (int i = 0; i < n - 1; ++i) {
        m.set(i, i, 2.0 * a);
        if (i > 0) m.set(i, i - 1, -a - 0.5);
        if (i < n - 2) m.set(i, i + 1, -a + 0.5);
    }
    return m;
}

BandMatrix system_pg_sd(const Mesh& mesh, double eps, double delta) {
    if (eps < 0.0 || delta < 0.0)
        throw std::domain_error("system_pg_sd: eps and delta must be >= 0");
    return system_standard(mesh, eps + delta);
}

double default_delta(const Mesh& mesh) { return 2.0 * mesh.h() / 3.0; }

std::vector<double> rhs_standard(const Forcing& f, const Mesh& mesh, const CompositePolicy& policy) {
    return load_p1(f, mesh, policy);
}

std::vector<double> rhs_pg(const Forcing& f, const Mesh& mesh, const CompositePolicy& policy) {
    auto out = load_p1(f, mesh, policy);
    const auto fb = load_bubble(f, mesh, policy);
    for (int i = 1; i < mesh.n(); ++i) out[i - 1] += fb[i - 1] - fb[i];
    return out;
}

std::vector<double> rhs_sd(const Forcing& f, const Mesh& mesh, double delta,
                           const CompositePolicy& policy) {
    auto out = load_p1(f, mesh, policy);
    const auto fd = load_p1_deriv(f, mesh, policy);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += delta * fd[i];
    return out;
}

SaddleSystem system_spls(const Mesh& mesh, double eps, const Forcing& f,
                         const CompositePolicy& policy) {
    if (eps < 0.0) throw std::domain_error("system_spls: eps must be >= 0");
    const int n = mesh.n();
    const double h = mesh.h();
    const int dim = 2 * n - 1;

    // a0 on the P2 test space: vertex hats couple their neighbours, bubbles are
    // a0-orthogonal to the hats and to each other.
    BandMatrix A(dim, 2, 2);
    for (int i = 1; i <= n; ++i) A.set(SaddleSystem::bubble_index(i), SaddleSystem::bubble_index(i), 16.0 / (3.0 * h));
    for (int j = 1; j < n; ++j) {
        const int row = SaddleSystem::vertex_index(j);
        A.set(row, row, 2.0 / h);
        if (j > 1) A.set(row, SaddleSystem::vertex_index(j - 1), -1.0 / h);
        if (j < n - 1) A.set(row, SaddleSystem::vertex_index(j + 1), -1.0 / h);
    }

    // b(v, phi_j) = eps (phi_j', v') + (phi_j', v) for every P2 basis function v.
    // Against vertex tests these are the columns of (eps/h) S + C.
    std::vector<std::vector<std::pair<int, double>>> b_cols(n - 1);
    const double a = eps / h;
    for (int j = 1; j < n; ++j) {
        auto& col = b_cols[j - 1];
        if (j > 1) col.emplace_back(SaddleSystem::vertex_index(j - 1), -a + 0.5);
        col.emplace_back(SaddleSystem::vertex_index(j), 2.0 * a);
        if (j < n - 1) col.emplace_back(SaddleSystem::vertex_index(j + 1), -a - 0.5);
        col.emplace_back(SaddleSystem::bubble_index(j), 2.0 / 3.0);
        col.emplace_back(SaddleSystem::bubble_index(j + 1), -2.0 / 3.0);
    }

    std::vector<double> rhs(dim, 0.0);
    const auto fv = load_p1(f, mesh, policy);
    const auto fb = load_bubble(f, mesh, policy);
    for (int j = 1; j < n; ++j) rhs[SaddleSystem::vertex_index(j)] = fv[j - 1];
    for (int i = 1; i <= n; ++i) rhs[SaddleSystem::bubble_index(i)] = fb[i - 1];

    return SaddleSystem{std::move(A), std::move(b_cols), std::move(rhs), mesh, eps};
}

} // namespace convdiff
