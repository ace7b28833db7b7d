#include "convdiff/norms.hpp"

#include "convdiff/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace convdiff {

Field field_of(const ExactSolution& sol) {
    return Field{[sol](double x) { return sol.u(x); },
                 [sol](double x) { return sol.du(x); }};
}

Field field_of(const P1Function& uh) {
    return Field{[uh](double x) { return uh(x); },
                 [uh](double x) { return uh.deriv(x); }};
}

Field field_difference(const Field& a, const Field& b) {
    return Field{[av = a.value, bv = b.value](double x) { return av(x) - bv(x); },
                 [ad = a.deriv, bd = b.deriv](double x) { return ad(x) - bd(x); }};
}

NormKind NormKind::l2() { return NormKind{NormTag::L2}; }
NormKind NormKind::h1() { return NormKind{NormTag::H1Semi}; }
NormKind NormKind::opt_continuous(double eps) { return NormKind{NormTag::OptContinuous, eps}; }
NormKind NormKind::opt_discrete(double eps) { return NormKind{NormTag::OptDiscrete, eps}; }
NormKind NormKind::opt_pg(double eps, std::optional<double> delta) {
    return NormKind{NormTag::OptPG, eps, delta};
}
NormKind NormKind::opt_pg_raw(double eps, std::optional<double> delta) {
    return NormKind{NormTag::OptPGRaw, eps, delta};
}
NormKind NormKind::sd(double eps, std::optional<double> delta) {
    return NormKind{NormTag::SD, eps, delta};
}
NormKind NormKind::balanced(double eps, std::optional<double> delta) {
    return NormKind{NormTag::Balanced, eps, delta};
}

std::optional<NormKind> NormKind::from_label(std::string_view label, double eps) {
    if (label == "l2") return l2();
    if (label == "h1") return h1();
    if (label == "opt") return opt_continuous(eps);
    if (label == "opt-h") return opt_discrete(eps);
    if (label == "opt-pg") return opt_pg(eps);
    if (label == "opt-pg-raw") return opt_pg_raw(eps);
    if (label == "sd") return sd(eps);
    if (label == "balanced") return balanced(eps);
    return std::nullopt;
}

std::string NormKind::label() const {
    switch (tag) {
        case NormTag::L2: return "l2";
        case NormTag::H1Semi: return "h1";
        case NormTag::OptContinuous: return "opt";
        case NormTag::OptDiscrete: return "opt-h";
        case NormTag::OptPG: return "opt-pg";
        case NormTag::OptPGRaw: return "opt-pg-raw";
        case NormTag::SD: return "sd";
        case NormTag::Balanced: return "balanced";
    }
    return "?";
}

int exclusion_cutoff(const Mesh& mesh, double fraction_right) {
    if (fraction_right < 0.0 || fraction_right >= 1.0)
        throw std::domain_error("exclusion_cutoff: fraction must be in [0,1)");
    const int n = mesh.n();
    const int cut = n - static_cast<int>(std::ceil(fraction_right * n));
    if (cut < 1) throw std::domain_error("exclusion_cutoff: nothing left of the domain");
    return cut;
}

Field T_apply(const Field& u, const CompositePolicy& policy, std::optional<double> mean) {
    const double ubar = mean ? *mean : integrate(u.value, 0.0, 1.0, policy);
    return Field{[uv = u.value, ubar, policy](double x) {
                     if (x <= 0.0) return 0.0;
                     return x * ubar - integrate(uv, 0.0, x, policy);
                 },
                 [uv = u.value, ubar](double x) { return ubar - uv(x); }};
}

double t_image_seminorm_sq(const Field& u, const Mesh& mesh, const CompositePolicy& policy) {
    double ubar = 0.0;
    for (int i = 1; i <= mesh.n(); ++i)
        ubar += integrate(u.value, mesh.node(i - 1), mesh.node(i), policy);
    double out = 0.0;
    for (int i = 1; i <= mesh.n(); ++i)
        out += integrate([&](double x) { const double d = ubar - u.value(x); return d * d; },
                         mesh.node(i - 1), mesh.node(i), policy);
    return out;
}

namespace {

struct ErrorIntegrals {
    double h1_sq = 0.0;      // int e'^2
    double l2_sq = 0.0;      // int e^2
    double total = 0.0;      // int e
    std::vector<double> elem; // per-element int e
    int cut = 0;             // last included element
    double length = 0.0;     // x_cut
};

ErrorIntegrals accumulate(const Field& e, const Mesh& mesh, double exclude_right,
                          const CompositePolicy& policy, bool need_deriv) {
    ErrorIntegrals out;
    out.cut = exclusion_cutoff(mesh, exclude_right);
    out.length = out.cut == mesh.n() ? 1.0 : out.cut * mesh.h();
    out.elem.resize(out.cut);
    for (int i = 1; i <= out.cut; ++i) {
        const double a = mesh.node(i - 1);
        const double b = mesh.node(i);
        if (need_deriv)
            out.h1_sq += integrate([&](double x) { const double d = e.deriv(x); return d * d; }, a, b, policy);
        out.l2_sq += integrate([&](double x) { const double v = e.value(x); return v * v; }, a, b, policy);
        out.elem[i - 1] = integrate(e.value, a, b, policy);
        out.total += out.elem[i - 1];
    }
    return out;
}

double opt_sem_from(const ErrorIntegrals& acc, const Mesh& mesh) {
    double sum_sq = 0.0;
    for (const double v : acc.elem) sum_sq += v * v;
    const double mean_term = acc.total * acc.total / acc.length;
    double val = sum_sq / mesh.h() - mean_term;
    if (val < 0.0) {
        // Cancellation slack: 1e-12 ||e||^2 plus the roundoff floor of the two
        // subtracted quantities.
        const double clamp = 1e-12 * std::max(acc.l2_sq, 1e-300) +
                             1e-13 * (sum_sq / mesh.h() + mean_term);
        if (val < -clamp)
            throw DegenerateNormError("opt_seminorm_h: squared seminorm negative beyond cancellation tolerance");
        val = 0.0;
    }
    return val;
}

double delta_or_default(const NormKind& kind, const Mesh& mesh) {
    return kind.delta ? *kind.delta : 2.0 * mesh.h() / 3.0;
}

} // namespace

double opt_seminorm_h_sq(const std::function<double(double)>& e, const Mesh& mesh,
                         const CompositePolicy& policy, double exclude_right) {
    const Field f{e, [](double) { return 0.0; }};
    const ErrorIntegrals acc = accumulate(f, mesh, exclude_right, policy, false);
    return opt_sem_from(acc, mesh);
}

double opt_seminorm_h(const std::function<double(double)>& e, const Mesh& mesh,
                      const CompositePolicy& policy, double exclude_right) {
    return std::sqrt(opt_seminorm_h_sq(e, mesh, policy, exclude_right));
}

double norm_of(const Field& e, const Mesh& mesh, const NormKind& kind,
               const CompositePolicy& policy) {
    const bool need_deriv = kind.tag != NormTag::L2;
    const ErrorIntegrals acc = accumulate(e, mesh, kind.exclude_right, policy, need_deriv);
    const double delta = delta_or_default(kind, mesh);
    const double eps = kind.eps;
    switch (kind.tag) {
        case NormTag::L2:
            return std::sqrt(acc.l2_sq);
        case NormTag::H1Semi:
            return std::sqrt(acc.h1_sq);
        case NormTag::OptContinuous:
            return std::sqrt(std::max(0.0, eps * eps * acc.h1_sq + acc.l2_sq -
                                               acc.total * acc.total / acc.length));
        case NormTag::OptDiscrete:
            return std::sqrt(eps * eps * acc.h1_sq + opt_sem_from(acc, mesh));
        case NormTag::OptPG: {
            const double c = eps + delta;
            return std::sqrt(3.0 / 19.0 * (c * c * acc.h1_sq + opt_sem_from(acc, mesh)));
        }
        case NormTag::OptPGRaw: {
            const double c = eps + delta;
            return std::sqrt(c * c * acc.h1_sq + opt_sem_from(acc, mesh));
        }
        case NormTag::SD:
            return std::sqrt((eps + delta) * acc.h1_sq);
        case NormTag::Balanced: {
            const double c = eps + delta;
            return std::sqrt(c * c * acc.h1_sq + acc.l2_sq);
        }
    }
    throw std::logic_error("norm_of: unreachable");
}

double norm_error(const Field& u, const P1Function& uh, const NormKind& kind,
                  const CompositePolicy& policy) {
    return norm_of(field_difference(u, field_of(uh)), uh.mesh(), kind, policy);
}

namespace {

// Dense column-major Gram matrix of the norm's bilinear form over the interior
// P1 coefficients, plus the matching right-hand side against u.
struct QuadraticForm {
    std::vector<double> gram; // (n-1)^2 col-major
    std::vector<double> rhs;  // n-1
};

QuadraticForm normal_equations(const Field& u, const Mesh& mesh, const NormKind& kind,
                               const CompositePolicy& policy) {
    const int n = mesh.n();
    const int dim = n - 1;
    const double h = mesh.h();
    const double delta = delta_or_default(kind, mesh);
    const double eps = kind.eps;

    double wK = 0.0, wM = 0.0, wT = 0.0, wMean = 0.0, scale = 1.0;
    switch (kind.tag) {
        case NormTag::L2: wM = 1.0; break;
        case NormTag::H1Semi: wK = 1.0; break;
        case NormTag::OptContinuous: wK = eps * eps; wM = 1.0; wMean = 1.0; break;
        case NormTag::OptDiscrete: wK = eps * eps; wT = 1.0; break;
        case NormTag::OptPG:
            wK = (eps + delta) * (eps + delta); wT = 1.0; scale = 3.0 / 19.0; break;
        case NormTag::OptPGRaw:
            wK = (eps + delta) * (eps + delta); wT = 1.0; break;
        case NormTag::SD: wK = eps + delta; break;
        case NormTag::Balanced: wK = (eps + delta) * (eps + delta); wM = 1.0; break;
    }

    QuadraticForm q;
    q.gram.assign(static_cast<std::size_t>(dim) * dim, 0.0);
    q.rhs.assign(dim, 0.0);
    auto at = [&](int i, int j) -> double& {
        return q.gram[static_cast<std::size_t>(j) * dim + i];
    };

    // Stiffness and mass tridiagonals.
    for (int i = 0; i < dim; ++i) {
        at(i, i) += wK * 2.0 / h + wM * 4.0 * h / 6.0;
        if (i + 1 < dim) {
            at(i, i + 1) += wK * (-1.0 / h) + wM * h / 6.0;
            at(i + 1, i) += wK * (-1.0 / h) + wM * h / 6.0;
        }
    }
    // Element-mean quadratic (1/h) sum (int e)^2: int_elem_i phi_j = h/2 for
    // j = i-1, i.
    if (wT != 0.0) {
        for (int el = 1; el <= n; ++el) {
            const int jl = el - 1, jr = el; // global node indices
            if (jl >= 1) at(jl - 1, jl - 1) += wT * h / 4.0;
            if (jr <= n - 1) at(jr - 1, jr - 1) += wT * h / 4.0;
            if (jl >= 1 && jr <= n - 1) {
                at(jl - 1, jr - 1) += wT * h / 4.0;
                at(jr - 1, jl - 1) += wT * h / 4.0;
            }
        }
    }
    // Rank-one mean corrections: int phi_j = h for every interior j.
    if (wT != 0.0 || wMean != 0.0) {
        const double c = (wT + wMean) * h * h;
        for (int j = 0; j < dim; ++j)
            for (int i = 0; i < dim; ++i) at(i, j) -= c;
    }

    // Right-hand side: same bilinear forms paired with u.
    std::vector<double> elem_int(n), elem_dint(n);
    for (int i = 1; i <= n; ++i) {
        const double a = mesh.node(i - 1), b = mesh.node(i);
        elem_int[i - 1] = integrate(u.value, a, b, policy);
        if (wK != 0.0) elem_dint[i - 1] = integrate(u.deriv, a, b, policy);
    }
    double total = 0.0;
    for (const double v : elem_int) total += v;

    for (int j = 1; j < n; ++j) {
        double r = 0.0;
        if (wK != 0.0) r += wK * (elem_dint[j - 1] - elem_dint[j]) / h;
        if (wM != 0.0) {
            const auto g = [&](double x) { return u.value(x) * hat(mesh, j, x); };
            r += wM * (integrate(g, mesh.node(j - 1), mesh.node(j), policy) +
                       integrate(g, mesh.node(j), mesh.node(j + 1), policy));
        }
        if (wT != 0.0) r += wT * 0.5 * (elem_int[j - 1] + elem_int[j]);
        if (wT != 0.0 || wMean != 0.0) r -= (wT + wMean) * total * h;
        q.rhs[j - 1] = r;
    }

    if (scale != 1.0) {
        for (double& v : q.gram) v *= scale;
        for (double& v : q.rhs) v *= scale;
    }
    return q;
}

} // namespace

P1Function best_approx(const Field& u, const Mesh& mesh, const NormKind& kind,
                       const CompositePolicy& policy) {
    if (kind.exclude_right != 0.0)
        throw std::invalid_argument("best_approx: subdomain exclusion not supported");
    QuadraticForm q = normal_equations(u, mesh, kind, policy);
    const int dim = mesh.n() - 1;

    auto solved = dense_spd_solve_checked(q.gram, dim, q.rhs);
    if (!solved)
        throw DegenerateNormError("best_approx: Gram matrix singular (degenerate norm on this mesh)");
    std::vector<double> coeffs = std::move(*solved);

    // Stationarity gate: grad = G c - r must vanish relative to the data scale.
    double grad_inf = 0.0, rhs_inf = 0.0, gc_inf = 0.0;
    for (int i = 0; i < dim; ++i) {
        double gi = 0.0;
        for (int j = 0; j < dim; ++j)
            gi += q.gram[static_cast<std::size_t>(j) * dim + i] * coeffs[j];
        gc_inf = std::max(gc_inf, std::abs(gi));
        rhs_inf = std::max(rhs_inf, std::abs(q.rhs[i]));
        grad_inf = std::max(grad_inf, std::abs(gi - q.rhs[i]));
    }
    const double gate = 1e-8 * std::max({rhs_inf, gc_inf, 1e-300});
    if (grad_inf > gate)
        throw DegenerateNormError("best_approx: stationarity check failed (degenerate norm)");
    return P1Function(mesh, std::move(coeffs));
}

std::array<double, 3> infsup_sandwich_check(const Field& u, const Mesh& mesh, double eps,
                                            const CompositePolicy& policy) {
    const ErrorIntegrals acc = accumulate(u, mesh, 0.0, policy, true);
    const double lhs = eps * eps * acc.h1_sq + opt_sem_from(acc, mesh);
    const double mid = eps * eps * acc.h1_sq + acc.l2_sq - acc.total * acc.total;
    const double cp = 1.0 / std::numbers::pi;
    const double rhs = lhs + cp * cp * mesh.h() * mesh.h() * acc.h1_sq;
    return {lhs, mid, rhs};
}

} // namespace convdiff
