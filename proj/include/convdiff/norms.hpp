#pragma once

#include "convdiff/exact.hpp"
#include "convdiff/mesh.hpp"
#include "convdiff/quadrature.hpp"

#include <array>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>

namespace convdiff {

/// Raised when a norm or best-approximation problem degenerates (e.g. the
/// discrete optimal seminorm with eps = 0 on an even element count).
class DegenerateNormError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A scalar function on [0,1] together with its derivative.
struct Field {
    std::function<double(double)> value;
    std::function<double(double)> deriv;
};

Field field_of(const ExactSolution& sol);
Field field_of(const P1Function& uh);
Field field_difference(const Field& a, const Field& b);

enum class NormTag { L2, H1Semi, OptContinuous, OptDiscrete, OptPG, OptPGRaw, SD, Balanced };

/// Error-norm selector. delta defaults to 2h/3 once a mesh is bound;
/// exclude_right is the fraction of nodes dropped at the right boundary
/// (cutoff node m = n - ceil(fraction * n), integrals run over [0, x_m]).
struct NormKind {
    NormTag tag = NormTag::L2;
    double eps = 0.0;
    std::optional<double> delta;
    double exclude_right = 0.0;

    static NormKind l2();
    static NormKind h1();
    static NormKind opt_continuous(double eps);
    static NormKind opt_discrete(double eps);
    static NormKind opt_pg(double eps, std::optional<double> delta = std::nullopt);
    /// opt_pg without its 3/19 prefactor: sqrt((eps+delta)^2 |e|^2 + |P_h T e|^2).
    static NormKind opt_pg_raw(double eps, std::optional<double> delta = std::nullopt);
    static NormKind sd(double eps, std::optional<double> delta = std::nullopt);
    static NormKind balanced(double eps, std::optional<double> delta = std::nullopt);

    /// Parses the CLI spelling: l2, h1, opt, opt-h, opt-pg, opt-pg-raw, sd, balanced.
    static std::optional<NormKind> from_label(std::string_view label, double eps);
    std::string label() const;
};

/// Cutoff node index for a right-exclusion fraction.
int exclusion_cutoff(const Mesh& mesh, double fraction_right);

/// Action of the antisymmetric operator T: (Tu)(x) = x*mean - int_0^x u.
/// The derivative is mean - u(x). If mean is not supplied it is computed by
/// quadrature over [0,1].
Field T_apply(const Field& u, const CompositePolicy& policy,
              std::optional<double> mean = std::nullopt);

/// |T u|^2 = ||u||^2 - mean^2, evaluated as the L2 norm of (mean - u).
double t_image_seminorm_sq(const Field& u, const Mesh& mesh, const CompositePolicy& policy);

/// Squared discrete optimal seminorm |P_h T e|^2 =
/// (1/h) sum_i (int_elem e)^2 - (1/L) (int_0^L e)^2 over [0, x_m].
/// Small cancellation negatives are clamped to zero; negatives beyond
/// 1e-12 * ||e||^2 raise DegenerateNormError.
double opt_seminorm_h_sq(const std::function<double(double)>& e, const Mesh& mesh,
                         const CompositePolicy& policy, double exclude_right = 0.0);
double opt_seminorm_h(const std::function<double(double)>& e, const Mesh& mesh,
                      const CompositePolicy& policy, double exclude_right = 0.0);

/// Error norm || u - u_h ||_kind.
double norm_error(const Field& u, const P1Function& uh, const NormKind& kind,
                  const CompositePolicy& policy);

/// Norm of an arbitrary field (used for interpolant and best-approximation errors).
double norm_of(const Field& e, const Mesh& mesh, const NormKind& kind,
               const CompositePolicy& policy);

/// Best approximation of u in the given quadratic norm over the interior P1
/// coefficients (normal equations + stationarity gate). Exclusions are not
/// supported here. Throws DegenerateNormError when the Gram matrix is singular.
P1Function best_approx(const Field& u, const Mesh& mesh, const NormKind& kind,
                       const CompositePolicy& policy);

/// Returns (||u||_{*,h}^2, ||u||_*^2, ||u||_{*,h}^2 + (h/pi)^2 |u|^2); the
/// three values must be ordered lhs <= mid <= rhs.
std::array<double, 3> infsup_sandwich_check(const Field& u, const Mesh& mesh, double eps,
                                            const CompositePolicy& policy);

} // namespace convdiff
