#include "convdiff/experiments.hpp"

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

namespace py = pybind11;
using namespace convdiff;

namespace {

Forcing forcing_from(const std::string& label) {
    const auto f = Forcing::from_label(label);
    if (!f) throw py::value_error("unknown forcing: " + label + " (use 1|1-2x|2x|cos7pi2)");
    return *f;
}

Method method_from(const std::string& label) {
    const auto m = method_from_label(label);
    if (!m) throw py::value_error("unknown method: " + label + " (use linear|spls|pg|sd)");
    return *m;
}

NormKind norm_from(const std::string& label, double eps, std::optional<double> delta,
                   double exclude_right) {
    auto kind = NormKind::from_label(label, eps);
    if (!kind) throw py::value_error("unknown norm: " + label);
    kind->delta = delta;
    kind->exclude_right = exclude_right;
    return *kind;
}

std::vector<double> solve_nodal(const std::string& method, const std::string& f, double eps, int n,
                                std::optional<double> delta) {
    const Mesh mesh(n);
    const auto sol = solve_method(method_from(method), forcing_from(f), eps, mesh, delta,
                                  CompositePolicy::layered(eps));
    std::vector<double> out(n + 1, 0.0);
    for (int j = 0; j <= n; ++j) out[j] = sol.u.node_value(j);
    return out;
}

double solve_error(const std::string& method, const std::string& f, double eps, int n,
                   const std::string& norm, double exclude_right, std::optional<double> delta) {
    const Mesh mesh(n);
    const Forcing forcing = forcing_from(f);
    const auto policy = CompositePolicy::layered(eps);
    const auto sol = solve_method(method_from(method), forcing, eps, mesh, delta, policy);
    const ExactSolution exact(forcing, eps);
    return norm_error(field_of(exact), sol.u, norm_from(norm, eps, delta, exclude_right), policy);
}

py::dict converge(const std::string& method, const std::string& f, double eps,
                  const std::string& norm, int level_lo, int level_hi, double exclude_right,
                  std::optional<double> delta) {
    ExperimentConfig cfg;
    cfg.method = method_from(method);
    cfg.forcing = forcing_from(f);
    cfg.eps_list = {eps};
    cfg.level_lo = level_lo;
    cfg.level_hi = level_hi;
    cfg.norms = {norm_from(norm, eps, delta, exclude_right).tag};
    cfg.exclude_right = exclude_right;
    cfg.delta = delta;
    const auto report = run_convergence(cfg);
    py::list levels, errors, orders;
    for (const auto& row : report.cells.at(0).rows) {
        if (!row.failure.empty()) throw std::runtime_error("level failed: " + row.failure);
        levels.append(row.level);
        errors.append(row.error);
        orders.append(row.order);
    }
    py::dict out;
    out["levels"] = levels;
    out["errors"] = errors;
    out["orders"] = orders;
    return out;
}

py::dict figure(const std::string& method, const std::string& f, double eps, int n, int samples) {
    const auto fig = dump_solution(method_from(method), forcing_from(f), eps, n, samples, true);
    py::list x, uh, u, w, theta;
    for (const auto& row : fig.rows) {
        x.append(row[0]);
        uh.append(row[1]);
        u.append(row[2]);
        w.append(row[3]);
        theta.append(row[4]);
    }
    py::dict out;
    out["x"] = x;
    out["u_h"] = uh;
    out["u"] = u;
    out["w"] = w;
    out["theta"] = theta;
    return out;
}

} // namespace

PYBIND11_MODULE(_convdiff, m) {
    m.doc() = "Finite-element lab for the 1D convection-diffusion model problem "
              "-eps*u'' + u' = f with homogeneous Dirichlet conditions";

    m.def("solve", &solve_nodal, py::arg("method"), py::arg("f"), py::arg("eps"), py::arg("n"),
          py::arg("delta") = std::nullopt,
          "Nodal values (including boundary zeros) of one discrete solution");

    m.def("error", &solve_error, py::arg("method"), py::arg("f"), py::arg("eps"), py::arg("n"),
          py::arg("norm"), py::arg("exclude_right") = 0.0, py::arg("delta") = std::nullopt,
          "Error of a discrete solution against the exact solution in a named norm");

    m.def("converge", &converge, py::arg("method"), py::arg("f"), py::arg("eps"), py::arg("norm"),
          py::arg("level_lo") = 1, py::arg("level_hi") = 6, py::arg("exclude_right") = 0.0,
          py::arg("delta") = std::nullopt, "Convergence study: levels, errors, observed orders");

    m.def("figure", &figure, py::arg("method"), py::arg("f"), py::arg("eps"), py::arg("n"),
          py::arg("samples") = 512, "Solution samples with exact/reduced overlays");

    m.def(
        "exact_u",
        [](const std::string& f, double eps, double x) { return ExactSolution(forcing_from(f), eps).u(x); },
        py::arg("f"), py::arg("eps"), py::arg("x"));

    m.def(
        "reduced_w",
        [](const std::string& f, double x) { return reduced_w(forcing_from(f))(x); },
        py::arg("f"), py::arg("x"));

    m.def(
        "reduced_theta",
        [](const std::string& f, double x) { return reduced_theta(forcing_from(f))(x); },
        py::arg("f"), py::arg("x"));

    m.def(
        "layer_ratio", [](double x, double eps) { return layer_ratio(x, eps); }, py::arg("x"),
        py::arg("eps"));

    m.def(
        "max_residual",
        [](const std::string& f, double eps, int samples) {
            const ExactSolution sol(forcing_from(f), eps);
            return verify_residual(sol, layer_graded_samples(eps, samples));
        },
        py::arg("f"), py::arg("eps"), py::arg("samples") = 1000,
        "Max |-eps*u'' + u' - f| of the closed form over layer-graded samples");
}
