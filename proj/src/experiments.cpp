#include "convdiff/experiments.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

namespace convdiff {

std::optional<Method> method_from_label(std::string_view label) {
    if (label == "linear") return Method::Linear;
    if (label == "spls") return Method::Spls;
    if (label == "pg") return Method::Pg;
    if (label == "sd") return Method::Sd;
    return std::nullopt;
}

std::string_view method_label(Method m) {
    switch (m) {
        case Method::Linear: return "linear";
        case Method::Spls: return "spls";
        case Method::Pg: return "pg";
        case Method::Sd: return "sd";
    }
    return "?";
}

MethodSolution solve_method(Method method, const Forcing& f, double eps, const Mesh& mesh,
                            std::optional<double> delta, const CompositePolicy& policy) {
    switch (method) {
        case Method::Linear: {
            auto sys = system_standard(mesh, eps);
            auto rhs = rhs_standard(f, mesh, policy);
            return MethodSolution{P1Function(mesh, band_solve(sys, rhs).x), std::nullopt};
        }
        case Method::Pg: {
            const double d = delta ? *delta : default_delta(mesh);
            auto sys = system_pg_sd(mesh, eps, d);
            auto rhs = rhs_pg(f, mesh, policy);
            return MethodSolution{P1Function(mesh, band_solve(sys, rhs).x), std::nullopt};
        }
        case Method::Sd: {
            // The streamline-diffusion runs pair the stabilized matrix with the
            // plain load vector; the delta-weighted load term is available
            // separately through rhs_sd.
            const double d = delta ? *delta : default_delta(mesh);
            auto sys = system_pg_sd(mesh, eps, d);
            auto rhs = rhs_standard(f, mesh, policy);
            return MethodSolution{P1Function(mesh, band_solve(sys, rhs).x), std::nullopt};
        }
        case Method::Spls: {
            auto sol = saddle_solve(system_spls(mesh, eps, f, policy));
            return MethodSolution{std::move(sol.u), std::move(sol.w)};
        }
    }
    throw std::logic_error("solve_method: unreachable");
}

int level_elements(int level) {
    if (level < 1 || level > 20) throw std::invalid_argument("level out of range");
    return 1 << (level + 5);
}

std::vector<double> compute_order(const std::vector<double>& errors) {
    std::vector<double> order(errors.size(), 0.0);
    for (std::size_t i = 0; i < errors.size(); ++i) {
        if (!(errors[i] > 0.0))
            throw std::domain_error("compute_order: errors must be positive");
        if (i > 0) order[i] = std::log2(errors[i - 1] / errors[i]);
    }
    return order;
}

ConvergenceReport run_convergence(const ExperimentConfig& cfg) {
    if (cfg.level_lo < 1 || cfg.level_hi < cfg.level_lo)
        throw std::invalid_argument("run_convergence: bad level range");
    if (cfg.eps_list.empty() || cfg.norms.empty())
        throw std::invalid_argument("run_convergence: need at least one eps and one norm");

    ConvergenceReport report;
    report.method = std::string(method_label(cfg.method));
    report.forcing = std::string(cfg.forcing.label());
    report.exclude_right = cfg.exclude_right;
    report.delta = cfg.delta ? std::to_string(*cfg.delta) : std::string("auto");
    report.quad_points = CompositePolicy::default_points();
    report.version = CONVDIFF_VERSION;

    for (const double eps : cfg.eps_list) {
        std::vector<ConvergenceCell> cells(cfg.norms.size());
        for (std::size_t k = 0; k < cfg.norms.size(); ++k) {
            cells[k].eps = eps;
            NormKind kind{cfg.norms[k], eps, cfg.delta, cfg.exclude_right};
            cells[k].norm = kind.label();
        }

        for (int level = cfg.level_lo; level <= cfg.level_hi; ++level) {
            const Mesh mesh(level_elements(level));
            LevelEntry base;
            base.level = level;
            base.n = mesh.n();
            base.h = mesh.h();

            std::string failure;
            std::optional<P1Function> uh;
            std::optional<ExactSolution> exact;
            const CompositePolicy policy = CompositePolicy::layered(eps);
            try {
                if (!cfg.forcing.has_exact())
                    throw std::invalid_argument("no exact solution for custom forcing");
                exact.emplace(cfg.forcing, eps);
                uh = solve_method(cfg.method, cfg.forcing, eps, mesh, cfg.delta, policy).u;
            } catch (const std::exception& ex) {
                failure = ex.what();
            }

            for (std::size_t k = 0; k < cfg.norms.size(); ++k) {
                LevelEntry entry = base;
                if (failure.empty()) {
                    NormKind kind{cfg.norms[k], eps, cfg.delta, cfg.exclude_right};
                    try {
                        entry.error = norm_error(field_of(*exact), *uh, kind, policy);
                    } catch (const std::exception& ex) {
                        entry.failure = ex.what();
                    }
                } else {
                    entry.failure = failure;
                }
                cells[k].rows.push_back(entry);
            }
        }

        for (auto& cell : cells) {
            for (std::size_t i = 1; i < cell.rows.size(); ++i) {
                const auto& prev = cell.rows[i - 1];
                auto& cur = cell.rows[i];
                if (prev.failure.empty() && cur.failure.empty() && prev.error > 0.0 && cur.error > 0.0)
                    cur.order = std::log2(prev.error / cur.error);
            }
            report.cells.push_back(std::move(cell));
        }
    }
    return report;
}

namespace {

std::string format_double(double v) {
    std::ostringstream os;
    os.precision(12);
    os << v;
    return os.str();
}

void write_csv(std::ostream& os, const ConvergenceReport& r) {
    for (const auto& cell : r.cells) {
        os << "# method=" << r.method << ",f=" << r.forcing << ",eps=" << format_double(cell.eps)
           << ",norm=" << cell.norm << ",exclude-right=" << format_double(r.exclude_right)
           << ",delta=" << r.delta << ",quad-points=" << r.quad_points
           << ",version=" << r.version << "\n";
        os << "level,h,error,order\n";
        for (const auto& row : cell.rows) {
            os << row.level << "," << format_double(row.h) << ",";
            if (row.failure.empty())
                os << format_double(row.error) << "," << format_double(row.order);
            else
                os << "failed: " << row.failure << ",";
            os << "\n";
        }
        os << "\n";
    }
}

void write_json(std::ostream& os, const ConvergenceReport& r) {
    nlohmann::json meta{{"method", r.method},
                        {"f", r.forcing},
                        {"exclude_right", r.exclude_right},
                        {"delta", r.delta},
                        {"quad_points", r.quad_points},
                        {"version", r.version}};
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& cell : r.cells) {
        nlohmann::json rows = nlohmann::json::array();
        for (const auto& row : cell.rows) {
            nlohmann::json j{{"level", row.level}, {"n", row.n}, {"h", row.h}};
            if (row.failure.empty()) {
                j["error"] = row.error;
                j["order"] = row.order;
            } else {
                j["failure"] = row.failure;
            }
            rows.push_back(std::move(j));
        }
        cells.push_back(nlohmann::json{{"eps", cell.eps}, {"norm", cell.norm}, {"rows", std::move(rows)}});
    }
    os << nlohmann::json{{"meta", std::move(meta)}, {"cells", std::move(cells)}}.dump(2) << "\n";
}

void write_markdown(std::ostream& os, const ConvergenceReport& r) {
    for (const auto& cell : r.cells) {
        os << "### " << r.method << ", f = " << r.forcing << ", eps = " << format_double(cell.eps)
           << ", norm = " << cell.norm << "\n\n";
        os << "| level | h | error | order |\n|---|---|---|---|\n";
        for (const auto& row : cell.rows) {
            os << "| " << row.level << " | " << format_double(row.h) << " | ";
            if (row.failure.empty()) {
                char buf[64];
                std::snprintf(buf, sizeof buf, "%.3e", row.error);
                os << buf << " | ";
                if (row.order == 0.0 && &row == &cell.rows.front())
                    os << "-";
                else {
                    std::snprintf(buf, sizeof buf, "%.2f", row.order);
                    os << buf;
                }
                os << " |\n";
            } else {
                os << "failed: " << row.failure << " | |\n";
            }
        }
        os << "\n";
    }
}

} // namespace

void write_report(std::ostream& os, const ConvergenceReport& report, ReportFormat format) {
    switch (format) {
        case ReportFormat::Csv: write_csv(os, report); return;
        case ReportFormat::Json: write_json(os, report); return;
        case ReportFormat::Markdown: write_markdown(os, report); return;
    }
}

FigureData dump_solution(Method method, const Forcing& f, double eps, int n,
                         int sample_count, bool exact_overlay) {
    const Mesh mesh(n);
    const CompositePolicy policy = CompositePolicy::layered(eps);

    MethodSolution sol = [&] {
        if (eps > 0.0) return solve_method(method, f, eps, mesh, std::nullopt, policy);
        // eps = 0: the simplified systems. Singular cases (linear method with an
        // even element count) surface as SingularMatrixError for the caller.
        return solve_method(method, f, 0.0, mesh, std::nullopt, policy);
    }();

    const bool overlay = exact_overlay && f.has_exact() && eps > 0.0;
    std::optional<ExactSolution> exact;
    if (overlay) exact.emplace(f, eps);
    const auto w = f.has_exact() ? reduced_w(f) : std::function<double(double)>();
    const auto theta = f.has_exact() ? reduced_theta(f) : std::function<double(double)>();
    const double nan = std::numeric_limits<double>::quiet_NaN();

    std::vector<double> xs;
    xs.reserve(n + 1 + sample_count);
    for (int j = 0; j <= n; ++j) xs.push_back(mesh.node(j));
    for (int k = 1; k < sample_count; ++k) xs.push_back(static_cast<double>(k) / sample_count);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());

    FigureData fig;
    fig.has_exact = overlay;
    for (const double x : xs) {
        fig.rows.push_back({x, sol.u(x), overlay ? exact->u(x) : nan,
                            w ? w(x) : nan, theta ? theta(x) : nan});
    }
    return fig;
}

void write_figure_csv(std::ostream& os, const FigureData& fig) {
    os << "x,u_h,u,w,theta\n";
    for (const auto& row : fig.rows) {
        os << format_double(row[0]) << "," << format_double(row[1]);
        for (int c = 2; c < 5; ++c) {
            os << ",";
            if (!std::isnan(row[c])) os << format_double(row[c]);
        }
        os << "\n";
    }
}

} // namespace convdiff
