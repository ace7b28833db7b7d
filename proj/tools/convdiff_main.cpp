#include "convdiff/experiments.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>

namespace {

using namespace convdiff;

struct CommonArgs {
    std::string method = "linear";
    std::string forcing = "1";
    std::vector<double> eps;
    std::string levels = "1:6";
    int n = 64;
    std::vector<std::string> norms;
    std::string delta = "auto";
    double exclude_right = 0.0;
    std::string format = "csv";
    std::string out;
};

std::pair<int, int> parse_levels(const std::string& range) {
    const auto colon = range.find(':');
    if (colon == std::string::npos) {
        const int v = std::stoi(range);
        return {v, v};
    }
    return {std::stoi(range.substr(0, colon)), std::stoi(range.substr(colon + 1))};
}

std::optional<double> parse_delta(const std::string& s) {
    if (s == "auto") return std::nullopt;
    return std::stod(s);
}

ReportFormat parse_format(const std::string& s) {
    if (s == "json") return ReportFormat::Json;
    if (s == "markdown") return ReportFormat::Markdown;
    return ReportFormat::Csv;
}

std::ostream& open_output(const std::string& path, std::ofstream& file) {
    if (path.empty()) return std::cout;
    file.open(path);
    if (!file) throw std::runtime_error("cannot open output file: " + path);
    return file;
}

int run_converge(const CommonArgs& args) {
    ExperimentConfig cfg;
    const auto method = method_from_label(args.method);
    if (!method) throw CLI::ValidationError("--method", "unknown method " + args.method);
    cfg.method = *method;
    const auto f = Forcing::from_label(args.forcing);
    if (!f) throw CLI::ValidationError("--f", "unknown forcing " + args.forcing);
    cfg.forcing = *f;
    cfg.eps_list = args.eps.empty() ? std::vector<double>{1e-6} : args.eps;
    std::tie(cfg.level_lo, cfg.level_hi) = parse_levels(args.levels);
    for (const auto& label : args.norms.empty() ? std::vector<std::string>{"l2"} : args.norms) {
        const auto kind = NormKind::from_label(label, 0.0);
        if (!kind) throw CLI::ValidationError("--norm", "unknown norm " + label);
        cfg.norms.push_back(kind->tag);
    }
    cfg.exclude_right = args.exclude_right;
    cfg.delta = parse_delta(args.delta);
    cfg.format = parse_format(args.format);

    const ConvergenceReport report = run_convergence(cfg);
    std::ofstream file;
    write_report(open_output(args.out, file), report, cfg.format);
    for (const auto& cell : report.cells)
        for (const auto& row : cell.rows)
            if (!row.failure.empty()) {
                std::cerr << "cell eps=" << cell.eps << " norm=" << cell.norm
                          << " level=" << row.level << " failed: " << row.failure << "\n";
            }
    return 0;
}

int run_solve(const CommonArgs& args) {
    const auto method = method_from_label(args.method);
    if (!method) throw CLI::ValidationError("--method", "unknown method " + args.method);
    const auto f = Forcing::from_label(args.forcing);
    if (!f) throw CLI::ValidationError("--f", "unknown forcing " + args.forcing);
    const double eps = args.eps.empty() ? 1e-6 : args.eps.front();

    const Mesh mesh(args.n);
    const auto policy = CompositePolicy::layered(eps);
    const auto sol = solve_method(*method, *f, eps, mesh, parse_delta(args.delta), policy);

    std::ofstream file;
    std::ostream& os = open_output(args.out, file);
    os << "x,u_h\n";
    for (int j = 0; j <= mesh.n(); ++j)
        os << mesh.node(j) << "," << sol.u.node_value(j) << "\n";
    return 0;
}

int run_figure(const CommonArgs& args) {
    const auto method = method_from_label(args.method);
    if (!method) throw CLI::ValidationError("--method", "unknown method " + args.method);
    const auto f = Forcing::from_label(args.forcing);
    if (!f) throw CLI::ValidationError("--f", "unknown forcing " + args.forcing);
    const double eps = args.eps.empty() ? 1e-6 : args.eps.front();

    const FigureData fig = dump_solution(*method, *f, eps, args.n, 512, true);
    std::ofstream file;
    write_figure_csv(open_output(args.out, file), fig);
    return 0;
}

bool check(bool ok, const char* what, int& failures) {
    std::printf("[%s] %s\n", ok ? "ok" : "FAIL", what);
    if (!ok) ++failures;
    return ok;
}

// Quick invariant sweep mirroring the property suite.
int run_verify() {
    int failures = 0;
    const auto policy = CompositePolicy::plain();

    {
        const auto S = matrix_S(4);
        const auto C = matrix_C(4);
        bool ok = S.get(0, 0) == 2 && S.get(0, 1) == -1 && S.get(1, 0) == -1 &&
                  C.get(0, 1) == 0.5 && C.get(1, 0) == -0.5 && C.get(1, 1) == 0.0;
        check(ok, "S and C stencils", failures);
    }
    {
        const Mesh mesh(16);
        double worst = 0.0;
        for (int i = 1; i <= mesh.n(); ++i) {
            const double a = mesh.node(i - 1), b = mesh.node(i);
            const double ib = integrate([&](double x) { return bubble(mesh, i, x); }, a, b, policy);
            const double ibp2 = integrate([&](double x) {
                const double d = bubble_deriv(mesh, i, x);
                return d * d;
            }, a, b, policy);
            worst = std::max(worst, std::abs(ib - 2.0 * mesh.h() / 3.0));
            worst = std::max(worst, std::abs(ibp2 - 16.0 / (3.0 * mesh.h())));
        }
        check(worst < 1e-12, "bubble integral identities", failures);
    }
    {
        std::mt19937 rng(7);
        std::uniform_real_distribution<double> dist(-1.0, 1.0);
        const Mesh mesh(12);
        double worst = 0.0;
        for (int rep = 0; rep < 10; ++rep) {
            std::vector<double> beta(mesh.n() - 1);
            for (auto& b : beta) b = dist(rng);
            std::vector<double> bub(mesh.n());
            for (int i = 1; i <= mesh.n(); ++i) {
                const double bl = i >= 2 ? beta[i - 2] : 0.0;
                const double br = i <= mesh.n() - 1 ? beta[i - 1] : 0.0;
                bub[i - 1] = br - bl;
            }
            const P2Function v(mesh, beta, bub);
            const P1Function w(mesh, beta);
            double a0v = 0.0, a0w = 0.0;
            for (int i = 1; i <= mesh.n(); ++i) {
                const double a = mesh.node(i - 1), b = mesh.node(i);
                a0v += integrate([&](double x) { const double d = v.deriv(x); return d * d; }, a, b, policy);
                a0w += integrate([&](double x) { const double d = w.deriv(x); return d * d; }, a, b, policy);
            }
            worst = std::max(worst, std::abs(a0v - 19.0 / 3.0 * a0w) / std::max(1.0, a0v));
        }
        check(worst < 1e-12, "|w + B|^2 = (19/3)|w|^2 on bubble-enriched test functions", failures);
    }
    {
        const Mesh mesh(8);
        const Field u{[](double x) { return std::sin(std::numbers::pi * x); },
                      [](double x) { return std::numbers::pi * std::cos(std::numbers::pi * x); }};
        const double t2 = t_image_seminorm_sq(u, mesh, policy);
        const double expect = 0.5 - 4.0 / (std::numbers::pi * std::numbers::pi);
        check(std::abs(t2 - expect) < 1e-10, "|Tu|^2 = ||u||^2 - mean^2", failures);
        const auto s = infsup_sandwich_check(u, mesh, 1e-2, policy);
        check(s[0] <= s[1] * (1 + 1e-10) && s[1] <= s[2] * (1 + 1e-10),
              "optimal-norm sandwich ordering", failures);
    }
    {
        const Mesh mesh(32);
        const auto f = Forcing::one();
        const auto pg = rhs_pg(f, mesh, policy);
        const auto sd = rhs_sd(f, mesh, default_delta(mesh), policy);
        double worst = 0.0;
        for (std::size_t i = 0; i < pg.size(); ++i)
            worst = std::max(worst, std::abs(pg[i] - sd[i]));
        check(worst < 1e-14, "PG and SD right-hand sides coincide for f = 1", failures);
    }
    {
        double worst = 0.0;
        for (const double eps : {1e-4, 1e-6, 1e-8, 1e-10}) {
            for (const auto& f : {Forcing::one(), Forcing::one_minus_two_x(), Forcing::two_x(),
                                  Forcing::cos_seven_pi_half()}) {
                const ExactSolution sol(f, eps);
                const auto xs = layer_graded_samples(eps, 1000);
                worst = std::max(worst, verify_residual(sol, xs));
            }
        }
        check(worst < 1e-9 * 3.0, "closed-form residual gate", failures);
    }

    if (failures == 0) std::printf("verify: all checks passed\n");
    return failures == 0 ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-element lab for -eps*u'' + u' = f on (0,1), u(0)=u(1)=0"};
    app.require_subcommand(1);

    CommonArgs args;
    auto add_common = [&](CLI::App* cmd, bool with_levels, bool with_n) {
        cmd->add_option("--method", args.method, "linear|spls|pg|sd");
        cmd->add_option("--f", args.forcing, "1|1-2x|2x|cos7pi2");
        cmd->add_option("--eps", args.eps, "singular perturbation parameter (repeatable)");
        if (with_levels) cmd->add_option("--levels", args.levels, "level range a:b (level i -> n = 2^(i+5))");
        if (with_n) cmd->add_option("--n", args.n, "element count");
        cmd->add_option("--delta", args.delta, "stabilization weight or 'auto' (= 2h/3)");
        cmd->add_option("--exclude-right", args.exclude_right, "fraction of nodes excluded at x=1");
        cmd->add_option("--out", args.out, "output path (default stdout)");
    };

    auto* solve = app.add_subcommand("solve", "solve one discrete system and print nodal values");
    add_common(solve, false, true);

    auto* converge = app.add_subcommand("converge", "run a convergence study");
    add_common(converge, true, false);
    converge->add_option("--norm", args.norms, "l2|h1|opt|opt-h|opt-pg|sd|balanced (repeatable)");
    converge->add_option("--format", args.format, "csv|json|markdown");

    auto* figure = app.add_subcommand("figure", "export solution samples with exact/reduced overlays");
    add_common(figure, false, true);

    app.add_subcommand("verify", "run the built-in invariant suite");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (solve->parsed()) return run_solve(args);
        if (converge->parsed()) return run_converge(args);
        if (figure->parsed()) return run_figure(args);
        return run_verify();
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 1;
    }
}
