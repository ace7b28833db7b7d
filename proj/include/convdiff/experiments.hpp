#pragma once

#include "convdiff/exact.hpp"
#include "convdiff/linalg.hpp"
#include "convdiff/norms.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace convdiff {

enum class Method { Linear, Spls, Pg, Sd };

std::optional<Method> method_from_label(std::string_view label); // linear|spls|pg|sd
std::string_view method_label(Method m);

/// Discrete solution of one method on one mesh. For SPLS the residual variable
/// w is carried along.
struct MethodSolution {
    P1Function u;
    std::optional<P2Function> w;
};

MethodSolution solve_method(Method method, const Forcing& f, double eps, const Mesh& mesh,
                            std::optional<double> delta, const CompositePolicy& policy);

enum class ReportFormat { Csv, Json, Markdown };

/// Convergence-study configuration. Level i uses n = 2^(i+5) elements.
struct ExperimentConfig {
    Method method = Method::Linear;
    Forcing forcing = Forcing::one();
    std::vector<double> eps_list;
    int level_lo = 1;
    int level_hi = 6;
    std::vector<NormTag> norms;
    double exclude_right = 0.0;
    std::optional<double> delta;      // nullopt = 2h/3 per level
    ReportFormat format = ReportFormat::Csv;
};

int level_elements(int level); // n = 2^(level+5)

struct LevelEntry {
    int level = 0;
    int n = 0;
    double h = 0.0;
    double error = 0.0;
    double order = 0.0;             // 0.0 sentinel on the first level
    std::string failure;            // nonempty if the solve failed (e.g. singular)
};

/// One (method, forcing, eps, norm) cell of the study.
struct ConvergenceCell {
    double eps = 0.0;
    std::string norm;
    std::vector<LevelEntry> rows;
};

struct ConvergenceReport {
    std::string method;
    std::string forcing;
    double exclude_right = 0.0;
    std::string delta;              // "auto" or a number
    int quad_points = 5;
    std::string version;
    std::vector<ConvergenceCell> cells;
};

ConvergenceReport run_convergence(const ExperimentConfig& cfg);

/// order[0] = 0 sentinel; order[i] = log2(E_{i-1}/E_i). Throws on nonpositive errors.
std::vector<double> compute_order(const std::vector<double>& errors);

void write_report(std::ostream& os, const ConvergenceReport& report, ReportFormat format);

/// Sampled solution table for figure export: columns x, u_h, u (NaN when no
/// exact solution applies), reduced w, reduced theta.
struct FigureData {
    bool has_exact = false;
    std::vector<std::array<double, 5>> rows;
};

FigureData dump_solution(Method method, const Forcing& f, double eps, int n,
                         int sample_count, bool exact_overlay);

void write_figure_csv(std::ostream& os, const FigureData& fig);

} // namespace convdiff
