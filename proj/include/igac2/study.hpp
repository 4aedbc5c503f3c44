#pragma once

#include <array>
#include <string>
#include <vector>

#include "igac2/assembly.hpp"
#include "igac2/solver.hpp"

namespace igac2 {

struct StudyConfig {
    int p = 5, r = 2;
    std::vector<int> klist;
    Polynomial2D solution;        // exact solution; rhs = -laplacian^3 of it
    bool with_condition = false;  // also estimate condition numbers
    std::string matrix_export_base;  // if set, write <base>.k<k>.mtx per level
};

struct StudyRow {
    int k = 0;
    double h = 0.0;
    int dim = 0;
    std::array<double, 4> err{};   // relative H^0..H^3 errors
    std::array<double, 4> rate{};  // log2 rates against the previous row (0 on the first)
    double kappa_raw = 0.0, kappa_jacobi = 0.0;
    double galerkin_residual = 0.0;  // |S x - rhs|_2 / |rhs|_2
    SolveReport solve;
    double seconds = 0.0;
    bool ok = false;
    std::string message;  // failure description when !ok
};

struct StudyReport {
    StudyConfig config;
    std::vector<StudyRow> rows;
    /// Least-squares slope of log2(kappa) against log2(h); expected around -6.
    double kappa_slope_raw = 0.0, kappa_slope_jacobi = 0.0;
};

/// Solve the sixth-order problem for each refinement level in cfg.klist and
/// collect errors, rates and (optionally) condition numbers. A failing level
/// is recorded in its row; the remaining levels still run.
StudyReport run_study(const MultiPatchDomain& dom, const StudyConfig& cfg);

std::string study_csv(const StudyReport& report);
std::string study_json(const StudyReport& report);

}  // namespace igac2
