#include "igac2/study.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

namespace igac2 {

namespace {

double ls_slope(const std::vector<double>& x, const std::vector<double>& y) {
    const size_t n = x.size();
    if (n < 2) return 0.0;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

StudyReport run_study(const MultiPatchDomain& dom, const StudyConfig& cfg) {
    StudyReport rep;
    rep.config = cfg;
    const Polynomial2D f = triharmonic_rhs(cfg.solution);
    const StudyRow* prev_ok = nullptr;

    for (int k : cfg.klist) {
        StudyRow row;
        row.k = k;
        row.h = 1.0 / (k + 1.0);
        const auto t0 = std::chrono::steady_clock::now();
        try {
            const BasisSpace space = assemble_space(dom, cfg.p, cfg.r, k);
            row.dim = space.dim();
            const AssembledSystem sys =
                assemble_system(space, [&](const Vec2& x) { return f(x[0], x[1]); });
            if (!cfg.matrix_export_base.empty())
                write_matrix_market(sys.S,
                                    cfg.matrix_export_base + ".k" + std::to_string(k) + ".mtx");
            const Eigen::VectorXd x = solve_spd(sys.S, sys.rhs, &row.solve);
            row.galerkin_residual =
                (sys.S * x - sys.rhs).norm() / std::max(sys.rhs.norm(), 1e-300);
            row.err = error_norms(space, x, cfg.solution);
            if (cfg.with_condition) {
                row.kappa_raw = condition_number(sys.S, false);
                row.kappa_jacobi = condition_number(sys.S, true);
            }
            row.ok = true;
        } catch (const std::exception& e) {
            row.ok = false;
            row.message = e.what();
        }
        row.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (row.ok && prev_ok) {
            for (int i = 0; i < 4; ++i)
                if (row.err[i] > 0.0 && prev_ok->err[i] > 0.0)
                    row.rate[i] =
                        std::log2(prev_ok->err[i] / row.err[i]) / std::log2(prev_ok->h / row.h);
        }
        rep.rows.push_back(std::move(row));
        if (rep.rows.back().ok) prev_ok = &rep.rows.back();
    }

    if (cfg.with_condition) {
        std::vector<double> lh, lraw, ljac;
        for (const auto& row : rep.rows)
            if (row.ok && row.kappa_raw > 0.0 && row.kappa_jacobi > 0.0) {
                lh.push_back(std::log2(row.h));
                lraw.push_back(std::log2(row.kappa_raw));
                ljac.push_back(std::log2(row.kappa_jacobi));
            }
        rep.kappa_slope_raw = ls_slope(lh, lraw);
        rep.kappa_slope_jacobi = ls_slope(lh, ljac);
    }
    return rep;
}

std::string study_csv(const StudyReport& report) {
    std::ostringstream out;
    out.precision(12);
    out << "k,h,dim,err_h0,err_h1,err_h2,err_h3,rate_h0,rate_h1,rate_h2,rate_h3,"
           "kappa_raw,kappa_jacobi,seconds,ok\n";
    for (const auto& r : report.rows) {
        out << r.k << "," << r.h << "," << r.dim;
        for (int i = 0; i < 4; ++i) out << "," << r.err[i];
        for (int i = 0; i < 4; ++i) out << "," << r.rate[i];
        out << "," << r.kappa_raw << "," << r.kappa_jacobi << "," << r.seconds << ","
            << (r.ok ? 1 : 0) << "\n";
    }
    return out.str();
}

std::string study_json(const StudyReport& report) {
    nlohmann::json j;
    j["p"] = report.config.p;
    j["r"] = report.config.r;
    j["kappa_slope_raw"] = report.kappa_slope_raw;
    j["kappa_slope_jacobi"] = report.kappa_slope_jacobi;
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.rows) {
        nlohmann::json rj;
        rj["k"] = r.k;
        rj["h"] = r.h;
        rj["dim"] = r.dim;
        rj["err"] = r.err;
        rj["rate"] = r.rate;
        rj["kappa_raw"] = r.kappa_raw;
        rj["kappa_jacobi"] = r.kappa_jacobi;
        rj["galerkin_residual"] = r.galerkin_residual;
        rj["cg_iterations"] = r.solve.iterations;
        rj["cg_residual"] = r.solve.residual;
        rj["used_dense"] = r.solve.used_dense;
        rj["seconds"] = r.seconds;
        rj["ok"] = r.ok;
        if (!r.ok) rj["message"] = r.message;
        rows.push_back(std::move(rj));
    }
    j["rows"] = std::move(rows);
    return j.dump(2);
}

}  // namespace igac2
