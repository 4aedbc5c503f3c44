#include "igac2/solver.hpp"

#include <Eigen/Dense>
#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseCholesky>
#include <cmath>

namespace igac2 {

namespace {

using SpMat = Eigen::SparseMatrix<double>;

SpMat jacobi_scaled(const SpMat& A) {
    const int n = static_cast<int>(A.rows());
    Eigen::VectorXd dinv(n);
    for (int i = 0; i < n; ++i) {
        const double d = A.coeff(i, i);
        if (d <= 0.0) throw SolverError("matrix has a non-positive diagonal entry");
        dinv(i) = 1.0 / std::sqrt(d);
    }
    SpMat out = A;
    for (int col = 0; col < out.outerSize(); ++col)
        for (SpMat::InnerIterator it(out, col); it; ++it)
            it.valueRef() *= dinv(it.row()) * dinv(col);
    return out;
}

/// Largest eigenvalue of a symmetric operator by Lanczos with full
/// reorthogonalization.
template <class Op>
double lanczos_max(const Op& apply, int n, int max_steps = 200) {
    Eigen::VectorXd v = Eigen::VectorXd::Ones(n).normalized();
    std::vector<Eigen::VectorXd> V;
    std::vector<double> alpha, beta;
    double prev = 0.0;
    for (int j = 0; j < std::min(n, max_steps); ++j) {
        V.push_back(v);
        Eigen::VectorXd w = apply(v);
        const double a = v.dot(w);
        alpha.push_back(a);
        w -= a * v;
        if (j > 0) w -= beta.back() * V[j - 1];
        for (const auto& u : V) w -= u.dot(w) * u;  // full reorthogonalization
        const double b = w.norm();
        const int m = static_cast<int>(alpha.size());
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            T(i, i) = alpha[i];
            if (i + 1 < m) T(i, i + 1) = T(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T, Eigen::EigenvaluesOnly);
        const double cur = es.eigenvalues().maxCoeff();
        if (j > 5 && std::abs(cur - prev) < 1e-8 * std::abs(cur)) return cur;
        prev = cur;
        if (b < 1e-14 * std::abs(a)) return cur;  // invariant subspace found
        beta.push_back(b);
        v = w / b;
    }
    return prev;
}

}  // namespace

Eigen::VectorXd solve_spd(const SpMat& A, const Eigen::VectorXd& b, SolveReport* report,
                          double tol) {
    const int n = static_cast<int>(A.rows());
    if (A.cols() != n || b.size() != n) throw SolverError("solve_spd: dimension mismatch");
    Eigen::ConjugateGradient<SpMat, Eigen::Lower | Eigen::Upper,
                             Eigen::DiagonalPreconditioner<double>>
        cg;
    cg.setTolerance(tol);
    cg.setMaxIterations(50LL * n);
    cg.compute(A);
    Eigen::VectorXd x = cg.solve(b);
    SolveReport rep;
    rep.iterations = static_cast<int>(cg.iterations());
    rep.residual = cg.error();
    if (cg.info() != Eigen::Success || !x.allFinite()) {
        if (n <= 2000) {
            Eigen::LDLT<Eigen::MatrixXd> ldlt{Eigen::MatrixXd(A)};
            x = ldlt.solve(b);
            rep.used_dense = true;
            rep.residual = (A * x - b).norm() / std::max(b.norm(), 1e-300);
            if (!x.allFinite()) throw SolverError("dense fallback failed");
        } else {
            throw SolverError("conjugate gradients did not converge");
        }
    }
    // Iterative refinement: push the true residual below what a single CG
    // pass attains in floating point.
    const double bnorm = std::max(b.norm(), 1e-300);
    for (int pass = 0; pass < 3 && !rep.used_dense; ++pass) {
        const Eigen::VectorXd r = b - A * x;
        if (r.norm() / bnorm < 1e-9) break;
        cg.setTolerance(1e-6);
        const Eigen::VectorXd d = cg.solve(r);
        if (!d.allFinite()) break;
        const Eigen::VectorXd xn = x + d;
        if ((b - A * xn).norm() >= r.norm()) break;  // no further progress
        x = xn;
        rep.iterations += static_cast<int>(cg.iterations());
    }
    if (report) *report = rep;
    return x;
}

double condition_number(const SpMat& A, bool jacobi) {
    const SpMat M = jacobi ? jacobi_scaled(A) : A;
    const int n = static_cast<int>(M.rows());
    if (n == 0) throw SolverError("condition_number: empty matrix");
    if (n <= 2000) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Eigen::MatrixXd(M),
                                                          Eigen::EigenvaluesOnly);
        const Eigen::VectorXd ev = es.eigenvalues();
        const double lmin = ev.minCoeff(), lmax = ev.maxCoeff();
        if (lmin <= 0.0) throw SolverError("condition_number: matrix is not positive definite");
        return lmax / lmin;
    }
    const double lmax = lanczos_max([&](const Eigen::VectorXd& v) { return M * v; }, n);
    Eigen::SimplicialLLT<SpMat> llt(M);
    if (llt.info() != Eigen::Success)
        throw SolverError("condition_number: Cholesky factorization failed");
    const double invmax =
        lanczos_max([&](const Eigen::VectorXd& v) { return llt.solve(v); }, n);
    if (invmax <= 0.0) throw SolverError("condition_number: inverse iteration failed");
    return lmax * invmax;
}

}  // namespace igac2
