#pragma once

#include <Eigen/Sparse>

#include "igac2/errors.hpp"

namespace igac2 {

struct SolveReport {
    int iterations = 0;
    double residual = 0.0;  // relative residual reported by the solver
    bool used_dense = false;
};

/// Solve the symmetric positive definite system with diagonally
/// preconditioned conjugate gradients (relative tolerance `tol`, at most
/// 50*n iterations); falls back to a dense factorization for small systems
/// if CG stalls.
Eigen::VectorXd solve_spd(const Eigen::SparseMatrix<double>& A, const Eigen::VectorXd& b,
                          SolveReport* report = nullptr, double tol = 1e-12);

/// Spectral condition number of A (or of the Jacobi-scaled D^-1/2 A D^-1/2):
/// dense eigensolver for small systems, otherwise Lanczos with full
/// reorthogonalization for the largest eigenvalue and a factorized
/// inverse iteration for the smallest.
double condition_number(const Eigen::SparseMatrix<double>& A, bool jacobi);

}  // namespace igac2
