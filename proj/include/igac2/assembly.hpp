#pragma once

#include <Eigen/Sparse>
#include <functional>

#include "igac2/basisspace.hpp"
#include "igac2/polynomial2d.hpp"

namespace igac2 {

/// Gauss-Legendre rule with q points on [0,1] (weights sum to 1).
struct QuadratureRule1D {
    std::vector<double> points, weights;
};
QuadratureRule1D gauss_legendre01(int q);

/// Physical derivatives of a patch function up to order three, obtained from
/// its parametric jet (entries jet(d1,d2), d1+d2 <= 3) by inverting the chain
/// rule through the bilinear geometry map.
struct PhysicalDers3 {
    double w = 0.0;
    Vec2 g1 = Vec2::Zero();                 // first derivatives
    Mat2 g2 = Mat2::Zero();                 // Hessian
    double w111 = 0.0, w112 = 0.0, w122 = 0.0, w222 = 0.0;

    Vec2 grad_laplacian() const { return {w111 + w122, w112 + w222}; }
};
PhysicalDers3 physical_derivatives(const BilinearPatch& patch, const Vec2& xi,
                                   const Eigen::MatrixXd& jet);

struct AssembledSystem {
    Eigen::SparseMatrix<double> S;  // grad(laplacian) . grad(laplacian) form
    Eigen::VectorXd rhs;
};

/// Assemble the Galerkin system of the sixth-order problem: S_ij =
/// int grad(lap w_i) . grad(lap w_j), rhs_i = int f w_i, with p+2 Gauss
/// points per direction per knot span.
AssembledSystem assemble_system(const BasisSpace& space,
                                const std::function<double(const Vec2&)>& f_physical);

/// Relative errors |u - u_h| / |u| in the full Sobolev norms H^0..H^3.
std::array<double, 4> error_norms(const BasisSpace& space, const Eigen::VectorXd& coeffs,
                                  const Polynomial2D& u_exact);

void write_matrix_market(const Eigen::SparseMatrix<double>& A, const std::string& path);

}  // namespace igac2
