#pragma once

#include <Eigen/Dense>
#include <array>

#include "igac2/bspline.hpp"
#include "igac2/gluing.hpp"
#include "igac2/multipatch.hpp"

namespace igac2 {

/// Rectangular block of tensor-product B-spline coefficients on one patch.
/// Row a, column b multiplies N_{i0+a}(xi1) * N_{j0+b}(xi2).
struct PatchGrid {
    int patch = 0;
    int i0 = 0, j0 = 0;
    Eigen::MatrixXd a;
};

/// A globally C^2-smooth function, stored as its coefficient blocks on the
/// patches where it is supported.
struct IsogeometricFunction {
    enum class Kind { Patch, Edge, Vertex };
    Kind kind = Kind::Patch;
    int owner = 0;  // patch id / interface id / vertex id
    std::vector<PatchGrid> grids;  // ascending patch id, at most one per patch

    const PatchGrid* grid_on(int patch) const;
    double max_abs_coeff() const;
};

/// Parametric derivatives on one patch: jet(d1, d2) = d^{d1+d2} f / dxi1^{d1} dxi2^{d2}.
Eigen::MatrixXd function_jet(const SplineSpace1D& S, const IsogeometricFunction& f, int patch,
                             const Vec2& xi, int max_deriv);

/// Accumulate the grid of f(xi) = g(s(xi)) into `out` given a block of the
/// grid of g (valid because the knot vector is mirror symmetric).
void scatter_symmetric(const SquareSymmetry& s, int d, int i0, int j0,
                       const Eigen::MatrixXd& block, Eigen::MatrixXd& out, double scale = 1.0);

/// Inclusive support window [lo, hi] (possibly empty: lo > hi) of row m of
/// the coefficient grid of interface function (i, j); d is the dimension of
/// the underlying univariate space and n_i the dimension of the i-th trace
/// space.
std::pair<int, int> edge_window(int i, int j, int m, int d, int n_i);

/// Trace spaces S_0, S_1, S_2 of the interface construction; their dimensions
/// n_0, n_1, n_2 bound the index j of interface functions per level i.
std::array<SplineSpace1D, 3> trace_spaces(int p, int r, int k, int d_alpha);

/// 3 x d coefficient blocks (rows: transversal index 0..2) of interface
/// function (i, j) on both sides of `view`, each in its own standardized
/// frame. side[s] matches view.patch[s].
struct EdgeSideGrids {
    Eigen::MatrixXd side[2];
};
EdgeSideGrids edge_side_grids(const SplineSpace1D& S, const Interface& view,
                              const InterfaceGluing& g, int i, int j);

struct BasisSpace {
    MultiPatchDomain dom;
    int p = 0, r = 0, k = 0;
    SplineSpace1D S;  // underlying univariate space of every patch
    std::vector<IsogeometricFunction> functions;  // patch, then edge, then vertex
    int n_patch = 0, n_edge = 0, n_vertex = 0;
    std::vector<int> vertex_dims;  // per vertex fan

    int dim() const { return static_cast<int>(functions.size()); }
};

/// Build the C^2-smooth space with a vanishing second-order jet on the domain
/// boundary. Requires k*(p-r-2) >= 9-p, except for the handled special case
/// p=5, r=2, k=3.
BasisSpace assemble_space(const MultiPatchDomain& dom, int p, int r, int k);

/// Mismatch of one function's value/gradient/Hessian across an interface.
SmoothnessResiduals function_smoothness(const BasisSpace& space, const IsogeometricFunction& f,
                                        const Interface& itf, int samples = 50);

/// Largest |value|, |gradient| or |Hessian| entry of f along a boundary edge.
double boundary_jet_residual(const BasisSpace& space, const IsogeometricFunction& f,
                             const BoundaryEdge& be, int samples = 40);

std::string export_basis_json(const BasisSpace& space);

}  // namespace igac2
