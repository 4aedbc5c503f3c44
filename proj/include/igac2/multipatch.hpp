#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "igac2/errors.hpp"

namespace igac2 {

using Vec2 = Eigen::Vector2d;
using Mat2 = Eigen::Matrix2d;

/// One of the 8 dihedral symmetries of the unit square. Applied as:
/// (u1,u2) = swap ? (xi2,xi1) : (xi1,xi2), then per-axis reversal.
struct SquareSymmetry {
    bool swap = false;
    bool flip1 = false;
    bool flip2 = false;

    Vec2 operator()(const Vec2& xi) const {
        double a = swap ? xi[1] : xi[0];
        double b = swap ? xi[0] : xi[1];
        return {flip1 ? 1.0 - a : a, flip2 ? 1.0 - b : b};
    }
    SquareSymmetry inverse() const {
        if (!swap) return *this;
        return {true, flip2, flip1};
    }
    bool identity() const { return !swap && !flip1 && !flip2; }
    static const std::array<SquareSymmetry, 8>& all();
};

/// Bilinear geometry mapping F determined by its four corners.
struct BilinearPatch {
    Vec2 c00, c10, c11, c01;

    Vec2 eval(double xi1, double xi2) const {
        return c00 * (1 - xi1) * (1 - xi2) + c10 * xi1 * (1 - xi2) + c01 * (1 - xi1) * xi2 +
               c11 * xi1 * xi2;
    }
    Vec2 d_xi1(double xi2) const { return (c10 - c00) * (1 - xi2) + (c11 - c01) * xi2; }
    Vec2 d_xi2(double xi1) const { return (c01 - c00) * (1 - xi1) + (c11 - c10) * xi1; }
    /// The single nonzero second derivative of a bilinear map.
    Vec2 mixed() const { return c11 - c10 - c01 + c00; }
    Mat2 jacobian(double xi1, double xi2) const {
        Mat2 J;
        J.col(0) = d_xi1(xi2);
        J.col(1) = d_xi2(xi1);
        return J;
    }
    /// Corner of the unit square (i,j) in {0,1}^2.
    Vec2 corner(int i, int j) const {
        return i == 0 ? (j == 0 ? c00 : c01) : (j == 0 ? c10 : c11);
    }
    /// Patch seen through a square symmetry: (reparam(s)).eval(xi) == eval(s(xi)).
    BilinearPatch reparam(const SquareSymmetry& s) const;
    double diameter() const;
};

/// Geometry data at one parameter point.
struct GeometryJet {
    Vec2 x;
    Mat2 J;
    Vec2 mixed;   // d^2 F / dxi1 dxi2 (constant for bilinear maps)
    double detJ;
    Mat2 K;       // J^{-T} J^{-1} |det J|
};

GeometryJet geometry_jet(const BilinearPatch& patch, const Vec2& xi);

/// Solve F(xi) = x for xi in [0,1]^2.
Vec2 inverse_map(const BilinearPatch& patch, const Vec2& x);

struct Interface {
    int id = 0;
    int patch[2] = {0, 0};
    /// Standardized views: (F^{patch[i]} o sym[i])(0, xi) traces the edge
    /// from endpoint_cluster[0] (xi=0) to endpoint_cluster[1] (xi=1),
    /// identically for both sides.
    SquareSymmetry sym[2];
    int endpoint_cluster[2] = {0, 0};
};

struct BoundaryEdge {
    int patch = 0;
    int local_edge = 0;  // 0: xi2=0, 1: xi1=1, 2: xi2=1, 3: xi1=0 (ccw)
};

/// Fan of patches around a vertex of valency >= 3, ordered counterclockwise.
/// Patch fan[l] seen through syms[l] has the vertex at (0,0), Gamma^(l)
/// along its xi1-axis and Gamma^(l+1) along its xi2-axis.
struct VertexFan {
    int id = 0;
    Vec2 pos;
    bool boundary = false;
    int valency = 0;  // nu_bar: number of edges meeting at the vertex
    std::vector<int> patches;
    std::vector<SquareSymmetry> syms;
    /// interfaces[t] is the interface id of Gamma^(t+1) between fan patches
    /// t and t+1; for an inner vertex the last entry closes the fan back to
    /// patch 0.
    std::vector<int> interfaces;
    int num_patches() const { return static_cast<int>(patches.size()); }
};

struct MultiPatchDomain {
    std::vector<BilinearPatch> patches;
    std::vector<Interface> interfaces;
    std::vector<BoundaryEdge> boundary_edges;
    std::vector<VertexFan> vertices;
    std::vector<Vec2> corner_points;  // all clustered patch corners
    double diameter = 0.0;

    int num_patches() const { return static_cast<int>(patches.size()); }
};

/// Corner endpoints of a local patch edge, directed counterclockwise.
std::pair<Vec2, Vec2> local_edge_points(const BilinearPatch& p, int local_edge);

MultiPatchDomain build_topology(const std::vector<BilinearPatch>& patches);

/// Parse the JSON domain format:
/// {"patches": [[[x,y],[x,y],[x,y],[x,y]], ...]} with corners in the order
/// c00, c10, c11, c01 (counterclockwise).
MultiPatchDomain parse_domain(const std::string& text);
MultiPatchDomain load_domain(const std::string& path);

}  // namespace igac2
