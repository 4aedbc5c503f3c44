#include <doctest.h>

#include <random>

#include "igac2/basisspace.hpp"

using namespace igac2;

namespace {

const char* kDataDir = IGAC2_DATA_DIR;

double eval_grid(const SplineSpace1D& S, const Eigen::MatrixXd& g, int i0, int j0, double xi1,
                 double xi2) {
    const auto v1 = S.eval_all(xi1, 0)[0];
    const auto v2 = S.eval_all(xi2, 0)[0];
    double sum = 0.0;
    for (int a = 0; a < g.rows(); ++a)
        for (int b = 0; b < g.cols(); ++b) sum += g(a, b) * v1[i0 + a] * v2[j0 + b];
    return sum;
}

}  // namespace

TEST_CASE("scatter_symmetric realizes composition with a square symmetry") {
    const auto S = make_space(5, 2, 4);
    const int d = S.dim();
    std::mt19937 rng(41);
    std::normal_distribution<double> gauss;
    Eigen::MatrixXd block(3, 5);
    for (int a = 0; a < block.rows(); ++a)
        for (int b = 0; b < block.cols(); ++b) block(a, b) = gauss(rng);
    const int i0 = 2, j0 = 7;
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (const auto& s : SquareSymmetry::all()) {
        Eigen::MatrixXd out = Eigen::MatrixXd::Zero(d, d);
        scatter_symmetric(s, d, i0, j0, block, out);
        for (int t = 0; t < 15; ++t) {
            const Vec2 xi{uni(rng), uni(rng)};
            const Vec2 sx = s(xi);
            const double lhs = eval_grid(S, out, 0, 0, xi[0], xi[1]);
            const double rhs = eval_grid(S, block, i0, j0, sx[0], sx[1]);
            CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
        }
    }
}

TEST_CASE("interface coefficient grids respect the predicted support windows") {
    const auto dom = load_domain(std::string(kDataDir) + "/triangle.json");
    const int p = 5, r = 2, k = 4;
    const auto S = make_space(p, r, k);
    const int d = S.dim();
    const auto& itf = dom.interfaces[0];
    const auto g = gluing_data(dom, itf);
    const auto traces = trace_spaces(p, r, k, g.d_alpha);
    for (int i = 0; i < 3; ++i) {
        const int ni = traces[i].dim();
        for (int j = 0; j < ni; ++j) {
            const auto grids = edge_side_grids(S, itf, g, i, j);
            for (int side = 0; side < 2; ++side) {
                const double scale = std::max(1.0, grids.side[side].cwiseAbs().maxCoeff());
                for (int m = 0; m < 3; ++m) {
                    const auto [lo, hi] = edge_window(i, j, m, d, ni);
                    for (int n = 0; n < d; ++n)
                        if (n < lo || n > hi)
                            CHECK(std::abs(grids.side[side](m, n)) < 1e-11 * scale);
                }
            }
        }
    }
}

TEST_CASE("space dimensions follow the counting formula on the triangle domain") {
    const auto dom = load_domain(std::string(kDataDir) + "/triangle.json");
    const auto space = assemble_space(dom, 5, 2, 5);
    const int d = space.S.dim();
    CHECK(d == 21);
    CHECK(space.n_patch == 3 * (d - 6) * (d - 6));
    CHECK(space.n_patch == 675);
    CHECK(space.n_edge == 18);
    CHECK(space.n_vertex == 25);
    CHECK(space.dim() == 718);
    // one inner vertex of dimension 16, three boundary fans of dimension 3
    int inner = 0, boundary = 0;
    for (size_t v = 0; v < dom.vertices.size(); ++v) {
        if (dom.vertices[v].boundary) {
            ++boundary;
            CHECK(space.vertex_dims[v] == 3);
        } else {
            ++inner;
            CHECK(space.vertex_dims[v] == 16);
        }
    }
    CHECK(inner == 1);
    CHECK(boundary == 3);
}

TEST_CASE("every function is C2 across interfaces and flat on the boundary") {
    const auto dom = load_domain(std::string(kDataDir) + "/two_squares.json");
    const auto space = assemble_space(dom, 5, 2, 4);
    for (const auto& f : space.functions) {
        const double scale = std::max(1.0, f.max_abs_coeff());
        for (const auto& itf : dom.interfaces)
            CHECK(function_smoothness(space, f, itf, 11).max() < 1e-9 * scale);
        for (const auto& be : dom.boundary_edges)
            CHECK(boundary_jet_residual(space, f, be, 9) < 1e-10 * scale);
    }
}

TEST_CASE("coarsest admissible refinement uses the corrected construction") {
    const auto dom = load_domain(std::string(kDataDir) + "/triangle.json");
    const auto space = assemble_space(dom, 5, 2, 3);
    const int d = space.S.dim();  // 15
    CHECK(d == 15);
    CHECK(space.n_patch == 3 * (d - 6) * (d - 6));
    // middle trace level loses one function per interface at this resolution
    CHECK(space.n_edge == 6);
    CHECK(space.dim() == 268);
    for (const auto& f : space.functions) {
        const double scale = std::max(1.0, f.max_abs_coeff());
        for (const auto& itf : dom.interfaces)
            CHECK(function_smoothness(space, f, itf, 9).max() < 1e-9 * scale);
        for (const auto& be : dom.boundary_edges)
            CHECK(boundary_jet_residual(space, f, be, 7) < 1e-10 * scale);
    }
}

TEST_CASE("assemble_space rejects parameters below the construction threshold") {
    const auto dom = load_domain(std::string(kDataDir) + "/two_squares.json");
    // k*(p-r-2) >= 9-p fails for p=5, r=2, k=2 and has no special handling
    CHECK_THROWS_AS(assemble_space(dom, 5, 2, 2), InvalidParameterError);
}

TEST_CASE("basis export is valid JSON with per-function coefficient blocks") {
    const auto dom = load_domain(std::string(kDataDir) + "/two_squares.json");
    const auto space = assemble_space(dom, 5, 2, 4);
    const auto text = export_basis_json(space);
    CHECK(text.find("\"functions\"") != std::string::npos);
    CHECK(text.find("\"vertex\"") != std::string::npos);
    CHECK(text.find("\"grids\"") != std::string::npos);
}
