#include <doctest.h>

#include <cmath>
#include <fstream>
#include <random>

#include "igac2/assembly.hpp"
#include "igac2/solver.hpp"

using namespace igac2;

namespace {

const char* kDataDir = IGAC2_DATA_DIR;

// Forward chain rule oracle: physical derivatives of u composed with the
// bilinear map give parametric derivatives; feed those to the inverse chain
// rule and compare against the original physical derivatives.
Eigen::MatrixXd parametric_jet_of(const Polynomial2D& u, const BilinearPatch& P, const Vec2& xi,
                                  int order) {
    Eigen::MatrixXd jet = Eigen::MatrixXd::Zero(order + 1, order + 1);
    const double d = 1e-4;
    auto v = [&](double a, double b) {
        const Vec2 x = P.eval(a, b);
        return u(x[0], x[1]);
    };
    // nested central differences are accurate enough for the comparison
    // tolerances used below
    std::function<double(int, int, double, double)> der = [&](int o1, int o2, double a,
                                                              double b) -> double {
        if (o1 == 0 && o2 == 0) return v(a, b);
        if (o1 > 0)
            return (der(o1 - 1, o2, a + d, b) - der(o1 - 1, o2, a - d, b)) / (2 * d);
        return (der(o1, o2 - 1, a, b + d) - der(o1, o2 - 1, a, b - d)) / (2 * d);
    };
    for (int o1 = 0; o1 <= order; ++o1)
        for (int o2 = 0; o2 + o1 <= order; ++o2) jet(o1, o2) = der(o1, o2, xi[0], xi[1]);
    return jet;
}

Eigen::SparseMatrix<double> tridiagonal(int n) {
    Eigen::SparseMatrix<double> A(n, n);
    std::vector<Eigen::Triplet<double>> trips;
    for (int i = 0; i < n; ++i) {
        trips.emplace_back(i, i, 2.0);
        if (i + 1 < n) {
            trips.emplace_back(i, i + 1, -1.0);
            trips.emplace_back(i + 1, i, -1.0);
        }
    }
    A.setFromTriplets(trips.begin(), trips.end());
    return A;
}

}  // namespace

TEST_CASE("Gauss-Legendre rules integrate polynomials of degree 2q-1 exactly") {
    for (int q = 1; q <= 9; ++q) {
        const auto rule = gauss_legendre01(q);
        CHECK(static_cast<int>(rule.points.size()) == q);
        for (int deg = 0; deg <= 2 * q - 1; ++deg) {
            double sum = 0.0;
            for (int i = 0; i < q; ++i) sum += rule.weights[i] * std::pow(rule.points[i], deg);
            CHECK(sum == doctest::Approx(1.0 / (deg + 1)).epsilon(1e-13));
        }
        // degree 2q misses
        double sum = 0.0;
        for (int i = 0; i < q; ++i) sum += rule.weights[i] * std::pow(rule.points[i], 2 * q);
        CHECK(std::abs(sum - 1.0 / (2 * q + 1)) > 1e-12);
    }
}

TEST_CASE("inverse chain rule reproduces physical derivatives to third order") {
    const BilinearPatch P{{0, 0}, {3, 0.5}, {2.5, 3}, {-0.5, 2}};
    // moderate-degree polynomial keeps the finite-difference oracle accurate
    const auto u = Polynomial2D::monomial(3, 0, 0.02) + Polynomial2D::monomial(1, 2, -0.05) +
                   Polynomial2D::monomial(2, 1, 0.03) + Polynomial2D::monomial(0, 3, 0.01) +
                   Polynomial2D::monomial(2, 0, 0.4) + Polynomial2D::monomial(1, 1, -0.3);
    std::mt19937 rng(53);
    std::uniform_real_distribution<double> uni(0.15, 0.85);
    for (int t = 0; t < 12; ++t) {
        const Vec2 xi{uni(rng), uni(rng)};
        const auto jet = parametric_jet_of(u, P, xi, 3);
        const auto ders = physical_derivatives(P, xi, jet);
        const Vec2 x = P.eval(xi[0], xi[1]);
        const auto ux = u.differentiate(1), uy = u.differentiate(2);
        CHECK(ders.w == doctest::Approx(u(x[0], x[1])).epsilon(1e-8));
        CHECK(ders.g1[0] == doctest::Approx(ux(x[0], x[1])).epsilon(1e-5));
        CHECK(ders.g1[1] == doctest::Approx(uy(x[0], x[1])).epsilon(1e-5));
        CHECK(ders.g2(0, 0) ==
              doctest::Approx(ux.differentiate(1)(x[0], x[1])).epsilon(1e-4));
        CHECK(ders.g2(0, 1) ==
              doctest::Approx(ux.differentiate(2)(x[0], x[1])).epsilon(1e-4));
        CHECK(ders.g2(1, 1) ==
              doctest::Approx(uy.differentiate(2)(x[0], x[1])).epsilon(1e-4));
        const double w111 = ux.differentiate(1).differentiate(1)(x[0], x[1]);
        const double w112 = ux.differentiate(1).differentiate(2)(x[0], x[1]);
        const double w122 = ux.differentiate(2).differentiate(2)(x[0], x[1]);
        const double w222 = uy.differentiate(2).differentiate(2)(x[0], x[1]);
        CHECK(ders.w111 == doctest::Approx(w111).epsilon(5e-3).scale(1.0));
        CHECK(ders.w112 == doctest::Approx(w112).epsilon(5e-3).scale(1.0));
        CHECK(ders.w122 == doctest::Approx(w122).epsilon(5e-3).scale(1.0));
        CHECK(ders.w222 == doctest::Approx(w222).epsilon(5e-3).scale(1.0));
    }
}

TEST_CASE("assembled systems are symmetric and positive definite") {
    const auto dom = load_domain(std::string(kDataDir) + "/two_squares.json");
    const auto space = assemble_space(dom, 5, 2, 4);
    const auto u = builtin_solution("a");
    const auto f = triharmonic_rhs(u);
    const auto sys = assemble_system(space, [&](const Vec2& x) { return f(x[0], x[1]); });
    CHECK(sys.S.rows() == space.dim());
    const Eigen::SparseMatrix<double> D = Eigen::SparseMatrix<double>(sys.S.transpose()) - sys.S;
    double asym = 0.0, scale = 0.0;
    for (int c = 0; c < D.outerSize(); ++c)
        for (Eigen::SparseMatrix<double>::InnerIterator it(D, c); it; ++it)
            asym = std::max(asym, std::abs(it.value()));
    for (int c = 0; c < sys.S.outerSize(); ++c)
        for (Eigen::SparseMatrix<double>::InnerIterator it(sys.S, c); it; ++it)
            scale = std::max(scale, std::abs(it.value()));
    CHECK(asym < 1e-12 * scale);
    // positive definite: random Rayleigh quotients stay positive
    std::mt19937 rng(61);
    std::normal_distribution<double> gauss;
    for (int t = 0; t < 10; ++t) {
        Eigen::VectorXd v(space.dim());
        for (int i = 0; i < v.size(); ++i) v[i] = gauss(rng);
        CHECK(v.dot(sys.S * v) > 0.0);
    }
}

TEST_CASE("conjugate gradient solver reaches tight relative residuals") {
    std::mt19937 rng(71);
    std::normal_distribution<double> gauss;
    const int n = 120;
    Eigen::MatrixXd B(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) B(i, j) = gauss(rng);
    Eigen::MatrixXd Ad = B * B.transpose() + 0.5 * Eigen::MatrixXd::Identity(n, n);
    Eigen::SparseMatrix<double> A = Ad.sparseView();
    Eigen::VectorXd b(n);
    for (int i = 0; i < n; ++i) b[i] = gauss(rng);
    SolveReport rep;
    const Eigen::VectorXd x = solve_spd(A, b, &rep);
    CHECK((A * x - b).norm() / b.norm() < 1e-9);
}

TEST_CASE("condition numbers match the analytic tridiagonal spectrum") {
    // dense path
    {
        const int n = 400;
        const auto A = tridiagonal(n);
        const double lmin = 2.0 - 2.0 * std::cos(M_PI / (n + 1));
        const double lmax = 2.0 - 2.0 * std::cos(n * M_PI / (n + 1));
        CHECK(condition_number(A, false) == doctest::Approx(lmax / lmin).epsilon(1e-6));
        // constant diagonal: Jacobi scaling only divides by 2
        CHECK(condition_number(A, true) == doctest::Approx(lmax / lmin).epsilon(1e-6));
    }
    // iterative path (n above the dense threshold)
    {
        const int n = 2500;
        const auto A = tridiagonal(n);
        const double lmin = 2.0 - 2.0 * std::cos(M_PI / (n + 1));
        const double lmax = 2.0 - 2.0 * std::cos(n * M_PI / (n + 1));
        CHECK(condition_number(A, false) == doctest::Approx(lmax / lmin).epsilon(1e-3));
    }
}

TEST_CASE("matrix market export round-trips through a simple parser") {
    const auto A = tridiagonal(5);
    const std::string path = "/tmp/igac2_test_matrix.mtx";
    write_matrix_market(A, path);
    std::ifstream in(path);
    REQUIRE(in.good());
    std::string header;
    std::getline(in, header);
    CHECK(header.find("symmetric") != std::string::npos);
    int rows, cols, nnz;
    in >> rows >> cols >> nnz;
    CHECK(rows == 5);
    CHECK(cols == 5);
    CHECK(nnz == 9);  // lower triangle of the 13 stored entries
    double sum = 0.0;
    for (int e = 0; e < nnz; ++e) {
        int i, j;
        double v;
        in >> i >> j >> v;
        CHECK(i >= j);  // lower triangle, 1-based
        sum += (i == j) ? v : 2.0 * v;
    }
    CHECK(sum == doctest::Approx(2.0 * 5 - 2.0 * 4));
}
