#include <doctest.h>

#include <random>

#include "igac2/gluing.hpp"
#include "igac2/polynomial2d.hpp"

using namespace igac2;

namespace {

MultiPatchDomain two_scaled_squares(double s) {
    return build_topology({{{0, 0}, {s, 0}, {s, s}, {0, s}},
                           {{s, 0}, {2 * s, 0}, {2 * s, s}, {s, s}}});
}

// Independent oracle for gamma: minimize the size of the squared Jacobian
// determinants around +-1 by a fine golden-section search.
double gamma_by_search(const Polynomial1D& al, const Polynomial1D& ar) {
    auto integrand = [&](double xi, double g) {
        const double dl = g * al(xi) + 1.0, dr = g * ar(xi) - 1.0;
        return dl * dl + dr * dr;
    };
    auto cost = [&](double g) {
        // composite Simpson: exact enough for the polynomial integrand
        const int n = 512;  // even
        double c = integrand(0.0, g) + integrand(1.0, g);
        for (int i = 1; i < n; ++i)
            c += integrand(static_cast<double>(i) / n, g) * (i % 2 ? 4.0 : 2.0);
        return c / (3.0 * n);
    };
    double lo = 1e-6, hi = 100.0;
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 200; ++it) {
        const double a = hi - phi * (hi - lo), b = lo + phi * (hi - lo);
        if (cost(a) < cost(b))
            hi = b;
        else
            lo = a;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("gluing data of two axis-aligned squares") {
    for (double s : {1.0, 2.0}) {
        const auto dom = two_scaled_squares(s);
        const auto g = gluing_data(dom, dom.interfaces[0]);
        // straight common edge: beta vanishes identically
        CHECK(g.beta_bar.degree() == 0);
        CHECK(std::abs(g.beta_bar(0.3)) < 1e-13);
        CHECK(std::abs(g.beta(0.7)) < 1e-13);
        CHECK(g.d_alpha == 0);
        // raw determinants are -+ s^2; the scaling brings them to -+1
        CHECK(g.alpha_bar_l(0.5) == doctest::Approx(-s * s));
        CHECK(g.alpha_bar_r(0.5) == doctest::Approx(s * s));
        CHECK(g.gamma == doctest::Approx(1.0 / (s * s)));
        CHECK(g.alpha_l(0.1) == doctest::Approx(-1.0));
        CHECK(g.alpha_r(0.9) == doctest::Approx(1.0));
        CHECK(g.eta().degree() == 0);
        CHECK(std::abs(g.eta()(0.4)) < 1e-13);
    }
}

TEST_CASE("gamma matches a direct minimization and the determinant identity holds") {
    const auto dom = build_topology({{{0, 0}, {5, 0}, {17.0 / 3, 2}, {13.0 / 3, 4}},
                                     {{10, 0}, {8.75, 15.0 / 7}, {17.0 / 3, 2}, {5, 0}}});
    const auto g = gluing_data(dom, dom.interfaces[0]);
    CHECK(g.gamma == doctest::Approx(gamma_by_search(g.alpha_bar_l, g.alpha_bar_r)).epsilon(1e-6));
    for (double xi : {0.0, 0.2, 0.45, 0.8, 1.0}) {
        CHECK(g.alpha_l(xi) < 0.0);
        CHECK(g.alpha_r(xi) > 0.0);
        const double lhs = g.beta(xi);
        const double rhs = g.alpha_l(xi) * g.beta_r(xi) - g.alpha_r(xi) * g.beta_l(xi);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-11));
    }
}

TEST_CASE("physical jets agree with finite differences through the geometry") {
    const BilinearPatch P{{0, 0}, {3, 0.5}, {2.5, 3}, {-0.5, 2}};
    // test function in physical coordinates
    auto u = [](const Vec2& x) {
        return std::sin(0.7 * x[0]) * std::cos(0.4 * x[1]) + 0.1 * x[0] * x[1] * x[1];
    };
    auto pder = [&](const Vec2& xi) {
        const double d = 1e-5;
        auto v = [&](double a, double b) { return u(P.eval(a, b)); };
        return std::array<double, 6>{
            v(xi[0], xi[1]),
            (v(xi[0] + d, xi[1]) - v(xi[0] - d, xi[1])) / (2 * d),
            (v(xi[0], xi[1] + d) - v(xi[0], xi[1] - d)) / (2 * d),
            (v(xi[0] + d, xi[1]) - 2 * v(xi[0], xi[1]) + v(xi[0] - d, xi[1])) / (d * d),
            (v(xi[0] + d, xi[1] + d) - v(xi[0] + d, xi[1] - d) - v(xi[0] - d, xi[1] + d) +
             v(xi[0] - d, xi[1] - d)) /
                (4 * d * d),
            (v(xi[0], xi[1] + d) - 2 * v(xi[0], xi[1]) + v(xi[0], xi[1] - d)) / (d * d)};
    };
    std::mt19937 rng(31);
    std::uniform_real_distribution<double> uni(0.1, 0.9);
    for (int t = 0; t < 20; ++t) {
        const Vec2 xi{uni(rng), uni(rng)};
        const auto jet = physical_jet2(P, xi, pder(xi));
        const Vec2 x = P.eval(xi[0], xi[1]);
        CHECK(jet.value == doctest::Approx(u(x)).epsilon(1e-9));
        const double d = 1e-5;
        const Vec2 gx{(u({x[0] + d, x[1]}) - u({x[0] - d, x[1]})) / (2 * d),
                      (u({x[0], x[1] + d}) - u({x[0], x[1] - d})) / (2 * d)};
        CHECK((jet.grad - gx).norm() < 1e-4);
        const double hxx =
            (u({x[0] + d, x[1]}) - 2 * u(x) + u({x[0] - d, x[1]})) / (d * d);
        const double hyy =
            (u({x[0], x[1] + d}) - 2 * u(x) + u({x[0], x[1] - d})) / (d * d);
        CHECK(jet.hess(0, 0) == doctest::Approx(hxx).epsilon(1e-3));
        CHECK(jet.hess(1, 1) == doctest::Approx(hyy).epsilon(1e-3));
        CHECK(jet.hess(0, 1) == doctest::Approx(jet.hess(1, 0)));
    }
}

TEST_CASE("a globally smooth polynomial has zero interface residuals") {
    const auto dom = two_scaled_squares(1.0);
    const auto u = builtin_solution("a");  // any smooth global polynomial works
    auto jet = [&](int patch, const Vec2& xi) {
        const auto& P = dom.patches[patch];
        // exact parametric derivatives by forward chain rule through the
        // bilinear map (second parametric derivatives of F are the mixed
        // vector only)
        const Vec2 x = P.eval(xi[0], xi[1]);
        const Mat2 J = P.jacobian(xi[0], xi[1]);
        const Vec2 m = P.mixed();
        const auto ux = u.differentiate(1), uy = u.differentiate(2);
        const Vec2 g{ux(x[0], x[1]), uy(x[0], x[1])};
        Mat2 H;
        H(0, 0) = ux.differentiate(1)(x[0], x[1]);
        H(0, 1) = H(1, 0) = ux.differentiate(2)(x[0], x[1]);
        H(1, 1) = uy.differentiate(2)(x[0], x[1]);
        return std::array<double, 6>{
            u(x[0], x[1]),
            g.dot(J.col(0)),
            g.dot(J.col(1)),
            J.col(0).dot(H * J.col(0)),
            J.col(0).dot(H * J.col(1)) + g.dot(m),
            J.col(1).dot(H * J.col(1))};
    };
    const auto res = g2_residuals(dom, dom.interfaces[0], jet, 25);
    CHECK(res.max() < 1e-11);
}
