#include <doctest.h>

#include <random>

#include "igac2/bspline.hpp"

using namespace igac2;

TEST_CASE("knot vectors are open with uniform inner knots of multiplicity p-r") {
    const auto S = make_space(5, 2, 4);
    CHECK(S.dim() == 5 + 4 * 3 + 1);
    const auto& t = S.knots();
    CHECK(static_cast<int>(t.size()) == S.dim() + S.p() + 1);
    for (int i = 0; i <= 5; ++i) {
        CHECK(t[i] == 0.0);
        CHECK(t[t.size() - 1 - i] == 1.0);
    }
    // inner knot 2/5 appears exactly 3 times
    int count = 0;
    for (double x : t)
        if (x == 0.4) ++count;
    CHECK(count == 3);
}

TEST_CASE("space constructors validate their arguments") {
    CHECK_THROWS_AS(make_space(4, 2, 3), InvalidParameterError);
    CHECK_THROWS_AS(make_space(5, 1, 3), InvalidParameterError);
    CHECK_THROWS_AS(make_space(5, 3, 3), InvalidParameterError);
    CHECK_THROWS_AS(make_space(5, 2, -1), InvalidParameterError);
    CHECK_THROWS_AS(SplineSpace1D::create(5, 5, 2), InvalidParameterError);
    CHECK_NOTHROW(SplineSpace1D::create(5, 4, 2));  // trace space
}

TEST_CASE("partition of unity and vanishing derivative sums at random points") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    for (auto [p, r, k] : {std::tuple{5, 2, 4}, {6, 3, 5}, {7, 2, 2}}) {
        const auto S = make_space(p, r, k);
        for (int trial = 0; trial < 334; ++trial) {
            const double xi = uni(rng);
            const auto v = S.eval_all(xi, 2);
            double s0 = 0, s1 = 0, s2 = 0;
            for (int i = 0; i < S.dim(); ++i) {
                s0 += v[0][i];
                s1 += v[1][i];
                s2 += v[2][i];
            }
            CHECK(s0 == doctest::Approx(1.0).epsilon(1e-12));
            CHECK(std::abs(s1) < 1e-9 * p * (k + 1));
            CHECK(std::abs(s2) < 1e-7 * p * p * (k + 1) * (k + 1));
        }
    }
}

TEST_CASE("derivatives agree with central finite differences") {
    const auto S = make_space(6, 2, 3);
    std::mt19937 rng(11);
    std::uniform_real_distribution<double> uni(0.05, 0.95);
    std::normal_distribution<double> gauss;
    std::vector<double> c(S.dim());
    for (double& x : c) x = gauss(rng);
    const double dlt = 1e-6;
    for (int trial = 0; trial < 30; ++trial) {
        double xi = uni(rng);
        const double fd =
            (S.eval_coeffs(c, xi + dlt) - S.eval_coeffs(c, xi - dlt)) / (2.0 * dlt);
        CHECK(S.eval_coeffs(c, xi, 1) == doctest::Approx(fd).epsilon(1e-6));
    }
}

TEST_CASE("greville interpolation reproduces spline coefficients") {
    const auto S = make_space(5, 2, 5);
    std::mt19937 rng(3);
    std::normal_distribution<double> gauss;
    std::vector<double> c(S.dim());
    for (double& x : c) x = gauss(rng);
    const auto f = represent(S, [&](double xi) { return S.eval_coeffs(c, xi); });
    for (int i = 0; i < S.dim(); ++i) CHECK(f.coeffs[i] == doctest::Approx(c[i]).epsilon(1e-9));
}

TEST_CASE("represent rejects functions outside the space") {
    const auto S = make_space(5, 2, 2);
    CHECK_THROWS_AS(represent(S, [](double xi) { return std::abs(xi - 0.4714); }),
                    RepresentationError);
}

TEST_CASE("multiply_embed matches pointwise products and validates degrees") {
    const auto src = SplineSpace1D::create(4, 2, 3);
    const auto dst = SplineSpace1D::create(5, 2, 3);
    std::mt19937 rng(5);
    std::normal_distribution<double> gauss;
    SplineVector1D f;
    f.space = src;
    f.coeffs.resize(src.dim());
    for (double& x : f.coeffs) x = gauss(rng);
    const auto q = Polynomial1D::linear(0.3, -1.7);
    const auto prod = multiply_embed(f, q, dst);
    for (double xi : {0.0, 0.11, 0.37, 0.5, 0.77, 1.0})
        CHECK(prod(xi) == doctest::Approx(q(xi) * f(xi)).epsilon(1e-11));
    const auto q2 = Polynomial1D({1.0, 0.0, 1.0});  // quadratic: overflows target degree
    CHECK_THROWS_AS(multiply_embed(f, q2, dst), InvalidParameterError);
}

TEST_CASE("transversal functions have interpolatory endpoint derivatives") {
    for (auto [p, r, k] : {std::tuple{5, 2, 3}, {6, 2, 5}, {6, 3, 4}}) {
        const auto S = make_space(p, r, k);
        const auto m = m_functions(S);
        const SplineVector1D* ms[3] = {&m.m0, &m.m1, &m.m2};
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                CHECK(ms[i]->deriv(0.0, j) == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-12));
        // M0 starts at 1 and all three vanish away from the first knot span
        const double far = 4.0 * S.h();
        for (int i = 0; i < 3; ++i) CHECK(std::abs((*ms[i])(std::min(far, 1.0))) < 1e-14);
    }
}

TEST_CASE("polynomial helpers: arithmetic, degree stripping, integral") {
    const auto q = Polynomial1D::linear(1.0, 2.0) * Polynomial1D::linear(-3.0, 1.0);
    CHECK(q.degree() == 2);
    CHECK(q(0.5) == doctest::Approx((1 + 1.0) * (-3 + 0.5)));
    CHECK(q.derivative()(0.25) == doctest::Approx(2 * (-3.0 + 0.25) + (1 + 0.5) * 1.0));
    const auto lin = q - Polynomial1D({-3.0, -5.0, 2.0});
    CHECK(lin.degree() == 0);
    CHECK(Polynomial1D::linear(0.0, 2.0).integral01() == doctest::Approx(1.0));
}
