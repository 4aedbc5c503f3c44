#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "igac2/errors.hpp"

namespace igac2 {

using Rational = boost::multiprecision::cpp_rational;

/// Bivariate polynomial with exact rational coefficients. All arithmetic
/// (products, derivatives) is exact; conversion to double happens only at
/// evaluation.
class Polynomial2D {
  public:
    using Key = std::pair<int, int>;  // (exponent of x1, exponent of x2)

    Polynomial2D() = default;

    static Polynomial2D constant(double c);
    static Polynomial2D constant(const Rational& c);
    /// a + b*x1 + c*x2
    static Polynomial2D affine(const Rational& a, const Rational& b, const Rational& c);
    static Polynomial2D monomial(int i, int j, double c = 1.0);

    Polynomial2D operator+(const Polynomial2D& o) const;
    Polynomial2D operator-(const Polynomial2D& o) const;
    Polynomial2D operator*(const Polynomial2D& o) const;
    Polynomial2D pow(int n) const;

    double operator()(double x1, double x2) const;

    Polynomial2D differentiate(int axis) const;  // axis is 1 or 2

    int total_degree() const;
    bool is_zero() const;
    std::map<Key, double> coefficients() const;

  private:
    void prune();
    std::map<Key, Rational> terms_;
    mutable std::vector<std::pair<Key, double>> eval_cache_;
    mutable bool cache_valid_ = false;
};

/// Right-hand side f = -laplacian^3(u), exactly.
Polynomial2D triharmonic_rhs(const Polynomial2D& u);

/// The manufactured exact solutions shipped with the solver:
/// "a", "b", "c" for the triangular/pentagonal/hexagonal domains and
/// "d" for the five-patch domain.
Polynomial2D builtin_solution(const std::string& id);

/// The affine boundary-line factors of a builtin solution (each vanishes
/// on one outer boundary line of its domain).
std::vector<Polynomial2D> builtin_boundary_factors(const std::string& id);

/// scale * (product of factors) cubed; used to manufacture solutions that
/// vanish to third order on lines.
Polynomial2D cubed_line_product(const std::vector<Polynomial2D>& factors, const Rational& scale);

}  // namespace igac2
