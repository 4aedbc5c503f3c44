#pragma once

#include <functional>
#include <vector>

#include "igac2/errors.hpp"

namespace igac2 {

/// Polynomial in monomial basis on [0,1]. coeffs[i] multiplies xi^i.
class Polynomial1D {
  public:
    Polynomial1D() = default;
    explicit Polynomial1D(std::vector<double> coeffs);
    static Polynomial1D constant(double c);
    static Polynomial1D linear(double c0, double c1);  // c0 + c1*xi

    double operator()(double xi) const;
    Polynomial1D derivative() const;
    Polynomial1D operator*(const Polynomial1D& other) const;
    Polynomial1D operator+(const Polynomial1D& other) const;
    Polynomial1D operator-(const Polynomial1D& other) const;
    Polynomial1D scaled(double s) const;

    /// Degree after stripping trailing coefficients below 1e-14 in magnitude.
    int degree() const;
    double integral01() const;
    double coeff(int i) const { return i < static_cast<int>(coeffs_.size()) ? coeffs_[i] : 0.0; }
    const std::vector<double>& coeffs() const { return coeffs_; }

  private:
    std::vector<double> coeffs_;
};

/// Univariate spline space S_h^{p,r}([0,1]) with k equally spaced inner
/// knots of multiplicity p-r and open end knots.
class SplineSpace1D {
  public:
    /// General constructor for trace/auxiliary spaces; requires
    /// 0 <= r <= p-1 when k >= 1 so inner multiplicities stay in [1,p].
    static SplineSpace1D create(int p, int r, int k);

    int p() const { return p_; }
    int r() const { return r_; }
    int k() const { return k_; }
    double h() const { return h_; }
    int dim() const { return dim_; }
    const std::vector<double>& knots() const { return knots_; }

    /// Index of the knot span containing xi (clamped for xi == 1).
    int find_span(double xi) const;

    /// Nonzero B-splines N_{span-p..span} and derivatives up to max_deriv
    /// at xi; ders[d][j] = N_{span-p+j}^{(d)}(xi).
    void basis_ders(int span, double xi, int max_deriv,
                    std::vector<std::vector<double>>& ders) const;

    /// Full table: values[d][i] = N_i^{(d)}(xi) for all i.
    std::vector<std::vector<double>> eval_all(double xi, int max_deriv) const;

    /// Evaluate a coefficient vector (and derivatives) at xi.
    double eval_coeffs(const std::vector<double>& coeffs, double xi, int deriv = 0) const;

    std::vector<double> greville() const;

    bool same_knots(const SplineSpace1D& other) const;

  private:
    int p_ = 0, r_ = 0, k_ = 0;
    double h_ = 1.0;
    int dim_ = 0;
    std::vector<double> knots_;
};

/// Spline function as a coefficient vector over a SplineSpace1D.
struct SplineVector1D {
    SplineSpace1D space;
    std::vector<double> coeffs;

    double operator()(double xi) const { return space.eval_coeffs(coeffs, xi); }
    double deriv(double xi, int d) const { return space.eval_coeffs(coeffs, xi, d); }
};

/// Validated constructor for the spaces of the main construction:
/// p >= 5 and, for k >= 1, 2 <= r <= p-3.
SplineSpace1D make_space(int p, int r, int k);

/// Interpolate a function known to lie in `target` at its Greville points.
SplineVector1D represent(const SplineSpace1D& target, const std::function<double(double)>& f);

/// Coefficients of q*f in `target` (exact up to round-off). Requires
/// deg(f) + deg(q) <= target.p and f's knots to be a subset of target's.
SplineVector1D multiply_embed(const SplineVector1D& f, const Polynomial1D& q,
                              const SplineSpace1D& target);

/// The edge-trace transversal functions M0, M1, M2 with M_i^{(j)}(0) = delta_ij.
struct MFunctions {
    SplineVector1D m0, m1, m2;
};
MFunctions m_functions(const SplineSpace1D& space);

}  // namespace igac2
