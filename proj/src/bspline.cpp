#include "igac2/bspline.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <limits>

namespace igac2 {

namespace {
constexpr double kTrailingZero = 1e-14;
}

Polynomial1D::Polynomial1D(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) {}

Polynomial1D Polynomial1D::constant(double c) { return Polynomial1D({c}); }

Polynomial1D Polynomial1D::linear(double c0, double c1) { return Polynomial1D({c0, c1}); }

double Polynomial1D::operator()(double xi) const {
    double v = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) v = v * xi + *it;
    return v;
}

Polynomial1D Polynomial1D::derivative() const {
    if (coeffs_.size() <= 1) return Polynomial1D({0.0});
    std::vector<double> d(coeffs_.size() - 1);
    for (size_t i = 1; i < coeffs_.size(); ++i) d[i - 1] = static_cast<double>(i) * coeffs_[i];
    return Polynomial1D(std::move(d));
}

Polynomial1D Polynomial1D::operator*(const Polynomial1D& other) const {
    if (coeffs_.empty() || other.coeffs_.empty()) return Polynomial1D({0.0});
    std::vector<double> out(coeffs_.size() + other.coeffs_.size() - 1, 0.0);
    for (size_t i = 0; i < coeffs_.size(); ++i)
        for (size_t j = 0; j < other.coeffs_.size(); ++j) out[i + j] += coeffs_[i] * other.coeffs_[j];
    return Polynomial1D(std::move(out));
}

Polynomial1D Polynomial1D::operator+(const Polynomial1D& other) const {
    std::vector<double> out(std::max(coeffs_.size(), other.coeffs_.size()), 0.0);
    for (size_t i = 0; i < out.size(); ++i) out[i] = coeff(static_cast<int>(i)) + other.coeff(static_cast<int>(i));
    return Polynomial1D(std::move(out));
}

Polynomial1D Polynomial1D::operator-(const Polynomial1D& other) const {
    return *this + other.scaled(-1.0);
}

Polynomial1D Polynomial1D::scaled(double s) const {
    std::vector<double> out = coeffs_;
    for (double& c : out) c *= s;
    return Polynomial1D(std::move(out));
}

int Polynomial1D::degree() const {
    int d = static_cast<int>(coeffs_.size()) - 1;
    while (d > 0 && std::abs(coeffs_[d]) < kTrailingZero) --d;
    return d;
}

double Polynomial1D::integral01() const {
    double v = 0.0;
    for (size_t i = 0; i < coeffs_.size(); ++i) v += coeffs_[i] / static_cast<double>(i + 1);
    return v;
}

SplineSpace1D SplineSpace1D::create(int p, int r, int k) {
    if (p < 1 || k < 0) throw InvalidParameterError("spline space: need p >= 1 and k >= 0");
    if (k >= 1 && (r < 0 || r > p - 1))
        throw InvalidParameterError("spline space: need 0 <= r <= p-1 for k >= 1");
    SplineSpace1D s;
    s.p_ = p;
    s.r_ = r;
    s.k_ = k;
    s.h_ = 1.0 / static_cast<double>(k + 1);
    const int mult = p - r;
    s.dim_ = p + k * mult + 1;
    s.knots_.assign(p + 1, 0.0);
    for (int j = 1; j <= k; ++j) {
        // exact rational j/(k+1), materialized once
        const double tau = static_cast<double>(j) / static_cast<double>(k + 1);
        s.knots_.insert(s.knots_.end(), mult, tau);
    }
    s.knots_.insert(s.knots_.end(), p + 1, 1.0);
    return s;
}

SplineSpace1D make_space(int p, int r, int k) {
    if (p < 5) throw InvalidParameterError("make_space: degree p must be at least 5");
    if (k < 0) throw InvalidParameterError("make_space: k must be nonnegative");
    if (k >= 1 && (r < 2 || r > p - 3))
        throw InvalidParameterError("make_space: regularity must satisfy 2 <= r <= p-3");
    return SplineSpace1D::create(p, r, k);
}

int SplineSpace1D::find_span(double xi) const {
    if (xi < 0.0 || xi > 1.0) throw OutOfDomainError("parameter outside [0,1]");
    const int n = dim_ - 1;
    if (xi >= knots_[n + 1]) return n;  // xi == 1
    int lo = p_, hi = n + 1;
    while (hi - lo > 1) {
        const int mid = (lo + hi) / 2;
        if (xi < knots_[mid])
            hi = mid;
        else
            lo = mid;
    }
    return lo;
}

void SplineSpace1D::basis_ders(int span, double xi, int max_deriv,
                               std::vector<std::vector<double>>& ders) const {
    // Cox-de Boor with derivatives (NURBS book A2.3).
    const int p = p_;
    const int nd = std::min(max_deriv, p);
    ders.assign(max_deriv + 1, std::vector<double>(p + 1, 0.0));

    std::vector<std::vector<double>> ndu(p + 1, std::vector<double>(p + 1, 0.0));
    std::vector<double> left(p + 1, 0.0), right(p + 1, 0.0);
    ndu[0][0] = 1.0;
    for (int j = 1; j <= p; ++j) {
        left[j] = xi - knots_[span + 1 - j];
        right[j] = knots_[span + j] - xi;
        double saved = 0.0;
        for (int rr = 0; rr < j; ++rr) {
            ndu[j][rr] = right[rr + 1] + left[j - rr];
            const double temp = ndu[rr][j - 1] / ndu[j][rr];
            ndu[rr][j] = saved + right[rr + 1] * temp;
            saved = left[j - rr] * temp;
        }
        ndu[j][j] = saved;
    }
    for (int j = 0; j <= p; ++j) ders[0][j] = ndu[j][p];

    std::vector<std::vector<double>> a(2, std::vector<double>(p + 1, 0.0));
    for (int rr = 0; rr <= p; ++rr) {
        int s1 = 0, s2 = 1;
        a[0][0] = 1.0;
        for (int kk = 1; kk <= nd; ++kk) {
            double d = 0.0;
            const int rk = rr - kk, pk = p - kk;
            if (rr >= kk) {
                a[s2][0] = a[s1][0] / ndu[pk + 1][rk];
                d = a[s2][0] * ndu[rk][pk];
            }
            const int j1 = (rk >= -1) ? 1 : -rk;
            const int j2 = (rr - 1 <= pk) ? kk - 1 : p - rr;
            for (int j = j1; j <= j2; ++j) {
                a[s2][j] = (a[s1][j] - a[s1][j - 1]) / ndu[pk + 1][rk + j];
                d += a[s2][j] * ndu[rk + j][pk];
            }
            if (rr <= pk) {
                a[s2][kk] = -a[s1][kk - 1] / ndu[pk + 1][rr];
                d += a[s2][kk] * ndu[rr][pk];
            }
            ders[kk][rr] = d;
            std::swap(s1, s2);
        }
    }
    double f = static_cast<double>(p);
    for (int kk = 1; kk <= nd; ++kk) {
        for (int j = 0; j <= p; ++j) ders[kk][j] *= f;
        f *= static_cast<double>(p - kk);
    }
}

std::vector<std::vector<double>> SplineSpace1D::eval_all(double xi, int max_deriv) const {
    if (xi < 0.0 || xi > 1.0) throw OutOfDomainError("eval_all: parameter outside [0,1]");
    if (max_deriv > p_) throw InvalidParameterError("eval_all: derivative order exceeds degree");
    const int span = find_span(xi);
    std::vector<std::vector<double>> local;
    basis_ders(span, xi, max_deriv, local);
    std::vector<std::vector<double>> out(max_deriv + 1, std::vector<double>(dim_, 0.0));
    for (int d = 0; d <= max_deriv; ++d)
        for (int j = 0; j <= p_; ++j) out[d][span - p_ + j] = local[d][j];
    return out;
}

double SplineSpace1D::eval_coeffs(const std::vector<double>& coeffs, double xi, int deriv) const {
    const int span = find_span(xi);
    std::vector<std::vector<double>> local;
    basis_ders(span, xi, deriv, local);
    double v = 0.0;
    for (int j = 0; j <= p_; ++j) v += coeffs[span - p_ + j] * local[deriv][j];
    return v;
}

std::vector<double> SplineSpace1D::greville() const {
    std::vector<double> g(dim_);
    for (int i = 0; i < dim_; ++i) {
        double s = 0.0;
        for (int j = 1; j <= p_; ++j) s += knots_[i + j];
        g[i] = s / static_cast<double>(p_);
    }
    // Guard against collisions from high multiplicities.
    for (int i = 1; i < dim_; ++i)
        if (g[i] <= g[i - 1]) g[i] = g[i - 1] + h_ * 1e-6;
    for (double& x : g) x = std::clamp(x, 0.0, 1.0);
    return g;
}

bool SplineSpace1D::same_knots(const SplineSpace1D& other) const {
    return knots_ == other.knots_;
}

SplineVector1D represent(const SplineSpace1D& target, const std::function<double(double)>& f) {
    const int n = target.dim();
    const std::vector<double> pts = target.greville();
    Eigen::MatrixXd A(n, n);
    Eigen::VectorXd b(n);
    double fmax = 0.0;
    for (int i = 0; i < n; ++i) {
        const auto row = target.eval_all(pts[i], 0);
        for (int j = 0; j < n; ++j) A(i, j) = row[0][j];
        b(i) = f(pts[i]);
        fmax = std::max(fmax, std::abs(b(i)));
    }
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(A);
    Eigen::VectorXd c = lu.solve(b);
    double resid = c.allFinite() ? (A * c - b).lpNorm<Eigen::Infinity>()
                                 : std::numeric_limits<double>::infinity();
    SplineVector1D out;
    out.space = target;
    out.coeffs.assign(c.data(), c.data() + n);
    // The collocation residual alone cannot detect functions outside the
    // space (the interpolant matches f at the collocation points by
    // construction), so also verify at points between them.
    for (int i = 0; i + 1 < n && std::isfinite(resid); ++i) {
        const double mid = 0.5 * (pts[i] + pts[i + 1]);
        resid = std::max(resid, std::abs(out(mid) - f(mid)));
    }
    if (resid > 1e-10 * std::max(1.0, fmax))
        throw RepresentationError("represent: collocation system singular or f not in space");
    return out;
}

SplineVector1D multiply_embed(const SplineVector1D& f, const Polynomial1D& q,
                              const SplineSpace1D& target) {
    const int p0 = f.space.p();
    if (p0 + q.degree() > target.p())
        throw InvalidParameterError("multiply_embed: product degree exceeds target degree");
    // f's distinct knots must appear in the target's knots.
    for (double t : f.space.knots()) {
        bool found = false;
        for (double u : target.knots())
            if (u == t) {
                found = true;
                break;
            }
        if (!found) throw InvalidParameterError("multiply_embed: knot mismatch");
    }
    return represent(target, [&](double xi) { return q(xi) * f(xi); });
}

MFunctions m_functions(const SplineSpace1D& space) {
    const int d = space.dim();
    const int p = space.p();
    const double h = space.h();
    MFunctions m;
    m.m0.space = m.m1.space = m.m2.space = space;
    m.m0.coeffs.assign(d, 0.0);
    m.m1.coeffs.assign(d, 0.0);
    m.m2.coeffs.assign(d, 0.0);
    m.m0.coeffs[0] = m.m0.coeffs[1] = m.m0.coeffs[2] = 1.0;
    m.m1.coeffs[1] = h / p;
    m.m1.coeffs[2] = 2.0 * h / p;
    m.m2.coeffs[2] = h * h / (p * (p - 1.0));
    return m;
}

}  // namespace igac2
