#include "igac2/polynomial2d.hpp"

#include <cmath>

namespace igac2 {

namespace {

Rational rat_from_double(double c) {
    // doubles are exactly representable rationals
    return Rational(c);
}

}  // namespace

Polynomial2D Polynomial2D::constant(double c) { return constant(rat_from_double(c)); }

Polynomial2D Polynomial2D::constant(const Rational& c) {
    Polynomial2D p;
    if (c != 0) p.terms_[{0, 0}] = c;
    return p;
}

Polynomial2D Polynomial2D::affine(const Rational& a, const Rational& b, const Rational& c) {
    Polynomial2D p;
    if (a != 0) p.terms_[{0, 0}] = a;
    if (b != 0) p.terms_[{1, 0}] = b;
    if (c != 0) p.terms_[{0, 1}] = c;
    return p;
}

Polynomial2D Polynomial2D::monomial(int i, int j, double c) {
    Polynomial2D p;
    if (c != 0.0) p.terms_[{i, j}] = rat_from_double(c);
    return p;
}

void Polynomial2D::prune() {
    for (auto it = terms_.begin(); it != terms_.end();) {
        if (it->second == 0)
            it = terms_.erase(it);
        else
            ++it;
    }
    cache_valid_ = false;
}

Polynomial2D Polynomial2D::operator+(const Polynomial2D& o) const {
    Polynomial2D out = *this;
    for (const auto& [k, v] : o.terms_) out.terms_[k] += v;
    out.prune();
    return out;
}

Polynomial2D Polynomial2D::operator-(const Polynomial2D& o) const {
    Polynomial2D out = *this;
    for (const auto& [k, v] : o.terms_) out.terms_[k] -= v;
    out.prune();
    return out;
}

Polynomial2D Polynomial2D::operator*(const Polynomial2D& o) const {
    Polynomial2D out;
    for (const auto& [ka, va] : terms_)
        for (const auto& [kb, vb] : o.terms_)
            out.terms_[{ka.first + kb.first, ka.second + kb.second}] += va * vb;
    out.prune();
    return out;
}

Polynomial2D Polynomial2D::pow(int n) const {
    Polynomial2D out = constant(Rational(1));
    for (int i = 0; i < n; ++i) out = out * (*this);
    return out;
}

double Polynomial2D::operator()(double x1, double x2) const {
    if (!cache_valid_) {
        eval_cache_.clear();
        eval_cache_.reserve(terms_.size());
        for (const auto& [k, v] : terms_)
            eval_cache_.emplace_back(k, static_cast<double>(v));
        cache_valid_ = true;
    }
    double s = 0.0;
    for (const auto& [k, c] : eval_cache_)
        s += c * std::pow(x1, k.first) * std::pow(x2, k.second);
    return s;
}

Polynomial2D Polynomial2D::differentiate(int axis) const {
    if (axis != 1 && axis != 2) throw InvalidParameterError("differentiate: axis must be 1 or 2");
    Polynomial2D out;
    for (const auto& [k, v] : terms_) {
        if (axis == 1 && k.first > 0) out.terms_[{k.first - 1, k.second}] += v * k.first;
        if (axis == 2 && k.second > 0) out.terms_[{k.first, k.second - 1}] += v * k.second;
    }
    out.prune();
    return out;
}

int Polynomial2D::total_degree() const {
    int d = 0;
    for (const auto& [k, v] : terms_) d = std::max(d, k.first + k.second);
    return d;
}

bool Polynomial2D::is_zero() const { return terms_.empty(); }

std::map<Polynomial2D::Key, double> Polynomial2D::coefficients() const {
    std::map<Key, double> out;
    for (const auto& [k, v] : terms_) out[k] = static_cast<double>(v);
    return out;
}

Polynomial2D triharmonic_rhs(const Polynomial2D& u) {
    auto laplacian = [](const Polynomial2D& q) {
        return q.differentiate(1).differentiate(1) + q.differentiate(2).differentiate(2);
    };
    return Polynomial2D::constant(Rational(0)) - laplacian(laplacian(laplacian(u)));
}

Polynomial2D cubed_line_product(const std::vector<Polynomial2D>& factors, const Rational& scale) {
    Polynomial2D q = Polynomial2D::constant(scale);
    for (const auto& f : factors) q = q * f;
    return q.pow(3);
}

std::vector<Polynomial2D> builtin_boundary_factors(const std::string& id) {
    using P = Polynomial2D;
    const Rational z(0), one(1);
    if (id == "a") {
        return {
            P::affine(z, z, one),                                      // x2
            P::affine(z, Rational(12, 13), Rational(-1)),              // 12 x1/13 - x2
            P::affine(Rational(120, 7), Rational(-12, 7), Rational(-1))  // (120-12 x1)/7 - x2
        };
    }
    if (id == "b") {
        return {
            P::affine(Rational(121, 15), Rational(8, 15), Rational(-1)),
            P::affine(z, Rational(7, 2), one),
            P::affine(z, z, one),
            P::affine(Rational(52, 3), Rational(-13, 6), one),
            P::affine(Rational(31, 2), Rational(-9, 11), Rational(-1)),
        };
    }
    if (id == "c") {
        return {
            P::affine(Rational(55, 2), Rational(-5, 2), Rational(-1)),
            P::affine(Rational(1799, 160), Rational(-7, 64), Rational(-1)),
            P::affine(Rational(652, 61), Rational(78, 61), Rational(-1)),
            P::affine(z, Rational(-18, 11), Rational(-1)),
            P::affine(z, z, one),
            P::affine(Rational(-10), Rational(5, 3), Rational(-1)),
        };
    }
    if (id == "d") {
        return {
            P::affine(z, z, one),
            P::affine(Rational(405, 8), Rational(-27, 8), Rational(-1)),
            P::affine(Rational(425, 38), Rational(4, 19), Rational(-1)),
            P::affine(z, Rational(23, 3), Rational(-1)),
        };
    }
    throw InvalidParameterError("builtin_solution: unknown id '" + id + "'");
}

Polynomial2D builtin_solution(const std::string& id) {
    Rational scale;
    if (id == "a")
        scale = Rational(1, 20);
    else if (id == "b")
        scale = Rational(1, 20000);
    else if (id == "c")
        scale = Rational(1, 200000);
    else if (id == "d")
        scale = Rational(1, 20000);
    else
        throw InvalidParameterError("builtin_solution: unknown id '" + id + "'");
    return cubed_line_product(builtin_boundary_factors(id), scale);
}

}  // namespace igac2
