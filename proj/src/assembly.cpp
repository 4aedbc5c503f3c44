#include "igac2/assembly.hpp"

#include <cmath>
#include <fstream>

namespace igac2 {

QuadratureRule1D gauss_legendre01(int q) {
    if (q < 1) throw InvalidParameterError("quadrature order must be positive");
    QuadratureRule1D rule;
    rule.points.resize(q);
    rule.weights.resize(q);
    for (int i = 0; i < q; ++i) {
        // Newton on the Legendre polynomial P_q over [-1,1].
        double x = std::cos(M_PI * (i + 0.75) / (q + 0.5));
        double dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = x;
            if (q == 1) p1 = x;
            for (int n = 2; n <= q; ++n) {
                const double p2 = ((2.0 * n - 1.0) * x * p1 - (n - 1.0) * p0) / n;
                p0 = p1;
                p1 = p2;
            }
            const double pq = (q == 1) ? x : p1;
            const double pqm1 = (q == 1) ? 1.0 : p0;
            dp = q * (x * pq - pqm1) / (x * x - 1.0);
            const double dx = pq / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        rule.points[i] = 0.5 * (1.0 - x);  // descending roots -> ascending points
        rule.weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
    }
    return rule;
}

namespace {

/// Univariate basis tables at all quadrature points of all knot spans.
struct UniTables {
    int q = 0, k = 0, p = 0, step = 0;
    std::vector<double> pts, wts;         // size (k+1)*q, weights include h
    std::vector<Eigen::MatrixXd> vals;    // per point: (maxd+1) x (p+1), local basis
};

UniTables build_uni_tables(const SplineSpace1D& S, const QuadratureRule1D& rule, int maxd) {
    UniTables t;
    t.q = static_cast<int>(rule.points.size());
    t.k = S.k();
    t.p = S.p();
    t.step = S.p() - S.r();
    const double h = S.h();
    std::vector<std::vector<double>> ders;
    for (int e = 0; e <= t.k; ++e) {
        const int span = S.p() + e * t.step;
        for (int g = 0; g < t.q; ++g) {
            const double xi = (e + rule.points[g]) * h;
            t.pts.push_back(xi);
            t.wts.push_back(rule.weights[g] * h);
            S.basis_ders(span, xi, maxd, ders);
            Eigen::MatrixXd M(maxd + 1, t.p + 1);
            for (int d = 0; d <= maxd; ++d)
                for (int j = 0; j <= t.p; ++j) M(d, j) = ders[d][j];
            t.vals.push_back(std::move(M));
        }
    }
    return t;
}

std::vector<std::vector<int>> build_buckets(const BasisSpace& space, int patch) {
    const int k = space.k, step = space.p - space.r, p = space.p;
    std::vector<std::vector<int>> buckets((k + 1) * (k + 1));
    auto erange = [&](int lo, int hi) -> std::pair<int, int> {
        int e0 = (lo - p + step - 1 + 10 * step) / step - 10;  // ceil((lo-p)/step)
        int e1 = hi / step;
        return {std::max(0, e0), std::min(k, e1)};
    };
    for (int idx = 0; idx < space.dim(); ++idx) {
        const PatchGrid* g = space.functions[idx].grid_on(patch);
        if (!g) continue;
        const auto [a0, a1] = erange(g->i0, g->i0 + static_cast<int>(g->a.rows()) - 1);
        const auto [b0, b1] = erange(g->j0, g->j0 + static_cast<int>(g->a.cols()) - 1);
        for (int e1 = a0; e1 <= a1; ++e1)
            for (int e2 = b0; e2 <= b1; ++e2) buckets[e1 * (k + 1) + e2].push_back(idx);
    }
    return buckets;
}

/// Parametric jet (4x4, entries (d1,d2)) of one function on one element.
void element_jet(const PatchGrid& g, int A0, int B0, const Eigen::MatrixXd& U,
                 const Eigen::MatrixXd& V, Eigen::Matrix4d& jet) {
    jet.setZero();
    const int p = static_cast<int>(U.cols()) - 1;
    const int alo = std::max(g.i0, A0), ahi = std::min(g.i0 + static_cast<int>(g.a.rows()) - 1, A0 + p);
    const int blo = std::max(g.j0, B0), bhi = std::min(g.j0 + static_cast<int>(g.a.cols()) - 1, B0 + p);
    for (int a = alo; a <= ahi; ++a)
        for (int b = blo; b <= bhi; ++b) {
            const double c = g.a(a - g.i0, b - g.j0);
            if (c == 0.0) continue;
            jet.noalias() += c * (U.col(a - A0) * V.col(b - B0).transpose());
        }
}

}  // namespace

PhysicalDers3 physical_derivatives(const BilinearPatch& patch, const Vec2& xi,
                                   const Eigen::MatrixXd& jet) {
    PhysicalDers3 out;
    const Mat2 J = patch.jacobian(xi[0], xi[1]);
    const Mat2 B = J.inverse();
    const Vec2 m = patch.mixed();

    out.w = jet(0, 0);
    const Vec2 gpar(jet(1, 0), jet(0, 1));
    out.g1 = B.transpose() * gpar;

    Mat2 T2;
    const double mixc = jet(1, 1) - out.g1.dot(m);
    T2 << jet(2, 0), mixc, mixc, jet(0, 2);
    out.g2 = B.transpose() * T2 * B;

    // Third order: subtract the geometry-curvature contributions, then pull
    // the tensor back through J^{-1}.
    const Vec2 g2m = out.g2 * m;
    const double t111 = jet(3, 0);
    const double t112 = jet(2, 1) - 2.0 * g2m.dot(J.col(0));
    const double t122 = jet(1, 2) - 2.0 * g2m.dot(J.col(1));
    const double t222 = jet(0, 3);
    const double t3v[4] = {t111, t112, t122, t222};

    auto w3 = [&](int i, int j, int kk) {
        double s = 0.0;
        for (int a = 0; a < 2; ++a)
            for (int b = 0; b < 2; ++b)
                for (int c = 0; c < 2; ++c) s += t3v[a + b + c] * B(a, i) * B(b, j) * B(c, kk);
        return s;
    };
    out.w111 = w3(0, 0, 0);
    out.w112 = w3(0, 0, 1);
    out.w122 = w3(0, 1, 1);
    out.w222 = w3(1, 1, 1);
    return out;
}

AssembledSystem assemble_system(const BasisSpace& space,
                                const std::function<double(const Vec2&)>& f_physical) {
    const int n = space.dim();
    const int k = space.k, q = space.p + 2, step = space.p - space.r;
    const QuadratureRule1D rule = gauss_legendre01(q);
    const UniTables tab = build_uni_tables(space.S, rule, 3);

    std::vector<Eigen::Triplet<double>> trips;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    Eigen::Matrix4d jet;

    for (int pt = 0; pt < space.dom.num_patches(); ++pt) {
        const BilinearPatch& patch = space.dom.patches[pt];
        const auto buckets = build_buckets(space, pt);
        for (int e1 = 0; e1 <= k; ++e1)
            for (int e2 = 0; e2 <= k; ++e2) {
                const auto& acts = buckets[e1 * (k + 1) + e2];
                if (acts.empty()) continue;
                const int na = static_cast<int>(acts.size());
                Eigen::MatrixXd local = Eigen::MatrixXd::Zero(na, na);
                Eigen::VectorXd lrhs = Eigen::VectorXd::Zero(na);
                std::vector<Vec2> gl(na);
                std::vector<double> val(na);
                const int A0 = e1 * step, B0 = e2 * step;
                for (int g1 = 0; g1 < q; ++g1)
                    for (int g2 = 0; g2 < q; ++g2) {
                        const int i1 = e1 * q + g1, i2 = e2 * q + g2;
                        const Vec2 xi(tab.pts[i1], tab.pts[i2]);
                        const double detJ = patch.jacobian(xi[0], xi[1]).determinant();
                        const double wd = tab.wts[i1] * tab.wts[i2] * std::abs(detJ);
                        for (int ia = 0; ia < na; ++ia) {
                            const PatchGrid* g = space.functions[acts[ia]].grid_on(pt);
                            element_jet(*g, A0, B0, tab.vals[i1], tab.vals[i2], jet);
                            const PhysicalDers3 pd = physical_derivatives(patch, xi, jet);
                            gl[ia] = pd.grad_laplacian();
                            val[ia] = pd.w;
                        }
                        const double fv = f_physical(patch.eval(xi[0], xi[1]));
                        for (int ia = 0; ia < na; ++ia) {
                            lrhs(ia) += wd * fv * val[ia];
                            for (int ja = ia; ja < na; ++ja)
                                local(ia, ja) += wd * gl[ia].dot(gl[ja]);
                        }
                    }
                for (int ia = 0; ia < na; ++ia) {
                    rhs(acts[ia]) += lrhs(ia);
                    for (int ja = ia; ja < na; ++ja) {
                        trips.emplace_back(acts[ia], acts[ja], local(ia, ja));
                        if (ja != ia) trips.emplace_back(acts[ja], acts[ia], local(ia, ja));
                    }
                }
            }
    }
    AssembledSystem sys;
    sys.S.resize(n, n);
    sys.S.setFromTriplets(trips.begin(), trips.end());
    sys.S.makeCompressed();
    sys.rhs = std::move(rhs);
    return sys;
}

std::array<double, 4> error_norms(const BasisSpace& space, const Eigen::VectorXd& coeffs,
                                  const Polynomial2D& u_exact) {
    if (coeffs.size() != space.dim())
        throw InvalidParameterError("error_norms: coefficient size mismatch");
    const int k = space.k, q = space.p + 2, step = space.p - space.r;
    const QuadratureRule1D rule = gauss_legendre01(q);
    const UniTables tab = build_uni_tables(space.S, rule, 3);

    // Exact derivatives D^(a,b) u for a+b <= 3.
    std::array<std::array<Polynomial2D, 4>, 4> du;
    du[0][0] = u_exact;
    for (int a = 0; a <= 3; ++a)
        for (int b = 0; b <= 3 - a; ++b) {
            if (a > 0) du[a][b] = du[a - 1][b].differentiate(1);
            else if (b > 0) du[a][b] = du[a][b - 1].differentiate(2);
        }

    double num[4] = {0, 0, 0, 0}, den[4] = {0, 0, 0, 0};
    Eigen::Matrix4d jet, fjet;
    for (int pt = 0; pt < space.dom.num_patches(); ++pt) {
        const BilinearPatch& patch = space.dom.patches[pt];
        const auto buckets = build_buckets(space, pt);
        for (int e1 = 0; e1 <= k; ++e1)
            for (int e2 = 0; e2 <= k; ++e2) {
                const auto& acts = buckets[e1 * (k + 1) + e2];
                const int A0 = e1 * step, B0 = e2 * step;
                for (int g1 = 0; g1 < q; ++g1)
                    for (int g2 = 0; g2 < q; ++g2) {
                        const int i1 = e1 * q + g1, i2 = e2 * q + g2;
                        const Vec2 xi(tab.pts[i1], tab.pts[i2]);
                        const double detJ = patch.jacobian(xi[0], xi[1]).determinant();
                        const double wd = tab.wts[i1] * tab.wts[i2] * std::abs(detJ);
                        jet.setZero();
                        for (int idx : acts) {
                            const PatchGrid* g = space.functions[idx].grid_on(pt);
                            element_jet(*g, A0, B0, tab.vals[i1], tab.vals[i2], fjet);
                            jet += coeffs(idx) * fjet;
                        }
                        const PhysicalDers3 pd = physical_derivatives(patch, xi, jet);
                        const Vec2 x = patch.eval(xi[0], xi[1]);
                        const double uh[10] = {pd.w,   pd.g1[0],    pd.g1[1],    pd.g2(0, 0),
                                               pd.g2(0, 1), pd.g2(1, 1), pd.w111, pd.w112,
                                               pd.w122, pd.w222};
                        const int da[10] = {0, 1, 0, 2, 1, 0, 3, 2, 1, 0};
                        const int db[10] = {0, 0, 1, 0, 1, 2, 0, 1, 2, 3};
                        const int lev[10] = {0, 1, 1, 2, 2, 2, 3, 3, 3, 3};
                        for (int c = 0; c < 10; ++c) {
                            const double ue = du[da[c]][db[c]](x[0], x[1]);
                            const double diff = ue - uh[c];
                            num[lev[c]] += wd * diff * diff;
                            den[lev[c]] += wd * ue * ue;
                        }
                    }
            }
    }
    std::array<double, 4> out;
    double cn = 0.0, cd = 0.0;
    for (int i = 0; i < 4; ++i) {
        cn += num[i];
        cd += den[i];
        out[i] = std::sqrt(cn) / std::sqrt(cd);
    }
    return out;
}

void write_matrix_market(const Eigen::SparseMatrix<double>& A, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot open output file: " + path);
    out << "%%MatrixMarket matrix coordinate real symmetric\n";
    std::vector<std::array<double, 3>> entries;
    for (int col = 0; col < A.outerSize(); ++col)
        for (Eigen::SparseMatrix<double>::InnerIterator it(A, col); it; ++it)
            if (it.row() >= it.col())
                entries.push_back({static_cast<double>(it.row()), static_cast<double>(it.col()),
                                   it.value()});
    out << A.rows() << " " << A.cols() << " " << entries.size() << "\n";
    out.precision(17);
    for (const auto& e : entries)
        out << static_cast<long>(e[0]) + 1 << " " << static_cast<long>(e[1]) + 1 << " " << e[2]
            << "\n";
}

}  // namespace igac2
