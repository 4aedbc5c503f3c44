#include "igac2/basisspace.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <map>

#include <nlohmann/json.hpp>

namespace igac2 {

namespace {

constexpr double kSnapRel = 1e-12;

/// Greville collocation onto a fixed target space with a cached factorization.
class Collocator {
  public:
    explicit Collocator(const SplineSpace1D& S) : S_(S), pts_(S.greville()) {
        const int n = S.dim();
        Eigen::MatrixXd A(n, n);
        for (int i = 0; i < n; ++i) {
            const auto row = S.eval_all(pts_[i], 0);
            for (int j = 0; j < n; ++j) A(i, j) = row[0][j];
        }
        lu_.compute(A);
        A_ = A;
    }

    Eigen::VectorXd solve(const std::function<double(double)>& f) const {
        const int n = S_.dim();
        Eigen::VectorXd b(n);
        double fmax = 0.0;
        for (int i = 0; i < n; ++i) {
            b(i) = f(pts_[i]);
            fmax = std::max(fmax, std::abs(b(i)));
        }
        Eigen::VectorXd c = lu_.solve(b);
        const double resid = (A_ * c - b).lpNorm<Eigen::Infinity>();
        if (!c.allFinite() || resid > 1e-10 * std::max(1.0, fmax))
            throw RepresentationError("collocation: function not representable in target space");
        return c;
    }

  private:
    const SplineSpace1D& S_;
    std::vector<double> pts_;
    Eigen::MatrixXd A_;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu_;
};

double basis_fn(const SplineSpace1D& T, int j, double xi, int der) {
    std::vector<double> e(T.dim(), 0.0);
    e[j] = 1.0;
    return T.eval_coeffs(e, xi, der);
}

/// Builds the 3 x d transversal-coefficient block of one interface function
/// for one side, from that side's alpha and beta.
class SideBuilder {
  public:
    explicit SideBuilder(const SplineSpace1D& S)
        : S_(S), col_(S), mf_(m_functions(S)) {}

    Eigen::MatrixXd build(const Polynomial1D& alpha, const Polynomial1D& beta,
                          const std::array<SplineSpace1D, 3>& T, int i, int j) const {
        const int d = S_.dim();
        const double p = S_.p(), h = S_.h();
        Eigen::VectorXd f0 = Eigen::VectorXd::Zero(d), f1 = f0, f2 = f0;
        if (i == 0) {
            f0 = col_.solve([&](double x) { return basis_fn(T[0], j, x, 0); });
            f1 = col_.solve([&](double x) { return beta(x) * basis_fn(T[0], j, x, 1); });
            f2 = col_.solve(
                [&](double x) { return beta(x) * beta(x) * basis_fn(T[0], j, x, 2); });
        } else if (i == 1) {
            const double c = p / h;
            f1 = col_.solve([&](double x) { return c * alpha(x) * basis_fn(T[1], j, x, 0); });
            f2 = col_.solve(
                [&](double x) { return c * 2.0 * alpha(x) * beta(x) * basis_fn(T[1], j, x, 1); });
        } else if (i == 2) {
            const double c = p * (p - 1.0) / (h * h);
            f2 = col_.solve(
                [&](double x) { return c * alpha(x) * alpha(x) * basis_fn(T[2], j, x, 0); });
        } else {
            throw InvalidParameterError("interface function level must be 0, 1 or 2");
        }
        Eigen::MatrixXd B = Eigen::MatrixXd::Zero(3, d);
        for (int q = 0; q < 3; ++q)
            B.row(q) = mf_.m0.coeffs[q] * f0.transpose() + mf_.m1.coeffs[q] * f1.transpose() +
                       mf_.m2.coeffs[q] * f2.transpose();
        return B;
    }

  private:
    const SplineSpace1D& S_;
    Collocator col_;
    MFunctions mf_;
};

SquareSymmetry compose(const SquareSymmetry& a, const SquareSymmetry& b) {
    // (a o b)(x) = a(b(x))
    const Vec2 probes[3] = {Vec2(0, 0), Vec2(1, 0), Vec2(0, 1)};
    for (const auto& s : SquareSymmetry::all()) {
        bool ok = true;
        for (const Vec2& x : probes)
            if ((s(x) - a(b(x))).norm() > 1e-12) ok = false;
        if (ok) return s;
    }
    throw Error("square symmetry composition failed");  // unreachable
}

const SquareSymmetry kSwap{true, false, false};
const SquareSymmetry kMirror2{false, false, true};

Interface reversed_view(const Interface& itf) {
    Interface rev = itf;
    std::swap(rev.endpoint_cluster[0], rev.endpoint_cluster[1]);
    for (int s = 0; s < 2; ++s) rev.sym[s] = compose(itf.sym[s], kMirror2);
    return rev;
}

using GridMap = std::map<int, Eigen::MatrixXd>;  // patch id -> full d x d grid

void add_side_grids(GridMap& fulls, const Interface& view, int d, const EdgeSideGrids& sides,
                    double scale = 1.0) {
    for (int s = 0; s < 2; ++s) {
        auto [it, inserted] = fulls.try_emplace(view.patch[s], Eigen::MatrixXd::Zero(d, d));
        scatter_symmetric(view.sym[s].inverse(), d, 0, 0, sides.side[s], it->second, scale);
    }
}

IsogeometricFunction compress(IsogeometricFunction::Kind kind, int owner, const GridMap& fulls) {
    double maxabs = 0.0;
    for (const auto& [pt, g] : fulls) maxabs = std::max(maxabs, g.lpNorm<Eigen::Infinity>());
    const double snap = kSnapRel * maxabs;
    IsogeometricFunction f;
    f.kind = kind;
    f.owner = owner;
    for (const auto& [pt, g] : fulls) {
        const int d = static_cast<int>(g.rows());
        int ilo = d, ihi = -1, jlo = d, jhi = -1;
        for (int a = 0; a < d; ++a)
            for (int b = 0; b < d; ++b)
                if (std::abs(g(a, b)) > snap) {
                    ilo = std::min(ilo, a);
                    ihi = std::max(ihi, a);
                    jlo = std::min(jlo, b);
                    jhi = std::max(jhi, b);
                }
        if (ihi < 0) continue;
        PatchGrid pg;
        pg.patch = pt;
        pg.i0 = ilo;
        pg.j0 = jlo;
        pg.a = g.block(ilo, jlo, ihi - ilo + 1, jhi - jlo + 1);
        for (int a = 0; a < pg.a.rows(); ++a)
            for (int b = 0; b < pg.a.cols(); ++b)
                if (std::abs(pg.a(a, b)) <= snap) pg.a(a, b) = 0.0;
        f.grids.push_back(std::move(pg));
    }
    return f;
}

std::pair<int, int> corner_at(const BilinearPatch& p, const Vec2& pos, double tol) {
    for (int ci = 0; ci < 2; ++ci)
        for (int cj = 0; cj < 2; ++cj)
            if ((p.corner(ci, cj) - pos).norm() < tol) return {ci, cj};
    throw TopologyError("interface endpoint is not a corner of an adjacent patch");
}

Eigen::Matrix3d corner_block(const Eigen::MatrixXd& full, int ci, int cj) {
    const int d = static_cast<int>(full.rows());
    return full.block(ci ? d - 3 : 0, cj ? d - 3 : 0, 3, 3);
}

/// The middle transversal-level-0 function of a short interface (the case
/// p=5, r=2, k=3, where its support reaches both interface endpoints),
/// corrected by near-end functions so that its second-order jet vanishes at
/// both endpoints.
IsogeometricFunction corrected_middle_function(const SplineSpace1D& S,
                                               const MultiPatchDomain& dom, const Interface& itf,
                                               const InterfaceGluing& g, const SideBuilder& sb) {
    const int d = S.dim();
    auto build_fulls = [&](const Interface& view, const InterfaceGluing& gv, int i,
                           int j) -> GridMap {
        const auto T = trace_spaces(S.p(), S.r(), S.k(), gv.d_alpha);
        EdgeSideGrids sides;
        for (int s = 0; s < 2; ++s) {
            const bool is_l = (s == gv.side_l);
            sides.side[s] =
                sb.build(is_l ? gv.alpha_l : gv.alpha_r, is_l ? gv.beta_l : gv.beta_r, T, i, j);
        }
        GridMap fulls;
        add_side_grids(fulls, view, d, sides);
        return fulls;
    };

    const GridMap base = build_fulls(itf, g, 0, 4);
    const Interface rev = reversed_view(itf);
    const InterfaceGluing grev = gluing_data(dom, rev);
    std::vector<GridMap> cands;
    for (int v = 0; v < 2; ++v)
        for (int i = 0; i <= 2; ++i)
            for (int j = 0; j <= std::min(4 - i, 3); ++j)
                cands.push_back(build_fulls(v == 0 ? itf : rev, v == 0 ? g : grev, i, j));

    // Enforce a vanishing 3x3 coefficient corner block at both endpoints on
    // both patches (equivalent to a vanishing second-order jet there).
    const double tol = 1e-9 * dom.diameter;
    const int neq = 2 * 2 * 9;
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(neq, static_cast<int>(cands.size()));
    Eigen::VectorXd b = Eigen::VectorXd::Zero(neq);
    int row = 0;
    for (int e = 0; e < 2; ++e) {
        const Vec2 pos = dom.corner_points[itf.endpoint_cluster[e]];
        for (int s = 0; s < 2; ++s) {
            const int pt = itf.patch[s];
            const auto [ci, cj] = corner_at(dom.patches[pt], pos, tol);
            const Eigen::Matrix3d bb = corner_block(base.at(pt), ci, cj);
            for (int a = 0; a < 3; ++a)
                for (int c = 0; c < 3; ++c) {
                    b(row) = bb(a, c);
                    for (size_t q = 0; q < cands.size(); ++q) {
                        auto it = cands[q].find(pt);
                        if (it != cands[q].end())
                            A(row, static_cast<int>(q)) = corner_block(it->second, ci, cj)(a, c);
                    }
                    ++row;
                }
        }
    }
    const Eigen::VectorXd c = A.bdcSvd(Eigen::ComputeThinU | Eigen::ComputeThinV).solve(b);
    const double resid = (A * c - b).lpNorm<Eigen::Infinity>();
    if (resid > 1e-10 * std::max(1.0, b.lpNorm<Eigen::Infinity>()))
        throw RepresentationError(
            "short-interface correction: endpoint jets cannot be eliminated");

    GridMap out = base;
    for (size_t q = 0; q < cands.size(); ++q)
        for (const auto& [pt, grid] : cands[q]) out[pt] -= c(static_cast<int>(q)) * grid;
    return compress(IsogeometricFunction::Kind::Edge, itf.id, out);
}

}  // namespace

const PatchGrid* IsogeometricFunction::grid_on(int patch) const {
    for (const auto& g : grids)
        if (g.patch == patch) return &g;
    return nullptr;
}

double IsogeometricFunction::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& g : grids) m = std::max(m, g.a.lpNorm<Eigen::Infinity>());
    return m;
}

Eigen::MatrixXd function_jet(const SplineSpace1D& S, const IsogeometricFunction& f, int patch,
                             const Vec2& xi, int max_deriv) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(max_deriv + 1, max_deriv + 1);
    const PatchGrid* g = f.grid_on(patch);
    if (!g) return out;
    const auto U = S.eval_all(xi[0], max_deriv);
    const auto V = S.eval_all(xi[1], max_deriv);
    for (int d1 = 0; d1 <= max_deriv; ++d1)
        for (int d2 = 0; d2 <= max_deriv; ++d2) {
            double s = 0.0;
            for (int a = 0; a < g->a.rows(); ++a)
                for (int b = 0; b < g->a.cols(); ++b)
                    s += g->a(a, b) * U[d1][g->i0 + a] * V[d2][g->j0 + b];
            out(d1, d2) = s;
        }
    return out;
}

void scatter_symmetric(const SquareSymmetry& s, int d, int i0, int j0,
                       const Eigen::MatrixXd& block, Eigen::MatrixXd& out, double scale) {
    for (int a = 0; a < block.rows(); ++a)
        for (int b = 0; b < block.cols(); ++b) {
            if (block(a, b) == 0.0) continue;
            const int A = i0 + a, B = j0 + b;
            const int Ap = s.flip1 ? d - 1 - A : A;
            const int Bp = s.flip2 ? d - 1 - B : B;
            if (s.swap)
                out(Bp, Ap) += scale * block(a, b);
            else
                out(Ap, Bp) += scale * block(a, b);
        }
}

std::pair<int, int> edge_window(int i, int j, int m, int d, int n_i) {
    return {std::max(0, i + j - m), std::min(d - 1, d - n_i + j - i + m)};
}

std::array<SplineSpace1D, 3> trace_spaces(int p, int r, int k, int d_alpha) {
    return {SplineSpace1D::create(p, r + 2, k), SplineSpace1D::create(p - d_alpha, r + 1, k),
            SplineSpace1D::create(p - 2 * d_alpha, r, k)};
}

EdgeSideGrids edge_side_grids(const SplineSpace1D& S, const Interface& view,
                              const InterfaceGluing& g, int i, int j) {
    const SideBuilder sb(S);
    const auto T = trace_spaces(S.p(), S.r(), S.k(), g.d_alpha);
    EdgeSideGrids out;
    for (int s = 0; s < 2; ++s) {
        const bool is_l = (s == g.side_l);
        out.side[s] =
            sb.build(is_l ? g.alpha_l : g.alpha_r, is_l ? g.beta_l : g.beta_r, T, i, j);
    }
    return out;
}

BasisSpace assemble_space(const MultiPatchDomain& dom, int p, int r, int k) {
    const bool special = (p == 5 && r == 2 && k == 3);
    if (!special && k * (p - r - 2) < 9 - p)
        throw InvalidParameterError(
            "assemble_space: too few inner knots for this degree/regularity");

    BasisSpace bs;
    bs.dom = dom;
    bs.p = p;
    bs.r = r;
    bs.k = k;
    bs.S = make_space(p, r, k);
    const SplineSpace1D& S = bs.S;
    const int d = S.dim();
    if (d < 7) throw InvalidParameterError("assemble_space: univariate dimension too small");

    // Patch functions: tensor B-splines away from all patch edges.
    for (int pt = 0; pt < dom.num_patches(); ++pt)
        for (int i = 3; i <= d - 4; ++i)
            for (int j = 3; j <= d - 4; ++j) {
                IsogeometricFunction f;
                f.kind = IsogeometricFunction::Kind::Patch;
                f.owner = pt;
                PatchGrid g;
                g.patch = pt;
                g.i0 = i;
                g.j0 = j;
                g.a = Eigen::MatrixXd::Ones(1, 1);
                f.grids.push_back(std::move(g));
                bs.functions.push_back(std::move(f));
                ++bs.n_patch;
            }

    const SideBuilder sb(S);

    // Interface functions: supported near one interface, vanishing with a
    // second-order jet at its endpoints.
    for (const Interface& itf : dom.interfaces) {
        const InterfaceGluing g = gluing_data(dom, itf);
        const auto T = trace_spaces(p, r, k, g.d_alpha);
        if (special) {
            bs.functions.push_back(corrected_middle_function(S, dom, itf, g, sb));
            ++bs.n_edge;
        }
        for (int i = 0; i <= 2; ++i) {
            const int n_i = T[i].dim();
            for (int j = 5 - i; j <= n_i + i - 6; ++j) {
                const EdgeSideGrids sides = edge_side_grids(S, itf, g, i, j);
                GridMap fulls;
                add_side_grids(fulls, itf, d, sides);
                bs.functions.push_back(compress(IsogeometricFunction::Kind::Edge, itf.id, fulls));
                ++bs.n_edge;
            }
        }
    }

    // Vertex functions.
    const auto E0 = S.eval_all(0.0, 2);
    Eigen::Matrix3d E;
    for (int a = 0; a < 3; ++a)
        for (int m = 0; m < 3; ++m) E(a, m) = E0[a][m];

    for (const VertexFan& fan : dom.vertices) {
        const int nu = fan.num_patches();
        const int nbar = fan.valency;
        std::vector<std::pair<int, int>> lab_idx;
        for (int i = 0; i <= 2; ++i)
            for (int j = 0; j <= (special ? std::min(4 - i, 3) : 4 - i); ++j)
                lab_idx.push_back({i, j});
        const int L = static_cast<int>(lab_idx.size());

        struct LabelData {
            bool interior = false;
            std::vector<Eigen::MatrixXd> b_prev, b_next;  // 3 x d side blocks per unknown
        };
        std::vector<LabelData> lds(nbar);
        for (int t = 0; t < nbar; ++t) {
            int prevfi, nextfi;
            if (fan.boundary) {
                if (t == 0 || t == nbar - 1) continue;  // boundary edge labels
                prevfi = t - 1;
                nextfi = t;
            } else {
                prevfi = (t - 1 + nbar) % nbar;
                nextfi = t % nbar;
            }
            Interface view;
            view.id = fan.interfaces[fan.boundary ? t - 1 : (t - 1 + nbar) % nbar];
            view.patch[0] = fan.patches[prevfi];
            view.sym[0] = fan.syms[prevfi];
            view.patch[1] = fan.patches[nextfi];
            view.sym[1] = compose(fan.syms[nextfi], kSwap);
            const InterfaceGluing gv = gluing_data(dom, view);
            if (gv.side_l != 1)
                throw GeometryError("vertex fan: unexpected interface orientation");
            const auto Tv = trace_spaces(p, r, k, gv.d_alpha);
            LabelData& ld = lds[t];
            ld.interior = true;
            for (const auto& [i, j] : lab_idx) {
                EdgeSideGrids sides;
                for (int s = 0; s < 2; ++s) {
                    const bool is_l = (s == gv.side_l);
                    sides.side[s] = sb.build(is_l ? gv.alpha_l : gv.alpha_r,
                                             is_l ? gv.beta_l : gv.beta_r, Tv, i, j);
                }
                ld.b_prev.push_back(sides.side[0]);
                ld.b_next.push_back(sides.side[1]);
            }
        }

        const int cols = nbar * L + nu * 9;
        const int rows = nu * 18 + (fan.boundary ? 2 * L + nu * 9 : 0);
        Eigen::MatrixXd H = Eigen::MatrixXd::Zero(rows, cols);
        auto lcol = [&](int t, int q) { return t * L + q; };
        auto pcol = [&](int l, int i, int j) { return nbar * L + l * 9 + 3 * i + j; };

        for (int l = 0; l < nu; ++l) {
            const int tprev = l;
            const int tnext = fan.boundary ? l + 1 : (l + 1) % nbar;
            for (int q = 0; q < L; ++q) {
                if (lds[tnext].interior) {
                    // Patch l is the "prev" side of label tnext.
                    const Eigen::Matrix3d C = lds[tnext].b_prev[q].block(0, 0, 3, 3);
                    const Eigen::Matrix3d D = E * C * E.transpose();
                    for (int a = 0; a < 3; ++a)
                        for (int b = 0; b < 3; ++b) {
                            H(l * 18 + 3 * a + b, lcol(tnext, q)) += D(a, b);
                            H(l * 18 + 9 + 3 * a + b, lcol(tnext, q)) += D(a, b);
                        }
                }
                if (lds[tprev].interior) {
                    // Patch l is the "next" (transposed) side of label tprev.
                    const Eigen::Matrix3d C =
                        lds[tprev].b_next[q].block(0, 0, 3, 3).transpose();
                    const Eigen::Matrix3d D = E * C * E.transpose();
                    for (int a = 0; a < 3; ++a)
                        for (int b = 0; b < 3; ++b)
                            H(l * 18 + 3 * a + b, lcol(tprev, q)) -= D(a, b);
                }
            }
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                    for (int a = 0; a < 3; ++a)
                        for (int b = 0; b < 3; ++b)
                            H(l * 18 + 9 + 3 * a + b, pcol(l, i, j)) -= E(a, i) * E(b, j);
        }
        if (fan.boundary) {
            const int base = nu * 18;
            for (int q = 0; q < L; ++q) {
                H(base + q, lcol(0, q)) = 1.0;
                H(base + L + q, lcol(nbar - 1, q)) = 1.0;
            }
            for (int l = 0; l < nu; ++l)
                for (int ij = 0; ij < 9; ++ij)
                    H(base + 2 * L + l * 9 + ij, nbar * L + l * 9 + ij) = 1.0;
        }
        for (int rI = 0; rI < rows; ++rI) {
            const double m = H.row(rI).lpNorm<Eigen::Infinity>();
            if (m > 0.0) H.row(rI) /= m;
        }

        Eigen::JacobiSVD<Eigen::MatrixXd> svd(H, Eigen::ComputeFullV);
        const Eigen::VectorXd sv = svd.singularValues();
        const double s0 = sv.size() ? sv(0) : 0.0;
        if (s0 <= 0.0) throw RankAmbiguityError("vertex system is identically zero");
        int rank = 0;
        for (int i = 0; i < sv.size(); ++i) {
            const double rel = sv(i) / s0;
            if (rel > 1e-10 && rel < 1e-6)
                throw RankAmbiguityError("vertex system rank is numerically ambiguous");
            if (rel >= 1e-8) ++rank;
        }
        const int kdim = cols - rank;
        bs.vertex_dims.push_back(kdim);

        for (int kv = 0; kv < kdim; ++kv) {
            const Eigen::VectorXd x = svd.matrixV().col(rank + kv);
            GridMap fulls;
            for (int l = 0; l < nu; ++l) {
                const int tprev = l;
                const int tnext = fan.boundary ? l + 1 : (l + 1) % nbar;
                Eigen::MatrixXd fan_full = Eigen::MatrixXd::Zero(d, d);
                for (int q = 0; q < L; ++q) {
                    if (lds[tprev].interior)
                        fan_full.block(0, 0, d, 3) +=
                            x(lcol(tprev, q)) * lds[tprev].b_next[q].transpose();
                    if (lds[tnext].interior)
                        fan_full.block(0, 0, 3, d) += x(lcol(tnext, q)) * lds[tnext].b_prev[q];
                }
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j) fan_full(i, j) -= x(pcol(l, i, j));
                auto [it, ins] =
                    fulls.try_emplace(fan.patches[l], Eigen::MatrixXd::Zero(d, d));
                scatter_symmetric(fan.syms[l].inverse(), d, 0, 0, fan_full, it->second, 1.0);
            }
            IsogeometricFunction f = compress(IsogeometricFunction::Kind::Vertex, fan.id, fulls);
            // Normalize: largest coefficient becomes +1.
            double best = 0.0;
            for (const auto& gr : f.grids)
                for (int a = 0; a < gr.a.rows(); ++a)
                    for (int b = 0; b < gr.a.cols(); ++b)
                        if (std::abs(gr.a(a, b)) > std::abs(best)) best = gr.a(a, b);
            if (best != 0.0)
                for (auto& gr : f.grids) gr.a /= best;
            bs.functions.push_back(std::move(f));
            ++bs.n_vertex;
        }
    }
    return bs;
}

SmoothnessResiduals function_smoothness(const BasisSpace& space, const IsogeometricFunction& f,
                                        const Interface& itf, int samples) {
    return g2_residuals(
        space.dom, itf,
        [&](int patch, const Vec2& xi) -> std::array<double, 6> {
            const Eigen::MatrixXd j = function_jet(space.S, f, patch, xi, 2);
            return {j(0, 0), j(1, 0), j(0, 1), j(2, 0), j(1, 1), j(0, 2)};
        },
        samples);
}

double boundary_jet_residual(const BasisSpace& space, const IsogeometricFunction& f,
                             const BoundaryEdge& be, int samples) {
    double worst = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double t = (i + 0.5) / samples;
        Vec2 xi;
        switch (be.local_edge) {
            case 0: xi = {t, 0.0}; break;
            case 1: xi = {1.0, t}; break;
            case 2: xi = {t, 1.0}; break;
            default: xi = {0.0, t}; break;
        }
        const Eigen::MatrixXd j = function_jet(space.S, f, be.patch, xi, 2);
        const PhysicalJet2 pj = physical_jet2(
            space.dom.patches[be.patch], xi,
            {j(0, 0), j(1, 0), j(0, 1), j(2, 0), j(1, 1), j(0, 2)});
        worst = std::max({worst, std::abs(pj.value), pj.grad.lpNorm<Eigen::Infinity>(),
                          pj.hess.lpNorm<Eigen::Infinity>()});
    }
    return worst;
}

std::string export_basis_json(const BasisSpace& space) {
    nlohmann::json j;
    j["p"] = space.p;
    j["r"] = space.r;
    j["k"] = space.k;
    j["dim"] = space.dim();
    j["counts"] = {{"patch", space.n_patch}, {"edge", space.n_edge}, {"vertex", space.n_vertex}};
    j["vertex_dims"] = space.vertex_dims;
    nlohmann::json funcs = nlohmann::json::array();
    for (const auto& f : space.functions) {
        nlohmann::json fj;
        fj["kind"] = f.kind == IsogeometricFunction::Kind::Patch
                         ? "patch"
                         : (f.kind == IsogeometricFunction::Kind::Edge ? "edge" : "vertex");
        fj["owner"] = f.owner;
        nlohmann::json grids = nlohmann::json::array();
        for (const auto& g : f.grids) {
            nlohmann::json gj;
            gj["patch"] = g.patch;
            gj["i0"] = g.i0;
            gj["j0"] = g.j0;
            gj["rows"] = g.a.rows();
            gj["cols"] = g.a.cols();
            std::vector<double> data(g.a.size());
            for (int a = 0; a < g.a.rows(); ++a)
                for (int b = 0; b < g.a.cols(); ++b) data[a * g.a.cols() + b] = g.a(a, b);
            gj["data"] = data;
            grids.push_back(std::move(gj));
        }
        fj["grids"] = std::move(grids);
        funcs.push_back(std::move(fj));
    }
    j["functions"] = std::move(funcs);
    return j.dump();
}

}  // namespace igac2
