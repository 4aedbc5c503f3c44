#include "igac2/gluing.hpp"

#include <cmath>

namespace igac2 {

namespace {

// Components of D1 G(0, xi) and of d/dxi G(0, xi) for G = patch o sym,
// as polynomials in the edge parameter xi.
struct EdgeFrame {
    Polynomial1D d1[2];   // transversal derivative along the edge (linear)
    Polynomial1D dxi[2];  // edge tangent (constant: the edge is straight)
};

EdgeFrame edge_frame(const BilinearPatch& patch, const SquareSymmetry& sym) {
    const BilinearPatch g = patch.reparam(sym);
    EdgeFrame f;
    for (int c = 0; c < 2; ++c) {
        const double a = g.c10[c] - g.c00[c];
        const double b = g.c11[c] - g.c01[c];
        f.d1[c] = Polynomial1D::linear(a, b - a);
        f.dxi[c] = Polynomial1D::constant(g.c01[c] - g.c00[c]);
    }
    return f;
}

Polynomial1D det2(const Polynomial1D ax[2], const Polynomial1D bx[2]) {
    return ax[0] * bx[1] - ax[1] * bx[0];
}

}  // namespace

Polynomial1D InterfaceGluing::eta() const {
    return alpha_l.derivative() * alpha_r * beta * Polynomial1D::constant(2.0);
}

Polynomial1D InterfaceGluing::theta() const {
    return (alpha_l * beta_l.derivative() - alpha_l.derivative() * beta_l) * alpha_r * beta *
           Polynomial1D::constant(2.0);
}

InterfaceGluing gluing_data(const MultiPatchDomain& dom, const Interface& itf) {
    EdgeFrame frames[2];
    for (int s = 0; s < 2; ++s)
        frames[s] = edge_frame(dom.patches[itf.patch[s]], itf.sym[s]);

    // Both standardized frames trace the same directed edge.
    for (int c = 0; c < 2; ++c)
        if (std::abs(frames[0].dxi[c](0.0) - frames[1].dxi[c](0.0)) >
            1e-10 * dom.diameter)
            throw TopologyError("interface sides are not consistently standardized");

    Polynomial1D abar[2];
    for (int s = 0; s < 2; ++s) abar[s] = det2(frames[s].d1, frames[s].dxi);

    const bool neg0 = abar[0](0.5) < 0.0;
    const bool neg1 = abar[1](0.5) < 0.0;
    if (neg0 == neg1) throw GeometryError("gluing_data: sides have identical orientation");
    // alpha_bar of each side must not vanish on [0,1] (regular geometry).
    for (int s = 0; s < 2; ++s)
        if (abar[s](0.0) * abar[s](1.0) <= 0.0)
            throw GeometryError("gluing_data: Jacobian determinant changes sign along interface");

    InterfaceGluing g;
    g.interface_id = itf.id;
    g.side_l = neg0 ? 0 : 1;
    g.side_r = neg0 ? 1 : 0;
    g.alpha_bar_l = abar[g.side_l];
    g.alpha_bar_r = abar[g.side_r];
    g.beta_bar = det2(frames[g.side_l].d1, frames[g.side_r].d1);

    // Tangential shear beta^{(tau)} = (D1 F . t) / |t|^2 with constant tangent t.
    const double t0 = frames[0].dxi[0](0.0), t1 = frames[0].dxi[1](0.0);
    const double tn2 = t0 * t0 + t1 * t1;
    auto shear = [&](const EdgeFrame& f) {
        return (f.d1[0].scaled(t0) + f.d1[1].scaled(t1)).scaled(1.0 / tn2);
    };
    g.beta_l = shear(frames[g.side_l]);
    g.beta_r = shear(frames[g.side_r]);

    // gamma minimizes int((gamma*abar_l + 1)^2 + (gamma*abar_r - 1)^2), i.e.
    // pushes the scaled determinants towards -1 and +1 (exact polynomial
    // integrals; the integrands are quadratic).
    const double num = (g.alpha_bar_r - g.alpha_bar_l).integral01();
    const double den =
        (g.alpha_bar_l * g.alpha_bar_l + g.alpha_bar_r * g.alpha_bar_r).integral01();
    g.gamma = num / den;
    g.alpha_l = g.alpha_bar_l.scaled(g.gamma);
    g.alpha_r = g.alpha_bar_r.scaled(g.gamma);
    g.beta = g.beta_bar.scaled(g.gamma);
    g.d_alpha = std::max(g.alpha_l.degree(), g.alpha_r.degree());

    // Consistency: beta == alpha_l * beta_r - alpha_r * beta_l.
    const Polynomial1D check = g.alpha_l * g.beta_r - g.alpha_r * g.beta_l - g.beta;
    for (double xi : {0.0, 0.25, 0.5, 0.75, 1.0})
        if (std::abs(check(xi)) > 1e-10 * (1.0 + std::abs(g.beta(xi))))
            throw GeometryError("gluing_data: gluing identity violated");
    return g;
}

PhysicalJet2 physical_jet2(const BilinearPatch& patch, const Vec2& xi,
                           const std::array<double, 6>& pder) {
    PhysicalJet2 out;
    out.value = pder[0];
    const Mat2 J = patch.jacobian(xi[0], xi[1]);
    const Mat2 Jinv = J.inverse();
    const Vec2 gpar(pder[1], pder[2]);
    out.grad = Jinv.transpose() * gpar;
    Mat2 Hpar;
    Hpar << pder[3], pder[4], pder[4], pder[5];
    // Subtract the curvature of the geometry: the only nonzero second
    // derivative of a bilinear map is the mixed one.
    const Vec2 m = patch.mixed();
    const double corr = out.grad.dot(m);
    Mat2 Hcorr = Mat2::Zero();
    Hcorr(0, 1) = Hcorr(1, 0) = corr;
    out.hess = Jinv.transpose() * (Hpar - Hcorr) * Jinv;
    return out;
}

SmoothnessResiduals g2_residuals(
    const MultiPatchDomain& dom, const Interface& itf,
    const std::function<std::array<double, 6>(int patch, const Vec2& xi)>& jet, int samples) {
    SmoothnessResiduals res;
    for (int i = 0; i < samples; ++i) {
        const double xi = (i + 1.0) / (samples + 1.0);
        PhysicalJet2 j[2];
        for (int s = 0; s < 2; ++s) {
            const Vec2 local = itf.sym[s](Vec2(0.0, xi));
            j[s] = physical_jet2(dom.patches[itf.patch[s]], local,
                                 jet(itf.patch[s], local));
        }
        res.value = std::max(res.value, std::abs(j[0].value - j[1].value));
        res.gradient = std::max(res.gradient, (j[0].grad - j[1].grad).lpNorm<Eigen::Infinity>());
        res.hessian = std::max(res.hessian, (j[0].hess - j[1].hess).lpNorm<Eigen::Infinity>());
    }
    return res;
}

}  // namespace igac2
