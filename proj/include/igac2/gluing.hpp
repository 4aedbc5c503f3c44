#pragma once

#include "igac2/bspline.hpp"
#include "igac2/multipatch.hpp"

namespace igac2 {

/// Gluing data of an interface between two bilinearly parameterized patches,
/// both viewed in the standardized frame of Interface::sym (edge at xi1 = 0,
/// common parameter xi running along the edge). Side "l" is the one whose
/// reparameterized Jacobian determinant is negative along the edge, side "r"
/// the positive one; exactly one of each exists for a valid interface.
struct InterfaceGluing {
    int interface_id = 0;
    int side_l = 0, side_r = 1;  // indices into Interface::patch / Interface::sym

    Polynomial1D alpha_bar_l, alpha_bar_r;  // det of the reparameterized Jacobian (linear)
    Polynomial1D beta_bar;                  // det[D1 F^l, D1 F^r] along the edge (quadratic)
    Polynomial1D beta_l, beta_r;            // tangential shear of each side (linear)

    double gamma = 1.0;                 // scaling minimizing the size of alpha^2 terms
    Polynomial1D alpha_l, alpha_r;      // gamma * alpha_bar
    Polynomial1D beta;                  // gamma * beta_bar == alpha_l*beta_r - alpha_r*beta_l
    int d_alpha = 0;                    // max degree of alpha_l, alpha_r (0 or 1)

    Polynomial1D eta() const;    // 2 * (alpha_l)' * alpha_r * beta
    Polynomial1D theta() const;  // 2 * (alpha_l*(beta_l)' - (alpha_l)'*beta_l) * alpha_r * beta
};

InterfaceGluing gluing_data(const MultiPatchDomain& dom, const Interface& itf);

/// Value, gradient and Hessian of a patch function in physical coordinates,
/// from its parametric derivatives up to order two.
struct PhysicalJet2 {
    double value = 0.0;
    Vec2 grad = Vec2::Zero();
    Mat2 hess = Mat2::Zero();
};

/// pder = {u, u_1, u_2, u_11, u_12, u_22} (parametric derivatives at xi).
PhysicalJet2 physical_jet2(const BilinearPatch& patch, const Vec2& xi,
                           const std::array<double, 6>& pder);

/// Mismatch of value / physical gradient / physical Hessian across an
/// interface at `samples` equispaced interior points. `jet` returns the
/// parametric derivatives {u, u_1, u_2, u_11, u_12, u_22} of the function on
/// the given patch (in the patch's own frame, not the standardized one).
struct SmoothnessResiduals {
    double value = 0.0;
    double gradient = 0.0;
    double hessian = 0.0;
    double max() const { return std::max(value, std::max(gradient, hessian)); }
};

SmoothnessResiduals g2_residuals(
    const MultiPatchDomain& dom, const Interface& itf,
    const std::function<std::array<double, 6>(int patch, const Vec2& xi)>& jet, int samples = 50);

}  // namespace igac2
