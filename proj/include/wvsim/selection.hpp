#pragma once

#include <complex>

#include <Eigen/Dense>

namespace wvsim {

using complexd = std::complex<double>;

// Two-level system with a pure pre-selected state |i>, a post-selection
// projector |f><f| and a Hermitian observable A. States are normalized on
// construction; the observable must be Hermitian. Weak-value quantities are
// computed from trace forms over rho_s = |i><i| so that a mixed system state
// could be slotted in later without touching the call sites.
struct SelectionContext {
    Eigen::Vector2cd pre_state;   // |i>
    Eigen::Vector2cd post_state;  // |f>
    Eigen::Matrix2cd observable;  // A = A^dagger

    SelectionContext(const Eigen::Vector2cd& pre, const Eigen::Vector2cd& post,
                     const Eigen::Matrix2cd& obs);

    // |i> = cos(phi)|0> + i sin(phi)|1>, |f> = |0>, A = sigma_x.
    // Weak value i tan(phi), post-selection probability cos^2(phi).
    static SelectionContext qubit_sigma_x(double phi);

    // Context with weak value exactly i*kappa and post-selection probability
    // exactly `overlap`, decoupling the two knobs (the qubit_sigma_x family
    // ties them together as cos^2(phi) = 1/(1+kappa^2)). Built from a Bloch
    // triple; feasible iff overlap*(1+kappa^2) <= 1 and 0 < overlap <= 1.
    static SelectionContext with_imaginary_weak_value(double kappa, double overlap);

    // A^2 == identity within tol. The all-order interaction kernel expands
    // exp(-i theta A P) through cos/sin and requires this.
    bool involutive(double tol = 1e-12) const;
};

// A_w = Tr[Pi_f A rho_s] / Tr[Pi_f rho_s]; throws OrthogonalSelection when
// the post-selection probability is below 1e-14.
complexd weak_value(const SelectionContext& ctx);

// Tr[Pi_f A rho_s A] / Tr[Pi_f rho_s]; equals |A_w|^2 for pure rho_s.
double weak_value_abs_sq(const SelectionContext& ctx);

// Tr[Pi_f rho_s] = |<f|i>|^2, the zeroth-order post-selection probability.
double postselection_overlap(const SelectionContext& ctx);

}  // namespace wvsim
