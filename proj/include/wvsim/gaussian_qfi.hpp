#pragma once

#include <Eigen/Dense>

#include "wvsim/grid.hpp"
#include "wvsim/probe.hpp"
#include "wvsim/selection.hpp"

namespace wvsim {

// Single-mode Gaussian state summary in (x, p) with theta-derivatives of
// every block, sufficient for the Gaussian Fisher information formula.
struct GaussianSummary {
    Eigen::Vector2d mean;
    Eigen::Matrix2d covariance;
    double purity;
    Eigen::Vector2d mean_derivative;
    Eigen::Matrix2d covariance_derivative;
    double purity_derivative;
};

// Weak-coupling Gaussian description of the post-selected thermal meter:
// covariance diag(4 sigma^2, hbar^2/(4 sigma^2) + k_B m T) frozen at its
// initial value, mean displaced to theta * (2 hbar Re A_w, Im A_w beta/(2 sigma^2)).
GaussianSummary gaussian_summary_weak(const ThermalGaussianProbe& probe,
                                      const SelectionContext& ctx, double theta);

// Phase-space density of that Gaussian at (x, p); normalized to 1.
double wigner_weak(const ThermalGaussianProbe& probe, const SelectionContext& ctx, double theta,
                   double x, double p);

// Fisher information of a Gaussian family:
//   Tr[(Sigma^-1 Sigma')^2] / (2 (1 + P^2)) + 2 P'^2 / (1 - P^4)
//     + dMean^T Sigma^-1 dMean.
// Throws SingularCovariance when det(Sigma) < 1e-14 and invalid_argument on
// an asymmetric covariance or a purity inconsistent with det(Sigma).
double gaussian_qfi(const GaussianSummary& summary);

// Fisher information about theta available without conditioning on the
// system: closed_form = hbar^2 <A^2>_i / sigma^2 from the joint pure state,
// numeric = SLD information of the unselected reduced meter state. They
// coincide only when tracing the system loses nothing (an eigenstate of the
// observable at T = 0).
struct NoPostselectionQfi {
    double closed_form;
    double numeric;
};

NoPostselectionQfi qfi_no_postselection(const ThermalGaussianProbe& probe,
                                        const SelectionContext& ctx, double theta);
NoPostselectionQfi qfi_no_postselection(const ThermalGaussianProbe& probe,
                                        const SelectionContext& ctx, double theta,
                                        const MomentumGrid& grid);

// Ratios of post-selected to unconditioned information in the weak limit.
// pure_ratio counts the success probability against the transition element;
// post_ratio is the thermal gain factor (1 when the transition element
// vanishes, taking the 0/0 limit).
struct QfiRatios {
    double pure_ratio;
    double post_ratio;
};

QfiRatios qfi_ratios(const ThermalGaussianProbe& probe, const SelectionContext& ctx);

}  // namespace wvsim
