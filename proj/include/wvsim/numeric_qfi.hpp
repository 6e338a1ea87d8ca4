#pragma once

#include <Eigen/Dense>

#include "wvsim/grid.hpp"
#include "wvsim/meter.hpp"
#include "wvsim/selection.hpp"

namespace wvsim {

// Quadrature discretization of the normalized meter kernel and its
// theta-derivative: matrix(i,j) = rho(p_i, p_j) dp, so that matrix acts as a
// density operator on the grid (unit trace, contractions are plain matrix
// products).
struct DiscretizedState {
    MomentumGrid grid;
    Eigen::MatrixXcd matrix;
    Eigen::MatrixXcd derivative;
};

// Builds both matrices from the analytic kernel (no finite differences).
// Validates resolution via require_resolved and caps n at 8192.
DiscretizedState discretize(const PostSelectedMeterState& state);

// Exact-coupling Fisher information of the discretized state via the
// symmetric logarithmic derivative: eigendecompose rho, then
//   sum_{d_i + d_j >= cutoff} 2 |(V^+ drho V)_ij|^2 / (d_i + d_j),
// cutoff = 1e-12 * d_max. skipped_mass reports the derivative weight lost to
// the cutoff (relative, in Frobenius measure); above 1e-6 the inversion is
// ill-posed and DegenerateSupport is thrown.
struct SldResult {
    double qfi;
    double skipped_mass;
};

SldResult sld_qfi(const DiscretizedState& d);

// Post-selected information per input trial: probability * sld_qfi of the
// conditional state.
double effective_qfi(const PostSelectedMeterState& state);

// Independent check of sld_qfi through Bures fidelity,
//   I(theta) = 8 (1 - sqrt(F(rho_theta, rho_theta+eps))) / eps^2,
// with sqrt(F) as the nuclear norm of sqrt(rho') sqrt(rho), the baseline
// F(rho, rho) pushed through the identical pipeline to cancel clamp bias,
// and one Richardson step in eps. Validated for eps in [1e-5, 1e-3].
double bures_qfi_oracle(const PostSelectedMeterState& state, double epsilon = 1e-3);

// Fisher information of the diagonal distribution under a flat (maximally
// mixed) probe on [-p_max, p_max]: rho(p) = g(p)/N with
// g = cos^2 + 2 Im(a_w) cos sin + a_sq sin^2 (arguments theta p), and
//   I = integral (rho')^2 / rho.
// Grows as (4/3) p_max^2 for a_w = i kappa. Nodes where g < 1e-12 * max g
// (widened by one node each side) are excluded and their probability mass
// reported.
struct FlatWindowResult {
    double qfi;
    double excluded_mass;
};

FlatWindowResult flat_window_qfi(double theta, const SelectionContext& ctx, double p_max,
                                 int n_points = 16384);

}  // namespace wvsim
