#pragma once

#include "wvsim/grid.hpp"
#include "wvsim/probe.hpp"
#include "wvsim/selection.hpp"

namespace wvsim {

// Coefficients of the four-term interaction kernel
//   f(p,p') = cos cos' + i conj(a_w) cos sin' - i a_w sin cos' + a_sq sin sin'
// (arguments theta*p, theta*p'). For the post-selected branch a_w is the weak
// value and a_sq the trace form of |A_w|^2; the unselected branch reuses the
// same algebra with <A>_i and <A^2>_i. amplitude_sq carries |<f|i>|^2 (1 for
// the unselected branch) so the all-order probability is amplitude_sq * Z1.
struct KernelCoefficients {
    complexd a_w;
    double a_sq;
    double amplitude_sq;
};

// Meter state after evolving exp(-i theta A (x) P) on probe (x) system and
// (optionally) post-selecting the system: the normalized momentum kernel
//   rho(p,p') = f(p,p') rho_d(p,p') / Z1,  Z1 = integral of the diagonal.
// Z1 and its theta-derivative are evaluated by quadrature on the grid at
// construction; everything else is pointwise.
class PostSelectedMeterState {
public:
    // Post-selected branch; requires an involutive observable (A^2 = I).
    // Without an explicit grid, one is chosen from the thermal width and the
    // kernel envelope, then refined by doubling until Z1 is stable to 1e-10.
    static PostSelectedMeterState postselected(const ThermalGaussianProbe& probe,
                                               const SelectionContext& ctx, double theta);
    static PostSelectedMeterState postselected(const ThermalGaussianProbe& probe,
                                               const SelectionContext& ctx, double theta,
                                               const MomentumGrid& grid);

    // Unselected branch: the meter state Tr_s[rho'] with no conditioning.
    static PostSelectedMeterState unselected(const ThermalGaussianProbe& probe,
                                             const SelectionContext& ctx, double theta);
    static PostSelectedMeterState unselected(const ThermalGaussianProbe& probe,
                                             const SelectionContext& ctx, double theta,
                                             const MomentumGrid& grid);

    const ThermalGaussianProbe& probe() const { return probe_; }
    const KernelCoefficients& coefficients() const { return coeff_; }
    double theta() const { return theta_; }
    const MomentumGrid& grid() const { return grid_; }

    // Quadrature of the unnormalized diagonal and its theta-derivative.
    double z1() const { return z1_; }
    double z1_derivative() const { return z1_derivative_; }

    // Unnormalized kernel f(p,p') rho_d(p,p') and its theta-derivative.
    complexd kernel_unnormalized(double p, double p_prime) const;
    complexd kernel_unnormalized_derivative(double p, double p_prime) const;

    // Same state at a different coupling on the identical grid (used by
    // finite-difference oracles, which must not change the discretization).
    PostSelectedMeterState with_theta(double new_theta) const;

    // Throws GridUnderresolved when the window misses tail mass (> 1e-8 by
    // Gaussian-envelope estimate) or the spacing undersamples the kernel
    // oscillation or the thermal width.
    void require_resolved() const;

private:
    PostSelectedMeterState(const ThermalGaussianProbe& probe, const KernelCoefficients& coeff,
                           double theta, const MomentumGrid& grid);

    ThermalGaussianProbe probe_;
    KernelCoefficients coeff_;
    double theta_;
    MomentumGrid grid_;
    double z1_;
    double z1_derivative_;
};

// Normalized kernel rho(p,p') = f rho_d / Z1.
// Throws ZeroPostselection when amplitude_sq * Z1 < 1e-14.
complexd meter_kernel(const PostSelectedMeterState& state, double p, double p_prime);

// |<f|i>|^2 * Z1, the all-order post-selection probability (no throw; it is
// legitimately 0 in the orthogonal limit).
double postselection_probability_allorder(const PostSelectedMeterState& state);

// <P^order> over the normalized diagonal, order 1 or 2, by quadrature.
double momentum_moments(const PostSelectedMeterState& state, int order);

// sqrt(n_trials * P) * |<P>| / sqrt(<P^2> - <P>^2), the ground-truth SNR at
// any coupling (<P> of the initial probe is 0).
double snr_postselected_numeric(const PostSelectedMeterState& state, double n_trials);

// Closed-form SNR for the thermal probe at all orders in theta, kept
// unmodified as a comparison route (overload on raw coefficients exists
// for testing the radicand guard). Known not to reduce to the pure form at
// T = 0; snr_postselected_numeric is the oracle. Throws ImaginaryDenominator
// when the radicand is negative.
double snr_mixed_closed_form(const ThermalGaussianProbe& probe, const SelectionContext& ctx,
                             double theta, double n_trials);
double snr_mixed_closed_form(const ThermalGaussianProbe& probe, const KernelCoefficients& coeff,
                             double theta, double n_trials);

// Closed-form SNR for the pure (T = 0) probe. Exact for
// sqrt(N P0) * shift/spread; probe.temperature is ignored.
double snr_pure_closed_form(const ThermalGaussianProbe& probe, const SelectionContext& ctx,
                            double theta, double n_trials);

// First-order-in-theta SNR with its validity diagnostic: the approximation
// holds when theta * Im(A_w) * sqrt(2 omega') is small, omega' = beta/(2 sigma^2).
struct WeakLimitSnr {
    double value;
    double validity_lhs;        // |theta * Im(A_w)| * sqrt(2 omega')
    double validity_threshold;  // default 0.1
    bool valid;                 // validity_lhs < validity_threshold
};

WeakLimitSnr snr_weak_limit(const ThermalGaussianProbe& probe, const SelectionContext& ctx,
                            double theta, double n_trials, double validity_threshold = 0.1);

// Grid selection used by the auto-grid factories: p_max = 10 thermal sigmas
// plus a bound on the post-selected mean shift, n_points doubled from
// n_start until successive Z1 agree to 1e-10 (cap 8192).
MomentumGrid default_meter_grid(const ThermalGaussianProbe& probe, const KernelCoefficients& coeff,
                                double theta, int n_start = 2048);

}  // namespace wvsim
