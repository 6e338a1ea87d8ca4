#include "wvsim/meter.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <utility>

#include "wvsim/errors.hpp"

namespace wvsim {

namespace {

KernelCoefficients postselected_coefficients(const SelectionContext& ctx) {
    if (!ctx.involutive()) {
        throw std::invalid_argument("meter: observable must square to the identity");
    }
    return {weak_value(ctx), weak_value_abs_sq(ctx), postselection_overlap(ctx)};
}

KernelCoefficients unselected_coefficients(const SelectionContext& ctx) {
    if (!ctx.involutive()) {
        throw std::invalid_argument("meter: observable must square to the identity");
    }
    // <A>_i is real for Hermitian A; forcing it exact keeps the kernel real
    // for the symmetric eigensolver fast path.
    const double mean = (ctx.pre_state.adjoint() * ctx.observable * ctx.pre_state)(0).real();
    const double mean_sq =
        (ctx.pre_state.adjoint() * ctx.observable * ctx.observable * ctx.pre_state)(0).real();
    return {complexd(mean, 0.0), mean_sq, 1.0};
}

// Z1 and dZ1/dtheta by trapezoid quadrature of the diagonal
//   g(p) = cos^2 + 2 Im(a_w) cos sin + a_sq sin^2   (arguments theta p)
// against the thermal momentum density.
std::pair<double, double> quadrature_z1(const ThermalGaussianProbe& probe,
                                        const KernelCoefficients& coeff, double theta,
                                        const MomentumGrid& grid) {
    const Eigen::VectorXd p = grid.nodes();
    const Eigen::VectorXd wq = grid.weights();
    const double im = coeff.a_w.imag();
    double z1 = 0.0;
    double z1d = 0.0;
    for (int i = 0; i < grid.n_points; ++i) {
        const double tp = theta * p(i);
        const double c = std::cos(tp);
        const double s = std::sin(tp);
        const double g = c * c + 2.0 * im * c * s + coeff.a_sq * s * s;
        const double gd =
            p(i) * ((coeff.a_sq - 1.0) * std::sin(2.0 * tp) + 2.0 * im * std::cos(2.0 * tp));
        const double rd = probe.density_kernel_p(p(i), p(i));
        z1 += wq(i) * g * rd;
        z1d += wq(i) * gd * rd;
    }
    return {z1, z1d};
}

}  // namespace

PostSelectedMeterState::PostSelectedMeterState(const ThermalGaussianProbe& probe,
                                               const KernelCoefficients& coeff, double theta,
                                               const MomentumGrid& grid)
    : probe_(probe), coeff_(coeff), theta_(theta), grid_(grid) {
    const auto [z1, z1d] = quadrature_z1(probe_, coeff_, theta_, grid_);
    z1_ = z1;
    z1_derivative_ = z1d;
}

PostSelectedMeterState PostSelectedMeterState::postselected(const ThermalGaussianProbe& probe,
                                                            const SelectionContext& ctx,
                                                            double theta) {
    const KernelCoefficients coeff = postselected_coefficients(ctx);
    return {probe, coeff, theta, default_meter_grid(probe, coeff, theta)};
}

PostSelectedMeterState PostSelectedMeterState::postselected(const ThermalGaussianProbe& probe,
                                                            const SelectionContext& ctx,
                                                            double theta,
                                                            const MomentumGrid& grid) {
    return {probe, postselected_coefficients(ctx), theta, grid};
}

PostSelectedMeterState PostSelectedMeterState::unselected(const ThermalGaussianProbe& probe,
                                                          const SelectionContext& ctx,
                                                          double theta) {
    const KernelCoefficients coeff = unselected_coefficients(ctx);
    return {probe, coeff, theta, default_meter_grid(probe, coeff, theta)};
}

PostSelectedMeterState PostSelectedMeterState::unselected(const ThermalGaussianProbe& probe,
                                                          const SelectionContext& ctx, double theta,
                                                          const MomentumGrid& grid) {
    return {probe, unselected_coefficients(ctx), theta, grid};
}

complexd PostSelectedMeterState::kernel_unnormalized(double p, double p_prime) const {
    const double cp = std::cos(theta_ * p);
    const double sp = std::sin(theta_ * p);
    const double cq = std::cos(theta_ * p_prime);
    const double sq = std::sin(theta_ * p_prime);
    const complexd i(0.0, 1.0);
    const complexd f = cp * cq + i * std::conj(coeff_.a_w) * cp * sq - i * coeff_.a_w * sp * cq +
                       coeff_.a_sq * sp * sq;
    return f * probe_.density_kernel_p(p, p_prime);
}

complexd PostSelectedMeterState::kernel_unnormalized_derivative(double p, double p_prime) const {
    const double cp = std::cos(theta_ * p);
    const double sp = std::sin(theta_ * p);
    const double cq = std::cos(theta_ * p_prime);
    const double sq = std::sin(theta_ * p_prime);
    const complexd i(0.0, 1.0);
    const complexd df = -(p * sp * cq + p_prime * cp * sq) +
                        i * std::conj(coeff_.a_w) * (-p * sp * sq + p_prime * cp * cq) -
                        i * coeff_.a_w * (p * cp * cq - p_prime * sp * sq) +
                        coeff_.a_sq * (p * cp * sq + p_prime * sp * cq);
    return df * probe_.density_kernel_p(p, p_prime);
}

PostSelectedMeterState PostSelectedMeterState::with_theta(double new_theta) const {
    return {probe_, coeff_, new_theta, grid_};
}

void PostSelectedMeterState::require_resolved() const {
    const double v = probe_.momentum_variance();
    const double sv = std::sqrt(v);

    double dp_limit = sv / 8.0;
    if (theta_ != 0.0) {
        dp_limit = std::min(dp_limit, std::numbers::pi / (8.0 * std::abs(theta_)));
    }
    if (grid_.dp() > dp_limit) {
        throw GridUnderresolved("grid spacing too coarse for the kernel oscillation");
    }

    // Envelope bound on the mass (up to second moment) outside the window:
    // the normalized diagonal is below c_env * Gaussian(0, v), and the mean
    // shift is below 4 |theta| v w |Im a_w| since Z1 >= 1/2.
    const double w = std::exp(-2.0 * theta_ * theta_ * v);
    const double shift = 4.0 * std::abs(theta_) * v * w * std::abs(coeff_.a_w.imag());
    const double a = (grid_.p_max - shift) / sv;
    if (a < 0.5) {
        throw GridUnderresolved("grid window smaller than the state");
    }
    const double c_env = (std::max(1.0, coeff_.a_sq) + std::abs(coeff_.a_w.imag())) / z1_;
    const double phi_a = std::exp(-0.5 * a * a) / std::sqrt(2.0 * std::numbers::pi);
    if (c_env * 2.0 * phi_a * (a + 2.0 / a) > 1e-8) {
        throw GridUnderresolved("tail mass outside the grid window exceeds 1e-8");
    }
}

complexd meter_kernel(const PostSelectedMeterState& state, double p, double p_prime) {
    if (state.coefficients().amplitude_sq * state.z1() < 1e-14) {
        throw ZeroPostselection("meter_kernel: post-selection probability below 1e-14");
    }
    return state.kernel_unnormalized(p, p_prime) / state.z1();
}

double postselection_probability_allorder(const PostSelectedMeterState& state) {
    return state.coefficients().amplitude_sq * state.z1();
}

double momentum_moments(const PostSelectedMeterState& state, int order) {
    if (order != 1 && order != 2) {
        throw std::invalid_argument("momentum_moments: order must be 1 or 2");
    }
    state.require_resolved();
    const Eigen::VectorXd p = state.grid().nodes();
    const Eigen::VectorXd wq = state.grid().weights();
    double acc = 0.0;
    for (int i = 0; i < state.grid().n_points; ++i) {
        const double pk = order == 1 ? p(i) : p(i) * p(i);
        acc += wq(i) * pk * state.kernel_unnormalized(p(i), p(i)).real();
    }
    return acc / state.z1();
}

double snr_postselected_numeric(const PostSelectedMeterState& state, double n_trials) {
    if (!(n_trials > 0.0)) throw std::invalid_argument("snr: n_trials must be positive");
    const double m1 = momentum_moments(state, 1);
    const double m2 = momentum_moments(state, 2);
    const double var = m2 - m1 * m1;
    if (!(var > 0.0)) throw Error("snr: momentum variance is not positive");
    const double prob = postselection_probability_allorder(state);
    return std::sqrt(n_trials * prob) * std::abs(m1) / std::sqrt(var);
}

double snr_mixed_closed_form(const ThermalGaussianProbe& probe, const SelectionContext& ctx,
                             double theta, double n_trials) {
    return snr_mixed_closed_form(probe, postselected_coefficients(ctx), theta, n_trials);
}

double snr_mixed_closed_form(const ThermalGaussianProbe& probe, const KernelCoefficients& coeff,
                             double theta, double n_trials) {
    if (!(n_trials > 0.0)) throw std::invalid_argument("snr: n_trials must be positive");
    const double hb2 = probe.hbar * probe.hbar;
    const double s2 = probe.sigma * probe.sigma;
    const double al = probe.alpha();
    const double a_sq = coeff.a_sq;
    const double eps = a_sq - 1.0;
    const double im = coeff.a_w.imag();
    const double t2 = theta * theta;
    // e^(theta^2 omega'), omega' = beta/(2 sigma^2)
    const double el = std::exp(t2 * probe.beta() / (2.0 * s2));
    const double radicand = (hb2 * t2 - s2 + 2.0 * al * t2) * eps +
                            el * s2 * (1.0 + a_sq) * (eps + el * (1.0 + a_sq)) -
                            4.0 * (hb2 + 2.0 * al) * t2 * im;
    if (!(radicand > 0.0)) {
        throw ImaginaryDenominator("mixed closed-form SNR: radicand is not positive");
    }
    return std::sqrt(n_trials * coeff.amplitude_sq) * std::sqrt(probe.beta()) * theta * im /
           std::sqrt(radicand);
}

double snr_pure_closed_form(const ThermalGaussianProbe& probe, const SelectionContext& ctx,
                            double theta, double n_trials) {
    if (!(n_trials > 0.0)) throw std::invalid_argument("snr: n_trials must be positive");
    const KernelCoefficients coeff = postselected_coefficients(ctx);
    const double hb2 = probe.hbar * probe.hbar;
    const double s2 = probe.sigma * probe.sigma;
    const double a_sq = coeff.a_sq;
    const double im = coeff.a_w.imag();
    const double t2 = theta * theta;
    const double el = std::exp(hb2 * t2 / (2.0 * s2));
    const double radicand =
        ((-s2 + hb2 * t2) * (-1.0 + a_sq) + el * s2 * (1.0 + a_sq)) *
            (1.0 + el * (1.0 + a_sq) - a_sq) -
        4.0 * hb2 * hb2 * t2 * im * im;
    if (!(radicand > 0.0)) {
        throw ImaginaryDenominator("pure closed-form SNR: radicand is not positive");
    }
    return 2.0 * probe.hbar * theta * std::sqrt(n_trials * coeff.amplitude_sq) * std::abs(im) /
           std::sqrt(radicand);
}

WeakLimitSnr snr_weak_limit(const ThermalGaussianProbe& probe, const SelectionContext& ctx,
                            double theta, double n_trials, double validity_threshold) {
    if (!(n_trials > 0.0)) throw std::invalid_argument("snr: n_trials must be positive");
    if (!(validity_threshold > 0.0)) {
        throw std::invalid_argument("snr: validity threshold must be positive");
    }
    const KernelCoefficients coeff = postselected_coefficients(ctx);
    const double im = coeff.a_w.imag();
    // sqrt(2 omega') = sqrt(beta)/sigma, the inverse width of the probe.
    const double sqrt_two_omega = std::sqrt(probe.beta()) / probe.sigma;
    const double value =
        std::sqrt(n_trials * coeff.amplitude_sq) * theta * im * sqrt_two_omega;
    const double lhs = std::abs(theta * im) * sqrt_two_omega;
    return {value, lhs, validity_threshold, lhs < validity_threshold};
}

MomentumGrid default_meter_grid(const ThermalGaussianProbe& probe, const KernelCoefficients& coeff,
                                double theta, int n_start) {
    const double v = probe.momentum_variance();
    const double sv = std::sqrt(v);
    const double w = std::exp(-2.0 * theta * theta * v);
    const double shift = 4.0 * std::abs(theta) * v * w * std::abs(coeff.a_w.imag());
    const double p_max = 10.0 * sv + shift;

    double dp_limit = sv / 8.0;
    if (theta != 0.0) {
        dp_limit = std::min(dp_limit, std::numbers::pi / (8.0 * std::abs(theta)));
    }
    int n = std::max(n_start, 64);
    if (n % 2 != 0) ++n;
    while (MomentumGrid(p_max, n).dp() > dp_limit) {
        n *= 2;
        if (n > 65536) throw GridUnderresolved("default grid: spacing cap exceeded");
    }

    double z_prev = quadrature_z1(probe, coeff, theta, MomentumGrid(p_max, n)).first;
    while (true) {
        if (2 * n > 65536) {
            throw GridUnderresolved("default grid: quadrature did not stabilize by n = 65536");
        }
        const double z_next = quadrature_z1(probe, coeff, theta, MomentumGrid(p_max, 2 * n)).first;
        if (std::abs(z_next - z_prev) <= 1e-10 * std::max(std::abs(z_next), 1e-300)) {
            return {p_max, n};
        }
        n *= 2;
        z_prev = z_next;
    }
}

}  // namespace wvsim
