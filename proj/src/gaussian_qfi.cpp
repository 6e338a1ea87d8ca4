#include "wvsim/gaussian_qfi.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "wvsim/errors.hpp"
#include "wvsim/meter.hpp"
#include "wvsim/numeric_qfi.hpp"

namespace wvsim {

GaussianSummary gaussian_summary_weak(const ThermalGaussianProbe& probe,
                                      const SelectionContext& ctx, double theta) {
    const complexd a_w = weak_value(ctx);
    const double s2 = probe.sigma * probe.sigma;
    GaussianSummary out;
    out.mean_derivative = Eigen::Vector2d(2.0 * probe.hbar * a_w.real(),
                                          a_w.imag() * probe.beta() / (2.0 * s2));
    out.mean = theta * out.mean_derivative;
    out.covariance = Eigen::Matrix2d::Zero();
    out.covariance(0, 0) = 4.0 * s2;
    out.covariance(1, 1) = probe.hbar * probe.hbar / (4.0 * s2) +
                           probe.k_boltzmann * probe.mass * probe.temperature;
    out.purity = probe.purity();  // equals hbar / sqrt(det covariance)
    out.covariance_derivative = Eigen::Matrix2d::Zero();
    out.purity_derivative = 0.0;
    return out;
}

double wigner_weak(const ThermalGaussianProbe& probe, const SelectionContext& ctx, double theta,
                   double x, double p) {
    const GaussianSummary s = gaussian_summary_weak(probe, ctx, theta);
    const double det = s.covariance.determinant();
    const Eigen::Vector2d d(x - s.mean(0), p - s.mean(1));
    const double q = d.dot(s.covariance.inverse() * d);
    return std::exp(-0.5 * q) / (2.0 * std::numbers::pi * std::sqrt(det));
}

double gaussian_qfi(const GaussianSummary& summary) {
    const Eigen::Matrix2d& c = summary.covariance;
    const double scale = std::max(1.0, c.cwiseAbs().maxCoeff());
    if (std::abs(c(0, 1) - c(1, 0)) > 1e-12 * scale) {
        throw std::invalid_argument("gaussian_qfi: covariance must be symmetric");
    }
    const Eigen::Matrix2d& cd = summary.covariance_derivative;
    if (std::abs(cd(0, 1) - cd(1, 0)) > 1e-12 * std::max(1.0, cd.cwiseAbs().maxCoeff())) {
        throw std::invalid_argument("gaussian_qfi: covariance derivative must be symmetric");
    }
    const double det = c.determinant();
    if (det < 1e-14) {
        throw SingularCovariance("gaussian_qfi: covariance determinant below 1e-14");
    }
    const double purity = summary.purity;
    if (!(purity > 0.0 && purity <= 1.0 + 1e-12)) {
        throw std::invalid_argument("gaussian_qfi: purity must lie in (0, 1]");
    }

    const Eigen::Matrix2d c_inv = c.inverse();
    const Eigen::Matrix2d m = c_inv * cd;
    const double term_cov = (m * m).trace() / (2.0 * (1.0 + purity * purity));
    double term_purity = 0.0;
    if (summary.purity_derivative != 0.0) {
        const double p4 = purity * purity * purity * purity;
        if (1.0 - p4 < 1e-12) {
            throw SingularCovariance("gaussian_qfi: purity metric degenerate at unit purity");
        }
        term_purity = 2.0 * summary.purity_derivative * summary.purity_derivative / (1.0 - p4);
    }
    const double term_mean = summary.mean_derivative.dot(c_inv * summary.mean_derivative);
    return term_cov + term_purity + term_mean;
}

namespace {

NoPostselectionQfi no_postselection_from_state(const SelectionContext& ctx,
                                               const PostSelectedMeterState& state) {
    const ThermalGaussianProbe& probe = state.probe();
    const double mean_sq =
        (ctx.pre_state.adjoint() * ctx.observable * ctx.observable * ctx.pre_state)(0).real();
    const double closed = probe.hbar * probe.hbar * mean_sq / (probe.sigma * probe.sigma);
    return {closed, sld_qfi(discretize(state)).qfi};
}

}  // namespace

NoPostselectionQfi qfi_no_postselection(const ThermalGaussianProbe& probe,
                                        const SelectionContext& ctx, double theta) {
    return no_postselection_from_state(ctx, PostSelectedMeterState::unselected(probe, ctx, theta));
}

NoPostselectionQfi qfi_no_postselection(const ThermalGaussianProbe& probe,
                                        const SelectionContext& ctx, double theta,
                                        const MomentumGrid& grid) {
    return no_postselection_from_state(
        ctx, PostSelectedMeterState::unselected(probe, ctx, theta, grid));
}

QfiRatios qfi_ratios(const ThermalGaussianProbe& probe, const SelectionContext& ctx) {
    // <f|A|i>, the transition element; its modulus squared is the
    // probability-weighted pure-probe ratio.
    const complexd t = (ctx.post_state.adjoint() * ctx.observable * ctx.pre_state)(0);
    const double pure_ratio = std::norm(t);

    const double abs_sq = weak_value_abs_sq(ctx);
    const double overlap = postselection_overlap(ctx);
    double post_ratio = 1.0;
    if (abs_sq > 0.0) {
        const double im_t = t.imag();
        post_ratio += 4.0 * probe.mass * probe.k_boltzmann * probe.temperature * im_t * im_t *
                      probe.sigma * probe.sigma /
                      (probe.hbar * probe.hbar * abs_sq) * overlap;
    }
    return {pure_ratio, post_ratio};
}

}  // namespace wvsim
