#include "wvsim/selection.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wvsim/errors.hpp"

namespace wvsim {

namespace {

Eigen::Vector2cd normalized_or_throw(const Eigen::Vector2cd& v, const char* which) {
    const double n = v.norm();
    if (!(n > 1e-150)) {
        throw std::invalid_argument(std::string("selection: ") + which + " state has zero norm");
    }
    return v / n;
}

// Pure state with Bloch vector v (unit length): polar angle from v_z,
// azimuth from atan2.
Eigen::Vector2cd state_from_bloch(double vx, double vy, double vz) {
    const double theta = std::acos(std::clamp(vz, -1.0, 1.0));
    const double phi = std::atan2(vy, vx);
    return {std::cos(theta / 2.0),
            std::polar(std::sin(theta / 2.0), phi)};
}

}  // namespace

SelectionContext::SelectionContext(const Eigen::Vector2cd& pre, const Eigen::Vector2cd& post,
                                   const Eigen::Matrix2cd& obs)
    : pre_state(normalized_or_throw(pre, "pre")),
      post_state(normalized_or_throw(post, "post")),
      observable(obs) {
    const double scale = std::max(1.0, obs.cwiseAbs().maxCoeff());
    if ((obs - obs.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
        throw std::invalid_argument("selection: observable is not Hermitian");
    }
}

SelectionContext SelectionContext::qubit_sigma_x(double phi) {
    Eigen::Vector2cd pre{std::cos(phi), complexd(0.0, std::sin(phi))};
    Eigen::Vector2cd post{1.0, 0.0};
    Eigen::Matrix2cd sigma_x;
    sigma_x << 0.0, 1.0, 1.0, 0.0;
    return {pre, post, sigma_x};
}

SelectionContext SelectionContext::with_imaginary_weak_value(double kappa, double overlap) {
    if (!(overlap > 0.0 && overlap <= 1.0)) {
        throw std::invalid_argument("selection: overlap must be in (0, 1]");
    }
    const double a_sq = 1.0 - overlap * (1.0 + kappa * kappa);
    if (a_sq < -1e-12) {
        throw std::invalid_argument(
            "selection: infeasible pair, need overlap * (1 + kappa^2) <= 1");
    }
    // Bloch vectors n (pre) and m (post) with n.m = 2 P0 - 1 and
    // (n x m)_x = 2 kappa P0, which makes <f|sigma_x|i>/<f|i> = i kappa and
    // |<f|i>|^2 = P0 exactly.
    const double a = std::sqrt(std::max(0.0, a_sq));
    const double b = std::sqrt(1.0 - a * a);
    const double mx = -a;
    const double my = overlap * (1.0 - kappa * kappa) / b;
    const double mz = 2.0 * kappa * overlap / b;
    Eigen::Matrix2cd sigma_x;
    sigma_x << 0.0, 1.0, 1.0, 0.0;
    return {state_from_bloch(a, b, 0.0), state_from_bloch(mx, my, mz), sigma_x};
}

bool SelectionContext::involutive(double tol) const {
    return (observable * observable - Eigen::Matrix2cd::Identity()).cwiseAbs().maxCoeff() <= tol;
}

complexd weak_value(const SelectionContext& ctx) {
    const Eigen::Matrix2cd rho_s = ctx.pre_state * ctx.pre_state.adjoint();
    const Eigen::Matrix2cd pi_f = ctx.post_state * ctx.post_state.adjoint();
    const double denom = (pi_f * rho_s).trace().real();
    if (denom < 1e-14) {
        throw OrthogonalSelection("weak_value: post-selection probability below 1e-14");
    }
    return (pi_f * ctx.observable * rho_s).trace() / denom;
}

double weak_value_abs_sq(const SelectionContext& ctx) {
    const Eigen::Matrix2cd rho_s = ctx.pre_state * ctx.pre_state.adjoint();
    const Eigen::Matrix2cd pi_f = ctx.post_state * ctx.post_state.adjoint();
    const double denom = (pi_f * rho_s).trace().real();
    if (denom < 1e-14) {
        throw OrthogonalSelection("weak_value_abs_sq: post-selection probability below 1e-14");
    }
    return (pi_f * ctx.observable * rho_s * ctx.observable).trace().real() / denom;
}

double postselection_overlap(const SelectionContext& ctx) {
    return std::norm(ctx.post_state.dot(ctx.pre_state));
}

}  // namespace wvsim
