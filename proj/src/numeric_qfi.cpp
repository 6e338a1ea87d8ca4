#include "wvsim/numeric_qfi.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "wvsim/errors.hpp"
#include "wvsim/linalg.hpp"

namespace wvsim {

namespace {

// Fills matrix (and derivative when non-null) with the normalized kernel
// times dp, mirroring the upper triangle through Hermiticity.
void build_matrices(const PostSelectedMeterState& state, Eigen::MatrixXcd* matrix,
                    Eigen::MatrixXcd* derivative) {
    state.require_resolved();
    const MomentumGrid& grid = state.grid();
    const int n = grid.n_points;
    if (n > 8192) {
        throw std::invalid_argument("discretize: grid exceeds 8192 nodes");
    }
    const Eigen::VectorXd p = grid.nodes();
    const double dp = grid.dp();
    const double z1 = state.z1();
    const double log_slope = state.z1_derivative() / z1;

    matrix->resize(n, n);
    if (derivative != nullptr) derivative->resize(n, n);
    for (int j = 0; j < n; ++j) {
        for (int i = 0; i <= j; ++i) {
            const complexd f = state.kernel_unnormalized(p(i), p(j));
            const complexd value = f / z1 * dp;
            (*matrix)(i, j) = value;
            (*matrix)(j, i) = std::conj(value);
            if (derivative != nullptr) {
                // d/dtheta (F/Z1) = F'/Z1 - F Z1'/Z1^2
                const complexd fd = state.kernel_unnormalized_derivative(p(i), p(j));
                const complexd dvalue = (fd / z1 - f / z1 * log_slope) * dp;
                (*derivative)(i, j) = dvalue;
                (*derivative)(j, i) = std::conj(dvalue);
            }
        }
    }
}

inline double abs2(double x) { return x * x; }
inline double abs2(const complexd& z) { return std::norm(z); }

template <typename Matrix>
SldResult sld_from_diagonal_basis(const Eigen::VectorXd& values, const Matrix& dm) {
    const Eigen::Index n = values.size();
    const double d_max = values(n - 1);
    if (!(d_max > 0.0)) {
        throw NonPositiveState("sld_qfi: density matrix has no positive eigenvalues");
    }
    const double cutoff = 1e-12 * d_max;
    double qfi = 0.0;
    double kept = 0.0;
    double skipped = 0.0;
    for (Eigen::Index j = 0; j < n; ++j) {
        for (Eigen::Index i = 0; i < n; ++i) {
            const double weight = abs2(dm(i, j));
            const double denom = values(i) + values(j);
            if (denom >= cutoff) {
                qfi += 2.0 * weight / denom;
                kept += weight;
            } else {
                skipped += weight;
            }
        }
    }
    const double total = kept + skipped;
    const double skipped_mass = total > 0.0 ? std::sqrt(skipped / total) : 0.0;
    if (skipped_mass > 1e-6) {
        throw DegenerateSupport("sld_qfi: derivative weight on the null space exceeds 1e-6");
    }
    return {qfi, skipped_mass};
}

}  // namespace

DiscretizedState discretize(const PostSelectedMeterState& state) {
    DiscretizedState out{state.grid(), {}, {}};
    build_matrices(state, &out.matrix, &out.derivative);
    return out;
}

SldResult sld_qfi(const DiscretizedState& d) {
    if (d.matrix.rows() != d.matrix.cols() || d.matrix.rows() != d.derivative.rows() ||
        d.derivative.rows() != d.derivative.cols()) {
        throw std::invalid_argument("sld_qfi: matrices must be square and equally sized");
    }
    if (linalg::is_effectively_real(d.matrix) && linalg::is_effectively_real(d.derivative)) {
        const auto es = linalg::symmetric_eigensystem(d.matrix.real());
        const Eigen::MatrixXd dm = es.vectors.transpose() * d.derivative.real() * es.vectors;
        return sld_from_diagonal_basis(es.values, dm);
    }
    const auto es = linalg::hermitian_eigensystem(d.matrix);
    const Eigen::MatrixXcd dm = es.vectors.adjoint() * d.derivative * es.vectors;
    return sld_from_diagonal_basis(es.values, dm);
}

double effective_qfi(const PostSelectedMeterState& state) {
    return postselection_probability_allorder(state) * sld_qfi(discretize(state)).qfi;
}

namespace {

double fidelity_root(const Eigen::MatrixXd& sqrt_base, const Eigen::MatrixXd& rho) {
    const Eigen::MatrixXd product = linalg::psd_sqrt(rho) * sqrt_base;
    return linalg::singular_values(product).sum();
}

double fidelity_root(const Eigen::MatrixXcd& sqrt_base, const Eigen::MatrixXcd& rho) {
    const Eigen::MatrixXcd product = linalg::psd_sqrt(rho) * sqrt_base;
    return linalg::singular_values(product).sum();
}

}  // namespace

double bures_qfi_oracle(const PostSelectedMeterState& state, double epsilon) {
    if (!(epsilon >= 1e-5 && epsilon <= 1e-3)) {
        throw std::invalid_argument("bures_qfi_oracle: epsilon must lie in [1e-5, 1e-3]");
    }
    Eigen::MatrixXcd rho0, rho_half, rho_full;
    build_matrices(state, &rho0, nullptr);
    build_matrices(state.with_theta(state.theta() + 0.5 * epsilon), &rho_half, nullptr);
    build_matrices(state.with_theta(state.theta() + epsilon), &rho_full, nullptr);

    // sqrt(F) as the nuclear norm of sqrt(rho_eps) sqrt(rho_0); the
    // eps = 0 baseline runs through the same pipeline so the eigenvalue
    // clamp bias cancels in the difference.
    double rf0, rf_half, rf_full;
    if (linalg::is_effectively_real(rho0) && linalg::is_effectively_real(rho_half) &&
        linalg::is_effectively_real(rho_full)) {
        const Eigen::MatrixXd sqrt0 = linalg::psd_sqrt(Eigen::MatrixXd(rho0.real()));
        rf0 = linalg::singular_values(Eigen::MatrixXd(sqrt0 * sqrt0)).sum();
        rf_half = fidelity_root(sqrt0, rho_half.real());
        rf_full = fidelity_root(sqrt0, rho_full.real());
    } else {
        const Eigen::MatrixXcd sqrt0 = linalg::psd_sqrt(rho0);
        rf0 = linalg::singular_values(Eigen::MatrixXcd(sqrt0 * sqrt0)).sum();
        rf_half = fidelity_root(sqrt0, rho_half);
        rf_full = fidelity_root(sqrt0, rho_full);
    }

    // I(eps) = 8 (sqrtF(0) - sqrtF(eps)) / eps^2, then one Richardson step
    // to cancel the O(eps^2) error.
    const double i_full = 8.0 * (rf0 - rf_full) / (epsilon * epsilon);
    const double i_half = 8.0 * (rf0 - rf_half) / (0.25 * epsilon * epsilon);
    return 2.0 * i_half - i_full;
}

FlatWindowResult flat_window_qfi(double theta, const SelectionContext& ctx, double p_max,
                                 int n_points) {
    if (theta == 0.0) {
        throw std::invalid_argument("flat_window_qfi: theta must be nonzero");
    }
    if (!ctx.involutive()) {
        throw std::invalid_argument("flat_window_qfi: observable must square to the identity");
    }
    const MomentumGrid grid(p_max, n_points);
    const double im = weak_value(ctx).imag();
    const double a_sq = weak_value_abs_sq(ctx);

    const Eigen::VectorXd p = grid.nodes();
    const Eigen::VectorXd wq = grid.weights();
    const int n = grid.n_points;
    Eigen::VectorXd g(n), gd(n);
    for (int i = 0; i < n; ++i) {
        const double tp = theta * p(i);
        const double c = std::cos(tp);
        const double s = std::sin(tp);
        g(i) = c * c + 2.0 * im * c * s + a_sq * s * s;
        gd(i) = p(i) * ((a_sq - 1.0) * std::sin(2.0 * tp) + 2.0 * im * std::cos(2.0 * tp));
    }
    const double norm = wq.dot(g);
    const double norm_d = wq.dot(gd);

    // Exclude nodes where the density vanishes (the Fisher integrand is
    // 0/0 there), widened by one node to keep the quotient stable.
    const double g_floor = 1e-12 * g.maxCoeff();
    std::vector<bool> excluded(n, false);
    for (int i = 0; i < n; ++i) {
        if (g(i) < g_floor) {
            excluded[i] = true;
            if (i > 0) excluded[i - 1] = true;
            if (i + 1 < n) excluded[i + 1] = true;
        }
    }

    double qfi = 0.0;
    double excluded_mass = 0.0;
    for (int i = 0; i < n; ++i) {
        const double density = g(i) / norm;
        if (excluded[i]) {
            excluded_mass += wq(i) * density;
            continue;
        }
        const double density_d = gd(i) / norm - g(i) * norm_d / (norm * norm);
        qfi += wq(i) * density_d * density_d / density;
    }
    return {qfi, excluded_mass};
}

}  // namespace wvsim
