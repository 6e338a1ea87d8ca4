#include <doctest.h>

#include <cmath>
#include <complex>
#include <stdexcept>

#include "wvsim/errors.hpp"
#include "wvsim/meter.hpp"
#include "wvsim/numeric_qfi.hpp"

using wvsim::complexd;
using wvsim::DiscretizedState;
using wvsim::MomentumGrid;
using wvsim::PostSelectedMeterState;
using wvsim::SelectionContext;
using wvsim::ThermalGaussianProbe;

namespace {

PostSelectedMeterState spot_state(int n_points) {
    const ThermalGaussianProbe probe(1.0, 50.0, 100.0);
    const SelectionContext ctx = SelectionContext::qubit_sigma_x(M_PI / 3.0);
    return PostSelectedMeterState::postselected(probe, ctx, 0.5, MomentumGrid(6.0, n_points));
}

}  // namespace

TEST_CASE("numeric: discretization is a unit-trace Hermitian matrix") {
    const PostSelectedMeterState state = spot_state(256);
    const DiscretizedState d = wvsim::discretize(state);
    REQUIRE(d.matrix.rows() == 256);
    CHECK(std::abs(d.matrix.trace().real() - 1.0) < 1e-12);
    CHECK(std::abs(d.matrix.trace().imag()) < 1e-15);
    CHECK((d.matrix - d.matrix.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
    CHECK((d.derivative - d.derivative.adjoint()).cwiseAbs().maxCoeff() < 1e-15);
    const Eigen::VectorXd p = state.grid().nodes();
    const double dp = state.grid().dp();
    for (int i : {0, 17, 128, 255}) {
        for (int j : {3, 128, 254}) {
            const complexd expect = wvsim::meter_kernel(state, p(i), p(j)) * dp;
            CHECK(std::abs(d.matrix(i, j) - expect) < 1e-14);
        }
    }
}

TEST_CASE("numeric: discretized derivative matches a finite difference") {
    const PostSelectedMeterState state = spot_state(256);
    const DiscretizedState d = wvsim::discretize(state);
    const double h = 1e-5;
    const DiscretizedState up = wvsim::discretize(state.with_theta(0.5 + h));
    const DiscretizedState dn = wvsim::discretize(state.with_theta(0.5 - h));
    const Eigen::MatrixXcd fd = (up.matrix - dn.matrix) / (2.0 * h);
    CHECK((d.derivative - fd).norm() < 1e-6 * fd.norm());
}

TEST_CASE("numeric: exact-coupling information spot value") {
    const DiscretizedState d = wvsim::discretize(spot_state(1024));
    const wvsim::SldResult r = wvsim::sld_qfi(d);
    CHECK(r.qfi == doctest::Approx(2.327760717031734).epsilon(1e-6));
    CHECK(r.skipped_mass >= 0.0);
    CHECK(r.skipped_mass <= 1e-6);
}

TEST_CASE("numeric: fidelity-curvature oracle agrees with the spot value") {
    const PostSelectedMeterState state = spot_state(1024);
    const double bures = wvsim::bures_qfi_oracle(state, 1e-3);
    CHECK(bures == doctest::Approx(2.327760832088188).epsilon(1e-5));
    const double sld = wvsim::sld_qfi(wvsim::discretize(state)).qfi;
    CHECK(bures == doctest::Approx(sld).epsilon(1e-3));
}

TEST_CASE("numeric: fidelity oracle step validation") {
    const PostSelectedMeterState state = spot_state(256);
    CHECK_THROWS_AS(wvsim::bures_qfi_oracle(state, 1e-6), std::invalid_argument);
    CHECK_THROWS_AS(wvsim::bures_qfi_oracle(state, 1e-2), std::invalid_argument);
    CHECK_THROWS_AS(wvsim::bures_qfi_oracle(state, 0.0), std::invalid_argument);
    CHECK_NOTHROW(wvsim::bures_qfi_oracle(state, 1e-5));
    CHECK_NOTHROW(wvsim::bures_qfi_oracle(state, 1e-3));
}

TEST_CASE("numeric: information is invariant under a change of basis") {
    const DiscretizedState d = wvsim::discretize(spot_state(256));
    Eigen::VectorXcd u(256);
    for (int i = 0; i < 256; ++i) {
        u(i) = complexd(std::sin(0.7 * i + 0.3), std::cos(1.3 * i));
    }
    const Eigen::MatrixXcd house =
        Eigen::MatrixXcd::Identity(256, 256) - (2.0 / u.squaredNorm()) * (u * u.adjoint());
    DiscretizedState rotated{d.grid, house * d.matrix * house.adjoint(),
                             house * d.derivative * house.adjoint()};
    const double before = wvsim::sld_qfi(d).qfi;
    const double after = wvsim::sld_qfi(rotated).qfi;
    CHECK(after == doctest::Approx(before).epsilon(1e-8));
}

TEST_CASE("numeric: real and complex eigensolver paths agree") {
    const DiscretizedState d = wvsim::discretize(spot_state(512));
    // The imaginary-weak-value kernel is real; force the complex path with a
    // Hermitian perturbation far below the information scale.
    DiscretizedState nudged = d;
    for (int i = 0; i < 512; ++i) {
        for (int j = i + 1; j < 512; ++j) {
            const complexd bump(0.0, 1e-13 * std::sin(i * 0.31 + j * 0.17));
            nudged.matrix(i, j) += bump;
            nudged.matrix(j, i) -= bump;
            nudged.derivative(i, j) += bump;
            nudged.derivative(j, i) -= bump;
        }
    }
    const double real_path = wvsim::sld_qfi(d).qfi;
    const double complex_path = wvsim::sld_qfi(nudged).qfi;
    CHECK(complex_path == doctest::Approx(real_path).epsilon(1e-7));
}

TEST_CASE("numeric: conditioned information grows with temperature") {
    double last = 0.0;
    for (double temperature : {0.0, 100.0, 300.0}) {
        const ThermalGaussianProbe probe(1.0, 50.0, temperature);
        const SelectionContext ctx = SelectionContext::qubit_sigma_x(M_PI / 3.0);
        const PostSelectedMeterState state =
            PostSelectedMeterState::postselected(probe, ctx, 0.5, MomentumGrid(6.5, 512));
        const double qfi = wvsim::sld_qfi(wvsim::discretize(state)).qfi;
        CHECK(qfi > last);
        last = qfi;
    }
}

TEST_CASE("numeric: conditioned information times probability") {
    const PostSelectedMeterState state = spot_state(512);
    const double expect = wvsim::postselection_probability_allorder(state) *
                          wvsim::sld_qfi(wvsim::discretize(state)).qfi;
    CHECK(wvsim::effective_qfi(state) == doctest::Approx(expect).epsilon(1e-12));
}

TEST_CASE("numeric: degenerate support detection") {
    const MomentumGrid grid(1.0, 64);
    Eigen::MatrixXcd rho = Eigen::MatrixXcd::Zero(64, 64);
    rho(0, 0) = 1.0;
    Eigen::MatrixXcd drho = Eigen::MatrixXcd::Zero(64, 64);
    drho(1, 1) = 1.0;  // all derivative weight on the null space
    CHECK_THROWS_AS(wvsim::sld_qfi(DiscretizedState{grid, rho, drho}), wvsim::DegenerateSupport);

    Eigen::MatrixXcd negative = -Eigen::MatrixXcd::Identity(64, 64);
    CHECK_THROWS_AS(wvsim::sld_qfi(DiscretizedState{grid, negative, drho}),
                    wvsim::NonPositiveState);
}

TEST_CASE("numeric: node-count cap") {
    const ThermalGaussianProbe probe(1.0, 50.0, 100.0);
    const SelectionContext ctx = SelectionContext::qubit_sigma_x(M_PI / 3.0);
    const PostSelectedMeterState state =
        PostSelectedMeterState::postselected(probe, ctx, 0.5, MomentumGrid(6.0, 8194));
    CHECK_THROWS_AS(wvsim::discretize(state), std::invalid_argument);
}

TEST_CASE("numeric: flat-window information") {
    // Purely imaginary weak value: the leading divergence is (4/3) p_max^2.
    const SelectionContext unit = SelectionContext::with_imaginary_weak_value(1.0, 0.5);
    for (double p_max : {50.0, 100.0, 200.0}) {
        const wvsim::FlatWindowResult r = wvsim::flat_window_qfi(1.0, unit, p_max);
        CHECK(r.qfi / (p_max * p_max) == doctest::Approx(4.0 / 3.0).epsilon(1e-6));
        CHECK(r.excluded_mass < 1e-6);
    }
    const SelectionContext anomalous = SelectionContext::with_imaginary_weak_value(2.31, 0.1);
    const wvsim::FlatWindowResult large = wvsim::flat_window_qfi(1.0, anomalous, 100.0);
    CHECK(large.qfi == doctest::Approx(13175.003888857835).epsilon(1e-9));

    // Zero weak value keeps the quadratic envelope with an order-one factor.
    const SelectionContext zero = SelectionContext::with_imaginary_weak_value(0.0, 0.5);
    const wvsim::FlatWindowResult mid = wvsim::flat_window_qfi(1.0, zero, 100.0);
    CHECK(mid.qfi / 1e4 > 1.29);
    CHECK(mid.qfi / 1e4 < 1.42);
}

TEST_CASE("numeric: flat-window edge cases") {
    // Identity observable: the window density does not move with theta.
    Eigen::Vector2cd zero_state(1.0, 0.0);
    const SelectionContext identity(zero_state, zero_state, Eigen::Matrix2cd::Identity());
    const wvsim::FlatWindowResult r = wvsim::flat_window_qfi(1.0, identity, 100.0);
    CHECK(r.qfi == 0.0);

    const SelectionContext unit = SelectionContext::with_imaginary_weak_value(1.0, 0.5);
    CHECK_THROWS_AS(wvsim::flat_window_qfi(0.0, unit, 100.0), std::invalid_argument);
    CHECK_THROWS_AS(wvsim::flat_window_qfi(1.0, unit, -5.0), std::invalid_argument);

    Eigen::Vector2cd plus(M_SQRT1_2, M_SQRT1_2);
    Eigen::Matrix2cd projector;
    projector << 1.0, 0.0, 0.0, 0.0;
    const SelectionContext not_involutive(plus, zero_state, projector);
    CHECK_THROWS_AS(wvsim::flat_window_qfi(1.0, not_involutive, 100.0), std::invalid_argument);
}
