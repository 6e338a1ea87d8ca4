#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "oracles.hpp"
#include "wvsim/probe.hpp"

using wvsim::ThermalGaussianProbe;

TEST_CASE("probe: parameter validation") {
    CHECK_THROWS_AS(ThermalGaussianProbe(0.0, 50.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ThermalGaussianProbe(-1.0, 50.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ThermalGaussianProbe(1.0, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ThermalGaussianProbe(1.0, 50.0, -1.0), std::invalid_argument);
    CHECK_THROWS_AS(ThermalGaussianProbe(1.0, 50.0, 0.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(ThermalGaussianProbe(1.0, 50.0, 0.0, 1.0, 0.0), std::invalid_argument);
    CHECK_NOTHROW(ThermalGaussianProbe(1.0, 50.0, 0.0));
}

TEST_CASE("probe: derived scales") {
    const ThermalGaussianProbe probe(1.0, 50.0, 100.0);
    const double alpha = 2.0 * 50.0 * 3.167e-6 * 100.0 * 1.0;
    CHECK(probe.alpha() == doctest::Approx(alpha).epsilon(1e-14));
    CHECK(probe.beta() == doctest::Approx(1.0 + 2.0 * alpha).epsilon(1e-14));
    CHECK(probe.momentum_variance() == doctest::Approx(probe.beta() / 4.0).epsilon(1e-14));
}

TEST_CASE("probe: position kernel") {
    const ThermalGaussianProbe probe(1.0, 50.0, 100.0);
    CHECK(probe.density_kernel_x(1.0, -1.0) == doctest::Approx(0.2344275877080281).epsilon(1e-12));
    CHECK(probe.density_kernel_x(0.0, 0.0) ==
          doctest::Approx(1.0 / std::sqrt(2.0 * M_PI)).epsilon(1e-13));
    CHECK(probe.density_kernel_x(0.7, -0.4) ==
          doctest::Approx(probe.density_kernel_x(-0.4, 0.7)).epsilon(1e-14));
}

TEST_CASE("probe: momentum kernel") {
    const ThermalGaussianProbe probe(1.0, 50.0, 50.0);
    CHECK(probe.density_kernel_p(0.3, -0.2) == doctest::Approx(0.6898871207552612).epsilon(1e-12));
    CHECK(probe.density_kernel_p(0.3, -0.2) ==
          doctest::Approx(probe.density_kernel_p(-0.2, 0.3)).epsilon(1e-14));
    // Diagonal is the thermal Maxwell-Boltzmann-broadened marginal.
    const double v = probe.momentum_variance();
    CHECK(probe.density_kernel_p(0.4, 0.4) ==
          doctest::Approx(oracles::normal_pdf(0.4, 0.0, v)).epsilon(1e-13));
}

TEST_CASE("probe: momentum kernel is the Fourier transform of the position kernel") {
    const ThermalGaussianProbe probe(1.0, 50.0, 50.0);
    const double p = 0.3, pp = -0.2;
    // (1 / 2 pi hbar) Int dx dx' k_x(x, x') cos(p x - p' x'), imaginary part
    // vanishes by symmetry of the real kernel.
    const double val = oracles::simpson2d(
        [&](double x, double xp) {
            return probe.density_kernel_x(x, xp) * std::cos(p * x - pp * xp);
        },
        -10.0, 10.0, 500, -10.0, 10.0, 500) / (2.0 * M_PI);
    CHECK(probe.density_kernel_p(p, pp) == doctest::Approx(val).epsilon(1e-8));
}

TEST_CASE("probe: purity closed form") {
    CHECK(ThermalGaussianProbe(1.0, 50.0, 0.0).purity() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ThermalGaussianProbe(1.0, 50.0, 10.0).purity() ==
          doctest::Approx(0.9968479658594787).epsilon(1e-12));
    CHECK(ThermalGaussianProbe(1.0, 50.0, 100.0).purity() ==
          doctest::Approx(0.9697592357600147).epsilon(1e-12));
    CHECK(ThermalGaussianProbe(1.0, 50.0, 300.0).purity() ==
          doctest::Approx(0.9166907937765963).epsilon(1e-12));
    // 4 m k_B T sigma^2 = 3 hbar^2 halves the purity.
    const double t_half = 3.0 / (4.0 * 50.0 * 3.167e-6);
    CHECK(ThermalGaussianProbe(1.0, 50.0, t_half).purity() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("probe: purity matches the quadrature trace of rho squared") {
    for (double temperature : {0.0, 300.0}) {
        const ThermalGaussianProbe probe(1.0, 50.0, temperature);
        const double tr2 = oracles::simpson2d(
            [&](double x, double xp) {
                const double k = probe.density_kernel_x(x, xp);
                return k * k;
            },
            -8.0, 8.0, 400, -8.0, 8.0, 400);
        CHECK(probe.purity() == doctest::Approx(tr2).epsilon(1e-6));
    }
}
