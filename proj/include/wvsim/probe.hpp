#pragma once

namespace wvsim {

// Gaussian wave packet of width sigma whose initial momentum is drawn from a
// Maxwell-Boltzmann distribution at temperature T. Averaging over the drift
// momentum analytically gives a mixed state with closed-form density kernels
// in both representations. Units are atomic-style: hbar = 1 and k_B given
// per kelvin by default, mass in electron masses.
struct ThermalGaussianProbe {
    double sigma;        // initial wave-packet width
    double mass;         // particle mass m
    double temperature;  // T in kelvin
    double hbar;
    double k_boltzmann;

    ThermalGaussianProbe(double sigma, double mass, double temperature,
                         double hbar = 1.0, double k_boltzmann = 3.167e-6);

    // alpha = 2 m k_B T sigma^2
    double alpha() const { return 2.0 * mass * k_boltzmann * temperature * sigma * sigma; }

    // beta = hbar^2 + 2 alpha
    double beta() const { return hbar * hbar + 2.0 * alpha(); }

    // Variance of the diagonal momentum distribution, beta/(4 sigma^2).
    double momentum_variance() const { return beta() / (4.0 * sigma * sigma); }

    // <x|rho_d|x'> = (2 pi sigma^2)^(-1/2)
    //                exp[-(x^2+x'^2)/(4 sigma^2) - m k_B T (x-x')^2/(2 hbar^2)].
    // The thermal term is damping (minus sign); see README, numerical notes.
    double density_kernel_x(double x, double x_prime) const;

    // <p|rho_d|p'> = sqrt(2 sigma^2/(pi beta))
    //                exp[-sigma^2 (p-p')^2/(2 hbar^2) - sigma^2 (p+p')^2/(2 beta)],
    // evaluated in this centered form, which is algebraically identical to the
    // expanded (p^2+p'^2, (p-p')^2) form but stays stable at large |p|, |p'|.
    double density_kernel_p(double p, double p_prime) const;

    // Tr[rho_d^2] = hbar/sqrt(hbar^2 + 4 m k_B T sigma^2); 1 iff T = 0.
    double purity() const;
};

}  // namespace wvsim
