#include "wvsim/probe.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace wvsim {

ThermalGaussianProbe::ThermalGaussianProbe(double sigma_, double mass_, double temperature_,
                                           double hbar_, double k_boltzmann_)
    : sigma(sigma_), mass(mass_), temperature(temperature_), hbar(hbar_),
      k_boltzmann(k_boltzmann_) {
    if (!(sigma > 0.0)) throw std::invalid_argument("probe: sigma must be positive");
    if (!(mass > 0.0)) throw std::invalid_argument("probe: mass must be positive");
    if (!(temperature >= 0.0)) throw std::invalid_argument("probe: temperature must be >= 0");
    if (!(hbar > 0.0)) throw std::invalid_argument("probe: hbar must be positive");
    if (!(k_boltzmann > 0.0)) throw std::invalid_argument("probe: k_boltzmann must be positive");
}

double ThermalGaussianProbe::density_kernel_x(double x, double x_prime) const {
    const double d = x - x_prime;
    const double damping = mass * k_boltzmann * temperature * d * d / (2.0 * hbar * hbar);
    return std::exp(-(x * x + x_prime * x_prime) / (4.0 * sigma * sigma) - damping) /
           std::sqrt(2.0 * std::numbers::pi * sigma * sigma);
}

double ThermalGaussianProbe::density_kernel_p(double p, double p_prime) const {
    const double d = p - p_prime;
    const double s = p + p_prime;
    const double b = beta();
    const double s2 = sigma * sigma;
    return std::sqrt(2.0 * s2 / (std::numbers::pi * b)) *
           std::exp(-s2 * d * d / (2.0 * hbar * hbar) - s2 * s * s / (2.0 * b));
}

double ThermalGaussianProbe::purity() const { return hbar / std::sqrt(beta()); }

}  // namespace wvsim
