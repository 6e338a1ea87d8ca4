#include "wvsim/grid.hpp"

#include <stdexcept>

namespace wvsim {

MomentumGrid::MomentumGrid(double p_max_, int n_points_) : p_max(p_max_), n_points(n_points_) {
    if (!(p_max > 0.0)) throw std::invalid_argument("grid: p_max must be positive");
    if (n_points < 64) throw std::invalid_argument("grid: n_points must be at least 64");
    if (n_points % 2 != 0) throw std::invalid_argument("grid: n_points must be even");
}

Eigen::VectorXd MomentumGrid::nodes() const {
    return Eigen::VectorXd::LinSpaced(n_points, -p_max, p_max);
}

Eigen::VectorXd MomentumGrid::weights() const {
    Eigen::VectorXd w = Eigen::VectorXd::Constant(n_points, dp());
    w(0) *= 0.5;
    w(n_points - 1) *= 0.5;
    return w;
}

}  // namespace wvsim
