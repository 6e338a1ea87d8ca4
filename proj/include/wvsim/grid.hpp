#pragma once

#include <Eigen/Dense>

namespace wvsim {

// Uniform symmetric momentum grid on [-p_max, p_max] with trapezoid
// quadrature weights. n_points must be even (p = 0 is then never a node,
// which keeps isolated kernel zeros off the grid) and at least 64.
struct MomentumGrid {
    double p_max;
    int n_points;

    MomentumGrid(double p_max, int n_points);

    double dp() const { return 2.0 * p_max / (n_points - 1); }

    // Nodes -p_max, -p_max+dp, ..., p_max.
    Eigen::VectorXd nodes() const;

    // Trapezoid weights: dp everywhere, dp/2 at the two endpoints.
    Eigen::VectorXd weights() const;
};

}  // namespace wvsim
