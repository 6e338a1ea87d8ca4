#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "wvsim/grid.hpp"

using wvsim::MomentumGrid;

TEST_CASE("grid: nodes and spacing") {
    const MomentumGrid grid(5.0, 128);
    CHECK(grid.dp() == doctest::Approx(10.0 / 127.0).epsilon(1e-15));
    const Eigen::VectorXd p = grid.nodes();
    REQUIRE(p.size() == 128);
    CHECK(p(0) == doctest::Approx(-5.0).epsilon(1e-15));
    CHECK(p(127) == doctest::Approx(5.0).epsilon(1e-15));
    for (int i = 0; i < 128; ++i) {
        CHECK(p(i) == doctest::Approx(-p(127 - i)).epsilon(1e-13));
    }
    // Even node count keeps p = 0 off the grid.
    double closest = 1e300;
    for (int i = 0; i < 128; ++i) closest = std::min(closest, std::abs(p(i)));
    CHECK(closest == doctest::Approx(grid.dp() / 2.0).epsilon(1e-12));
}

TEST_CASE("grid: trapezoid weights") {
    const MomentumGrid grid(3.0, 64);
    const Eigen::VectorXd w = grid.weights();
    REQUIRE(w.size() == 64);
    CHECK(w(0) == doctest::Approx(grid.dp() / 2.0).epsilon(1e-15));
    CHECK(w(63) == doctest::Approx(grid.dp() / 2.0).epsilon(1e-15));
    for (int i = 1; i < 63; ++i) CHECK(w(i) == doctest::Approx(grid.dp()).epsilon(1e-15));
    CHECK(w.sum() == doctest::Approx(6.0).epsilon(1e-13));
}

TEST_CASE("grid: validation") {
    CHECK_THROWS_AS(MomentumGrid(0.0, 128), std::invalid_argument);
    CHECK_THROWS_AS(MomentumGrid(-2.0, 128), std::invalid_argument);
    CHECK_THROWS_AS(MomentumGrid(5.0, 63), std::invalid_argument);
    CHECK_THROWS_AS(MomentumGrid(5.0, 127), std::invalid_argument);
    CHECK_THROWS_AS(MomentumGrid(5.0, 62), std::invalid_argument);
    CHECK_NOTHROW(MomentumGrid(5.0, 64));
}
