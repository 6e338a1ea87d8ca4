#pragma once

#include <Eigen/Dense>
#include <iosfwd>
#include <string>
#include <vector>

#include "wvsim/selection.hpp"

namespace wvsim {

enum class Quantity {
    snr_numeric,    // snr_postselected_numeric on the discretized state
    snr_closed,     // snr_mixed_closed_form, the unmodified comparison route
    snr_weak,       // first-order SNR (weak_valid column reports the check)
    qfi_weak,       // gaussian_qfi of the weak-limit summary
    qfi_numeric,    // sld_qfi of the conditional state
    qfi_effective,  // probability * sld_qfi
    purity,         // probe purity (no meter involved)
    flat_window,    // flat-window Fisher information vs p_max
};

enum class SweepAxis { temperature, theta, phi, p_max };

// One sweep: a quantity, an axis with start/stop/points, and the physical
// parameters held fixed. phi parameterizes the built-in qubit family
// (pre = cos phi |0> + i sin phi |1>, post = |0>, observable = sigma_x);
// setting use_custom_context swaps in explicit states, and then the phi axis
// is rejected.
struct SweepConfig {
    Quantity quantity = Quantity::snr_numeric;
    SweepAxis axis = SweepAxis::temperature;
    double start = 0.0;
    double stop = 300.0;
    int points = 50;
    bool log_spacing = false;

    double sigma = 1.0;
    double mass = 50.0;
    double hbar = 1.0;
    double k_boltzmann = 3.167e-6;
    double temperature = 0.0;
    double theta = 0.025;
    double phi = 0.78539816339744831;  // pi/4
    double n_trials = 1e4;
    double p_max = 0.0;   // 0 = automatic
    int n_points = 0;     // 0 = automatic
    int jobs = 1;
    std::string output;  // empty = stdout

    bool use_custom_context = false;
    Eigen::Vector2cd pre_state{1.0, 0.0};
    Eigen::Vector2cd post_state{1.0, 0.0};
    Eigen::Matrix2cd observable = Eigen::Matrix2cd::Identity();
};

SweepConfig default_config();

std::string to_string(Quantity q);
std::string to_string(SweepAxis a);
// Throw ConfigError on unknown names.
Quantity quantity_from_string(const std::string& name);
SweepAxis axis_from_string(const std::string& name);

// key = value file, # comments, complex entries as (re,im). Unknown keys,
// malformed values, and out-of-range entries throw ConfigError naming the
// line. serialize_config round-trips through parse_config_file.
SweepConfig parse_config_file(std::istream& in);
std::string serialize_config(const SweepConfig& config);

// One output row per sweep point. A point that throws is captured in error
// (empty on success) with value fields NaN; weak_valid is -1 except for
// snr_weak, where it is the 0/1 validity flag.
struct SweepRow {
    double sweep_value;
    double value;
    double postselect_prob;
    int weak_valid;
    double grid_p_max;
    int grid_n_points;
    std::string error;
};

// Evaluates every point (jobs > 1 runs a thread pool; row order and content
// are independent of jobs). Throws ConfigError on inconsistent requests
// (phi axis with a custom context, nonpositive points, start >= stop with
// points > 1, log spacing across nonpositive values).
std::vector<SweepRow> run_sweep(const SweepConfig& config);

void write_csv(std::ostream& out, const SweepConfig& config, const std::vector<SweepRow>& rows);

// Built-in cross-checks of independent routes to the same number, printed as
// a table; returns the count of hard failures (0 = all good).
int spot_check(std::ostream& out);

// Figure series: each entry is a labeled sweep covering the coupling regimes
// theta in {0.025, 0.5, 2} for four post-selection angles. fig1 sweeps SNR
// over temperature, fig2 sweeps effective Fisher information.
struct FigureSeries {
    std::string label;
    SweepConfig config;
};

std::vector<FigureSeries> fig1_series();
std::vector<FigureSeries> fig2_series();

}  // namespace wvsim
