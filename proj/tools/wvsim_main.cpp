// wvsim: weak quantum measurements with post-selection on a thermal
// Gaussian probe.
//
// usage:
//   wvsim sweep [--config FILE] [overrides...]  evaluate one quantity over an
//                                               axis and write CSV
//   wvsim spot-check                            cross-check independent routes
//   wvsim fig1 [--output-dir D] [--jobs N]      SNR vs temperature series
//   wvsim fig2 [--output-dir D] [--jobs N]      effective Fisher information
//                                               vs temperature series
//   wvsim dump-defaults [--output FILE]         print the default config
//
// exit codes: 0 success, 1 spot-check failure, 2 bad usage or config,
// 3 numerical failure.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wvsim/errors.hpp"
#include "wvsim/sweep.hpp"

namespace {

void write_rows(const wvsim::SweepConfig& config, const std::vector<wvsim::SweepRow>& rows) {
    if (config.output.empty()) {
        wvsim::write_csv(std::cout, config, rows);
        return;
    }
    std::ofstream out(config.output);
    if (!out) throw wvsim::ConfigError("cannot open output file '" + config.output + "'");
    wvsim::write_csv(out, config, rows);
    std::cerr << "wrote " << rows.size() << " rows to " << config.output << "\n";
}

int run_figure(const std::vector<wvsim::FigureSeries>& series, const std::string& prefix,
               const std::string& dir, int jobs) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw wvsim::ConfigError("cannot create output directory '" + dir + "'");
    for (const auto& entry : series) {
        wvsim::SweepConfig config = entry.config;
        config.jobs = jobs;
        const auto rows = wvsim::run_sweep(config);
        const std::string path = dir + "/" + prefix + "_" + entry.label + ".csv";
        std::ofstream out(path);
        if (!out) throw wvsim::ConfigError("cannot open output file '" + path + "'");
        wvsim::write_csv(out, config, rows);
        std::cout << "wrote " << path << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weak quantum measurements with post-selection on a thermal Gaussian probe"};
    app.require_subcommand(1);

    auto* sweep_cmd =
        app.add_subcommand("sweep", "evaluate one quantity over an axis and write CSV");
    std::string config_path, quantity_name, axis_name, output;
    double start = 0, stop = 0, sigma = 0, mass = 0, hbar = 0, kb = 0, temperature = 0;
    double theta = 0, phi = 0, n_trials = 0, p_max = 0;
    int points = 0, n_points = 0, jobs = 0;
    bool log_spacing = false;
    sweep_cmd->add_option("--config", config_path, "config file (key = value lines)");
    sweep_cmd->add_option("--quantity", quantity_name,
                          "snr_numeric|snr_closed|snr_weak|qfi_weak|qfi_numeric|qfi_effective|"
                          "purity|flat_window");
    sweep_cmd->add_option("--axis", axis_name, "temperature|theta|phi|p_max");
    sweep_cmd->add_option("--start", start, "first axis value");
    sweep_cmd->add_option("--stop", stop, "last axis value");
    sweep_cmd->add_option("--points", points, "number of axis points");
    sweep_cmd->add_flag("--log,!--no-log", log_spacing, "log-spaced axis values");
    sweep_cmd->add_option("--sigma", sigma, "probe wave-packet width");
    sweep_cmd->add_option("--mass", mass, "probe mass");
    sweep_cmd->add_option("--hbar", hbar, "reduced Planck constant");
    sweep_cmd->add_option("--kb", kb, "Boltzmann constant");
    sweep_cmd->add_option("--temperature", temperature, "probe temperature in K");
    sweep_cmd->add_option("--theta", theta, "interaction coupling");
    sweep_cmd->add_option("--phi", phi, "qubit family angle");
    sweep_cmd->add_option("--n-trials", n_trials, "input ensemble size for SNR");
    sweep_cmd->add_option("--pmax", p_max, "momentum window half-width (0 = automatic)");
    sweep_cmd->add_option("--npoints", n_points, "momentum grid nodes (0 = automatic)");
    sweep_cmd->add_option("--jobs", jobs, "worker threads");
    sweep_cmd->add_option("--output", output, "CSV path (default stdout)");

    auto* spot_cmd =
        app.add_subcommand("spot-check", "cross-check independent routes to the same numbers");

    std::string fig_dir = ".";
    int fig_jobs = 1;
    auto* fig1_cmd = app.add_subcommand("fig1", "SNR vs temperature for 3 couplings x 4 angles");
    auto* fig2_cmd = app.add_subcommand(
        "fig2", "effective Fisher information vs temperature for 3 couplings x 4 angles");
    for (auto* cmd : {fig1_cmd, fig2_cmd}) {
        cmd->add_option("--output-dir", fig_dir, "directory for the CSV files");
        cmd->add_option("--jobs", fig_jobs, "worker threads");
    }

    std::string dump_output;
    auto* dump_cmd = app.add_subcommand("dump-defaults", "print the default config file");
    dump_cmd->add_option("--output", dump_output, "write to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*sweep_cmd) {
            wvsim::SweepConfig config = wvsim::default_config();
            if (sweep_cmd->count("--config") > 0) {
                std::ifstream in(config_path);
                if (!in) {
                    throw wvsim::ConfigError("cannot open config file '" + config_path + "'");
                }
                config = wvsim::parse_config_file(in);
            }
            if (sweep_cmd->count("--quantity") > 0) {
                config.quantity = wvsim::quantity_from_string(quantity_name);
            }
            if (sweep_cmd->count("--axis") > 0) config.axis = wvsim::axis_from_string(axis_name);
            if (sweep_cmd->count("--start") > 0) config.start = start;
            if (sweep_cmd->count("--stop") > 0) config.stop = stop;
            if (sweep_cmd->count("--points") > 0) config.points = points;
            if (sweep_cmd->count("--log") > 0) config.log_spacing = log_spacing;
            if (sweep_cmd->count("--sigma") > 0) config.sigma = sigma;
            if (sweep_cmd->count("--mass") > 0) config.mass = mass;
            if (sweep_cmd->count("--hbar") > 0) config.hbar = hbar;
            if (sweep_cmd->count("--kb") > 0) config.k_boltzmann = kb;
            if (sweep_cmd->count("--temperature") > 0) config.temperature = temperature;
            if (sweep_cmd->count("--theta") > 0) config.theta = theta;
            if (sweep_cmd->count("--phi") > 0) config.phi = phi;
            if (sweep_cmd->count("--n-trials") > 0) config.n_trials = n_trials;
            if (sweep_cmd->count("--pmax") > 0) config.p_max = p_max;
            if (sweep_cmd->count("--npoints") > 0) config.n_points = n_points;
            if (sweep_cmd->count("--jobs") > 0) config.jobs = jobs;
            if (sweep_cmd->count("--output") > 0) config.output = output;
            write_rows(config, wvsim::run_sweep(config));
            return 0;
        }
        if (*spot_cmd) {
            return wvsim::spot_check(std::cout) == 0 ? 0 : 1;
        }
        if (*fig1_cmd) {
            return run_figure(wvsim::fig1_series(), "fig1", fig_dir, fig_jobs);
        }
        if (*fig2_cmd) {
            return run_figure(wvsim::fig2_series(), "fig2", fig_dir, fig_jobs);
        }
        if (*dump_cmd) {
            const std::string text = wvsim::serialize_config(wvsim::default_config());
            if (dump_output.empty()) {
                std::cout << text;
            } else {
                std::ofstream out(dump_output);
                if (!out) {
                    throw wvsim::ConfigError("cannot open output file '" + dump_output + "'");
                }
                out << text;
            }
            return 0;
        }
    } catch (const wvsim::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "invalid argument: " << e.what() << "\n";
        return 2;
    } catch (const wvsim::Error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
