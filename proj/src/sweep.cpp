#include "wvsim/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "wvsim/errors.hpp"
#include "wvsim/gaussian_qfi.hpp"
#include "wvsim/meter.hpp"
#include "wvsim/numeric_qfi.hpp"
#include "wvsim/probe.hpp"

namespace wvsim {

namespace {

constexpr const char* kQuantityNames[] = {"snr_numeric",   "snr_closed", "snr_weak",
                                          "qfi_weak",      "qfi_numeric", "qfi_effective",
                                          "purity",        "flat_window"};
constexpr const char* kAxisNames[] = {"temperature", "theta", "phi", "p_max"};

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

std::string fmt_short(double x) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", x);
    return buf;
}

std::string fmt(const complexd& z) { return "(" + fmt(z.real()) + "," + fmt(z.imag()) + ")"; }

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string line_tag(int line_no) { return "config line " + std::to_string(line_no); }

double parse_double(const std::string& value, int line_no, const std::string& key) {
    std::istringstream iss(value);
    double out;
    std::string rest;
    if (!(iss >> out) || (iss >> rest)) {
        throw ConfigError(line_tag(line_no) + ": invalid number for '" + key + "'");
    }
    return out;
}

int parse_int(const std::string& value, int line_no, const std::string& key) {
    std::istringstream iss(value);
    int out;
    std::string rest;
    if (!(iss >> out) || (iss >> rest)) {
        throw ConfigError(line_tag(line_no) + ": invalid integer for '" + key + "'");
    }
    return out;
}

bool parse_bool(const std::string& value, int line_no, const std::string& key) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw ConfigError(line_tag(line_no) + ": invalid boolean for '" + key + "' (use true/false)");
}

std::vector<complexd> parse_complex_list(const std::string& value, size_t count, int line_no,
                                         const std::string& key) {
    std::istringstream iss(value);
    std::vector<complexd> out(count);
    for (auto& z : out) {
        if (!(iss >> z)) {
            throw ConfigError(line_tag(line_no) + ": '" + key + "' needs " +
                              std::to_string(count) + " complex entries like (re,im)");
        }
    }
    std::string rest;
    if (iss >> rest) {
        throw ConfigError(line_tag(line_no) + ": '" + key + "' needs exactly " +
                          std::to_string(count) + " entries");
    }
    return out;
}

bool needs_kernel_grid(Quantity q) {
    return q == Quantity::snr_numeric || q == Quantity::qfi_numeric ||
           q == Quantity::qfi_effective;
}

void validate(const SweepConfig& c) {
    if (c.points < 1) throw ConfigError("points must be at least 1");
    if (c.points > 1 && !(c.stop > c.start)) {
        throw ConfigError("stop must exceed start when points > 1");
    }
    if (c.log_spacing && !(c.start > 0.0)) {
        throw ConfigError("log spacing requires a positive start");
    }
    if (c.jobs < 1) throw ConfigError("jobs must be at least 1");
    if (!(c.sigma > 0.0)) throw ConfigError("sigma must be positive");
    if (!(c.mass > 0.0)) throw ConfigError("mass must be positive");
    if (!(c.hbar > 0.0)) throw ConfigError("hbar must be positive");
    if (!(c.k_boltzmann > 0.0)) throw ConfigError("k_boltzmann must be positive");
    if (!(c.temperature >= 0.0)) throw ConfigError("temperature must be >= 0");
    if (!(c.n_trials > 0.0)) throw ConfigError("n_trials must be positive");
    if (c.p_max < 0.0) throw ConfigError("p_max must be >= 0 (0 = automatic)");
    if (c.n_points < 0) throw ConfigError("n_points must be >= 0 (0 = automatic)");
    if (c.n_points > 0 && (c.n_points % 2 != 0 || c.n_points < 64)) {
        throw ConfigError("n_points must be even and at least 64");
    }
    if (c.axis == SweepAxis::phi && c.use_custom_context) {
        throw ConfigError("the phi axis applies only to the built-in qubit family");
    }
    if (needs_kernel_grid(c.quantity)) {
        if (c.axis == SweepAxis::p_max) {
            if (c.n_points == 0) throw ConfigError("sweeping p_max requires an explicit n_points");
        } else if ((c.p_max > 0.0) != (c.n_points > 0)) {
            throw ConfigError("p_max and n_points must be given together (or both omitted)");
        }
    }
    if (c.quantity == Quantity::flat_window && c.axis != SweepAxis::p_max && !(c.p_max > 0.0)) {
        throw ConfigError("flat_window needs p_max (or the p_max axis)");
    }
}

std::vector<double> axis_values(const SweepConfig& c) {
    std::vector<double> v(static_cast<size_t>(c.points));
    if (c.points == 1) {
        v[0] = c.start;
        return v;
    }
    if (c.log_spacing) {
        const double la = std::log(c.start);
        const double lb = std::log(c.stop);
        for (int i = 0; i < c.points; ++i) {
            v[static_cast<size_t>(i)] = std::exp(la + (lb - la) * i / (c.points - 1));
        }
    } else {
        for (int i = 0; i < c.points; ++i) {
            v[static_cast<size_t>(i)] = c.start + (c.stop - c.start) * i / (c.points - 1);
        }
    }
    return v;
}

SweepRow evaluate_point(const SweepConfig& c, double axis_value) {
    SweepRow row;
    row.sweep_value = axis_value;
    row.value = std::nan("");
    row.postselect_prob = std::nan("");
    row.weak_valid = -1;
    row.grid_p_max = std::nan("");
    row.grid_n_points = -1;
    try {
        double temperature = c.temperature;
        double theta = c.theta;
        double phi = c.phi;
        double p_max = c.p_max;
        switch (c.axis) {
            case SweepAxis::temperature: temperature = axis_value; break;
            case SweepAxis::theta: theta = axis_value; break;
            case SweepAxis::phi: phi = axis_value; break;
            case SweepAxis::p_max: p_max = axis_value; break;
        }
        const ThermalGaussianProbe probe(c.sigma, c.mass, temperature, c.hbar, c.k_boltzmann);
        const SelectionContext ctx =
            c.use_custom_context ? SelectionContext(c.pre_state, c.post_state, c.observable)
                                 : SelectionContext::qubit_sigma_x(phi);
        switch (c.quantity) {
            case Quantity::purity:
                row.value = probe.purity();
                break;
            case Quantity::snr_closed:
                row.value = snr_mixed_closed_form(probe, ctx, theta, c.n_trials);
                break;
            case Quantity::snr_weak: {
                const WeakLimitSnr r = snr_weak_limit(probe, ctx, theta, c.n_trials);
                row.value = r.value;
                row.weak_valid = r.valid ? 1 : 0;
                row.postselect_prob = postselection_overlap(ctx);
                break;
            }
            case Quantity::qfi_weak:
                row.value = gaussian_qfi(gaussian_summary_weak(probe, ctx, theta));
                row.postselect_prob = postselection_overlap(ctx);
                break;
            case Quantity::flat_window: {
                const int n = c.n_points > 0 ? c.n_points : 16384;
                row.value = flat_window_qfi(theta, ctx, p_max, n).qfi;
                row.grid_p_max = p_max;
                row.grid_n_points = n;
                break;
            }
            default: {
                const bool explicit_grid =
                    c.axis == SweepAxis::p_max || (c.p_max > 0.0 && c.n_points > 0);
                const PostSelectedMeterState state =
                    explicit_grid ? PostSelectedMeterState::postselected(
                                        probe, ctx, theta, MomentumGrid(p_max, c.n_points))
                                  : PostSelectedMeterState::postselected(probe, ctx, theta);
                row.postselect_prob = postselection_probability_allorder(state);
                row.grid_p_max = state.grid().p_max;
                row.grid_n_points = state.grid().n_points;
                if (c.quantity == Quantity::snr_numeric) {
                    row.value = snr_postselected_numeric(state, c.n_trials);
                } else if (c.quantity == Quantity::qfi_numeric) {
                    row.value = sld_qfi(discretize(state)).qfi;
                } else {
                    row.value = effective_qfi(state);
                }
                break;
            }
        }
    } catch (const std::exception& e) {
        row.value = std::nan("");
        row.error = e.what();
    }
    return row;
}

}  // namespace

SweepConfig default_config() { return {}; }

std::string to_string(Quantity q) { return kQuantityNames[static_cast<int>(q)]; }

std::string to_string(SweepAxis a) { return kAxisNames[static_cast<int>(a)]; }

Quantity quantity_from_string(const std::string& name) {
    for (size_t i = 0; i < std::size(kQuantityNames); ++i) {
        if (name == kQuantityNames[i]) return static_cast<Quantity>(i);
    }
    throw ConfigError("unknown quantity '" + name + "'");
}

SweepAxis axis_from_string(const std::string& name) {
    for (size_t i = 0; i < std::size(kAxisNames); ++i) {
        if (name == kAxisNames[i]) return static_cast<SweepAxis>(i);
    }
    throw ConfigError("unknown axis '" + name + "'");
}

SweepConfig parse_config_file(std::istream& in) {
    SweepConfig c = default_config();
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = raw.substr(0, raw.find('#'));
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError(line_tag(line_no) + ": expected 'key = value'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key == "quantity") {
            try {
                c.quantity = quantity_from_string(value);
            } catch (const ConfigError& e) {
                throw ConfigError(line_tag(line_no) + ": " + e.what());
            }
        } else if (key == "axis") {
            try {
                c.axis = axis_from_string(value);
            } catch (const ConfigError& e) {
                throw ConfigError(line_tag(line_no) + ": " + e.what());
            }
        } else if (key == "start") {
            c.start = parse_double(value, line_no, key);
        } else if (key == "stop") {
            c.stop = parse_double(value, line_no, key);
        } else if (key == "points") {
            c.points = parse_int(value, line_no, key);
        } else if (key == "log_spacing") {
            c.log_spacing = parse_bool(value, line_no, key);
        } else if (key == "sigma") {
            c.sigma = parse_double(value, line_no, key);
        } else if (key == "mass") {
            c.mass = parse_double(value, line_no, key);
        } else if (key == "hbar") {
            c.hbar = parse_double(value, line_no, key);
        } else if (key == "k_boltzmann") {
            c.k_boltzmann = parse_double(value, line_no, key);
        } else if (key == "temperature") {
            c.temperature = parse_double(value, line_no, key);
        } else if (key == "theta") {
            c.theta = parse_double(value, line_no, key);
        } else if (key == "phi") {
            c.phi = parse_double(value, line_no, key);
        } else if (key == "n_trials") {
            c.n_trials = parse_double(value, line_no, key);
        } else if (key == "p_max") {
            c.p_max = parse_double(value, line_no, key);
        } else if (key == "n_points") {
            c.n_points = parse_int(value, line_no, key);
        } else if (key == "jobs") {
            c.jobs = parse_int(value, line_no, key);
        } else if (key == "output") {
            c.output = value;
        } else if (key == "use_custom_context") {
            c.use_custom_context = parse_bool(value, line_no, key);
        } else if (key == "pre_state") {
            const auto v = parse_complex_list(value, 2, line_no, key);
            c.pre_state << v[0], v[1];
        } else if (key == "post_state") {
            const auto v = parse_complex_list(value, 2, line_no, key);
            c.post_state << v[0], v[1];
        } else if (key == "observable") {
            const auto v = parse_complex_list(value, 4, line_no, key);
            c.observable << v[0], v[1], v[2], v[3];
        } else {
            throw ConfigError(line_tag(line_no) + ": unknown key '" + key + "'");
        }
    }
    return c;
}

std::string serialize_config(const SweepConfig& c) {
    std::ostringstream out;
    out << "quantity = " << to_string(c.quantity) << "\n";
    out << "axis = " << to_string(c.axis) << "\n";
    out << "start = " << fmt(c.start) << "\n";
    out << "stop = " << fmt(c.stop) << "\n";
    out << "points = " << c.points << "\n";
    out << "log_spacing = " << (c.log_spacing ? "true" : "false") << "\n";
    out << "sigma = " << fmt(c.sigma) << "\n";
    out << "mass = " << fmt(c.mass) << "\n";
    out << "hbar = " << fmt(c.hbar) << "\n";
    out << "k_boltzmann = " << fmt(c.k_boltzmann) << "\n";
    out << "temperature = " << fmt(c.temperature) << "\n";
    out << "theta = " << fmt(c.theta) << "\n";
    out << "phi = " << fmt(c.phi) << "\n";
    out << "n_trials = " << fmt(c.n_trials) << "\n";
    out << "p_max = " << fmt(c.p_max) << "\n";
    out << "n_points = " << c.n_points << "\n";
    out << "jobs = " << c.jobs << "\n";
    out << "output = " << c.output << "\n";
    out << "use_custom_context = " << (c.use_custom_context ? "true" : "false") << "\n";
    out << "pre_state = " << fmt(c.pre_state(0)) << " " << fmt(c.pre_state(1)) << "\n";
    out << "post_state = " << fmt(c.post_state(0)) << " " << fmt(c.post_state(1)) << "\n";
    out << "observable = " << fmt(c.observable(0, 0)) << " " << fmt(c.observable(0, 1)) << " "
        << fmt(c.observable(1, 0)) << " " << fmt(c.observable(1, 1)) << "\n";
    return out.str();
}

std::vector<SweepRow> run_sweep(const SweepConfig& config) {
    validate(config);
    const std::vector<double> values = axis_values(config);
    std::vector<SweepRow> rows(values.size());
    if (config.jobs == 1 || values.size() == 1) {
        for (size_t i = 0; i < values.size(); ++i) rows[i] = evaluate_point(config, values[i]);
        return rows;
    }
    std::atomic<size_t> next{0};
    auto worker = [&] {
        while (true) {
            const size_t i = next.fetch_add(1);
            if (i >= values.size()) return;
            rows[i] = evaluate_point(config, values[i]);
        }
    };
    const size_t n_threads = std::min(static_cast<size_t>(config.jobs), values.size());
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (size_t t = 0; t < n_threads; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    return rows;
}

void write_csv(std::ostream& out, const SweepConfig& config, const std::vector<SweepRow>& rows) {
    out << "# wvsim-csv v1\n";
    std::istringstream cfg(serialize_config(config));
    std::string line;
    while (std::getline(cfg, line)) out << "# " << line << "\n";
    out << "axis_value,value,postselect_prob,weak_valid,grid_p_max,grid_n_points,error\n";
    for (const auto& row : rows) {
        std::string error = row.error;
        for (auto& ch : error) {
            if (ch == ',' || ch == '\n') ch = ';';
        }
        out << fmt(row.sweep_value) << ',' << fmt(row.value) << ',' << fmt(row.postselect_prob)
            << ',' << row.weak_valid << ',' << fmt(row.grid_p_max) << ',' << row.grid_n_points
            << ',' << error << "\n";
    }
}

int spot_check(std::ostream& out) {
    int failures = 0;
    auto report = [&](const char* name, double value, double reference, double tol_rel) {
        const double rel = std::abs(value - reference) / std::max(std::abs(reference), 1e-300);
        const bool ok = rel <= tol_rel;
        if (!ok) ++failures;
        out << (ok ? "[PASS] " : "[FAIL] ") << name << ": value=" << fmt_short(value)
            << " reference=" << fmt_short(reference) << " rel=" << fmt_short(rel)
            << " tol=" << fmt_short(tol_rel) << "\n";
    };
    out << "cross-checks of independent routes to the same quantity\n";

    const double theta = 0.025;
    const double n_trials = 1000.0;
    const SelectionContext ctx = SelectionContext::with_imaginary_weak_value(2.31, 0.001);
    const ThermalGaussianProbe cold(1.0, 50.0, 0.0);
    const auto state0 = PostSelectedMeterState::postselected(cold, ctx, theta);
    const double snr_quad = snr_postselected_numeric(state0, n_trials);
    report("pure-probe SNR, quadrature vs closed form", snr_quad,
           snr_pure_closed_form(cold, ctx, theta, n_trials), 0.05);
    const WeakLimitSnr weak = snr_weak_limit(cold, ctx, theta, n_trials);
    report("pure-probe SNR, quadrature vs first order", snr_quad, weak.value, 0.05);
    report("first-order SNR vs algebraic value", weak.value,
           std::sqrt(n_trials * 0.001) * theta * 2.31 * std::sqrt(cold.beta()) / cold.sigma,
           1e-12);

    const ThermalGaussianProbe warm(1.0, 50.0, 100.0);
    {
        const double half_width = 10.0 * std::sqrt(warm.momentum_variance());
        const MomentumGrid grid(half_width, 1024);
        const Eigen::VectorXd p = grid.nodes();
        const Eigen::VectorXd wq = grid.weights();
        double acc = 0.0;
        for (int i = 0; i < grid.n_points; ++i) {
            for (int j = 0; j < grid.n_points; ++j) {
                const double k = warm.density_kernel_p(p(i), p(j));
                acc += wq(i) * wq(j) * k * k;
            }
        }
        report("probe purity, closed form vs quadrature", warm.purity(), acc, 1e-4);
    }

    const SelectionContext unit = SelectionContext::with_imaginary_weak_value(1.0, 0.5);
    const FlatWindowResult fw = flat_window_qfi(1.0, unit, 100.0, 16384);
    report("flat-window information vs leading order", fw.qfi, (4.0 / 3.0) * 100.0 * 100.0, 0.05);

    const double closed_mixed = snr_mixed_closed_form(warm, ctx, theta, n_trials);
    const auto state_warm = PostSelectedMeterState::postselected(warm, ctx, theta);
    out << "[INFO] all-order SNR at T=100: closed=" << fmt_short(closed_mixed)
        << " quadrature=" << fmt_short(snr_postselected_numeric(state_warm, n_trials))
        << " (closed form left unmodified; the quadrature route is the reference)\n";

    out << "spot-check: " << (5 - failures) << "/5 hard checks passed\n";
    return failures;
}

namespace {

struct PhiChoice {
    double value;
    const char* tag;
};

std::vector<FigureSeries> figure_series(Quantity quantity, int points) {
    const PhiChoice phis[] = {{std::numbers::pi / 6.0, "phi30"},
                              {std::numbers::pi / 4.0, "phi45"},
                              {std::numbers::pi / 3.0, "phi60"},
                              {std::atan(2.31), "phi66.59"}};
    const double thetas[] = {0.025, 0.5, 2.0};
    std::vector<FigureSeries> out;
    for (const double theta : thetas) {
        for (const PhiChoice& phi : phis) {
            SweepConfig c = default_config();
            c.quantity = quantity;
            c.axis = SweepAxis::temperature;
            c.start = 0.0;
            c.stop = 300.0;
            c.points = points;
            c.theta = theta;
            c.phi = phi.value;
            c.n_trials = 1e4;
            if (needs_kernel_grid(quantity) && quantity != Quantity::snr_numeric) {
                // One fixed grid per series keeps the spectra comparable
                // across temperatures; the window covers the widest state.
                const ThermalGaussianProbe hottest(c.sigma, c.mass, c.stop, c.hbar,
                                                   c.k_boltzmann);
                c.p_max = 10.0 * std::sqrt(hottest.momentum_variance()) + 1.0;
                c.n_points = 1024;
            }
            char label[64];
            std::snprintf(label, sizeof(label), "theta%g_%s", theta, phi.tag);
            out.push_back({label, c});
        }
    }
    return out;
}

}  // namespace

std::vector<FigureSeries> fig1_series() { return figure_series(Quantity::snr_numeric, 50); }

std::vector<FigureSeries> fig2_series() { return figure_series(Quantity::qfi_effective, 25); }

}  // namespace wvsim
