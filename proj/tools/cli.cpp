// Copyright 2026 The mollow Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <optional>
#include <thread>

#include <CLI11.hpp>

#include "mollow/config.hpp"
#include "mollow/errors.hpp"
#include "mollow/io.hpp"
#include "mollow/oracle.hpp"
#include "mollow/response.hpp"
#include "mollow/sweep.hpp"
#include "mollow/units.hpp"

namespace mollow::cli {

namespace {

struct Options
{
    std::string config_path;
    int workers = std::max(1u, std::thread::hardware_concurrency());
    std::string out;
    std::string format;
    std::optional<double> k;
};

RunConfig load(const Options& opt)
{
    RunConfig cfg = load_config(opt.config_path);
    if (opt.k) {
        if (!(*opt.k > 0))
            throw ConfigError("--k", "must be positive");
        if (cfg.pump.rabi_mhz && !cfg.pump.power_dbm && cfg.y_axis &&
            cfg.y_axis->kind == AxisKind::PumpPowerDbm)
            cfg.pump.rabi_mhz.reset();
        cfg.pump.k = *opt.k;
    }
    if (!opt.out.empty())
        cfg.output.path = opt.out;
    if (!opt.format.empty())
        cfg.output.format = parse_output_format(opt.format);
    if (opt.workers < 1)
        throw ConfigError("--workers", "must be at least 1");
    return cfg;
}

std::string fmt(double v)
{
    return io::format_double(v);
}

int cmd_spectrum(const Options& opt, std::ostream& out)
{
    const RunConfig cfg = load(opt);
    cfg.pump.validate();
    const double omega_pump = cfg.pump.resolve_omega(cfg.device);
    const double rabi = cfg.pump.resolve_rabi();
    const std::vector<double> grid = cfg.probe.values();

    ReflectionSpectrum s;
    if (cfg.engine == Engine::Oracle) {
        s.probe_ghz = grid;
        s.omega_pump_ghz = omega_pump;
        s.rabi_mhz = rabi;
        s.n_phases = cfg.n_phases;
        s.device = cfg.device;
        for (double w : grid)
            s.r.push_back(two_tone_reflection(cfg.device, omega_pump, rabi, w, cfg.oracle));
    } else {
        s = spectrum(cfg.device, omega_pump, rabi, grid, cfg.n_phases);
    }
    io::write_spectrum(cfg.output.path, s, cfg.output.format, cfg.output.include_complex,
                       io::timestamp_now());

    std::vector<double> mag(s.r.size());
    std::transform(s.r.begin(), s.r.end(), mag.begin(), [](complex r) { return std::abs(r); });
    const auto [lo, hi] = std::minmax_element(mag.begin(), mag.end());
    out << "omega_pump_ghz " << fmt(omega_pump) << "\n";
    out << "rabi_mhz " << fmt(rabi) << "\n";
    out << "min_abs_r " << fmt(*lo) << " at " << fmt(grid[static_cast<std::size_t>(lo - mag.begin())])
        << " GHz\n";
    out << "max_abs_r " << fmt(*hi) << " at " << fmt(grid[static_cast<std::size_t>(hi - mag.begin())])
        << " GHz\n";
    const auto bands = gain_bands(grid, mag);
    if (bands.empty())
        out << "gain_bands none\n";
    for (const auto& [a, b] : bands)
        out << "gain_band " << fmt(a) << " " << fmt(b) << " GHz\n";
    out << "wrote " << cfg.output.path << "\n";
    return ok;
}

int cmd_sweep2d(const Options& opt, std::ostream& out, std::ostream& err)
{
    const RunConfig cfg = load(opt);
    if (!cfg.y_axis)
        throw ConfigError("sweep.y_axis", "sweep2d needs a y axis");
    const GridSpec spec = cfg.grid_spec();
    spec.validate();
    const SweepGrid grid = run_grid(spec, opt.workers);
    io::write_grid(cfg.output.path, grid, cfg.output.format, cfg.output.include_complex,
                   io::timestamp_now());

    double hi = 0.0;
    for (complex r : grid.r)
        if (std::isfinite(std::abs(r)))
            hi = std::max(hi, std::abs(r));
    out << "grid " << grid.ny() << " x " << grid.nx() << " (" << axis_kind_name(spec.y.kind) << " x "
        << axis_kind_name(spec.x.kind) << ")\n";
    out << "max_abs_r " << fmt(hi) << "\n";
    out << "wrote " << cfg.output.path;
    if (cfg.output.format == OutputFormat::Csv)
        out << " and " << io::overlay_path(cfg.output.path).string();
    out << "\n";
    if (!grid.errors.empty()) {
        for (const GridPointError& e : grid.errors)
            err << "error at row " << e.iy << (e.ix >= 0 ? ", column " + std::to_string(e.ix) : "")
                << ": " << e.message << "\n";
        return numerical_failure;
    }
    return ok;
}

int cmd_calibrate(const Options& opt, std::ostream& out)
{
    const RunConfig cfg = load(opt);
    CalibrationScan scan = cfg.calibration;
    scan.n_phases = cfg.n_phases;
    const CalibrationResult c = calibrate(cfg.device, scan);
    io::write_calibration(cfg.output.path, c, cfg.output.format, io::timestamp_now());
    out << "rabi_star_mhz " << fmt(c.rabi_mhz) << "\n";
    out << "k_mhz_per_sqrt_w " << fmt(c.k) << "\n";
    out << "max_abs_r " << fmt(c.max_gain) << " at " << fmt(c.probe_ghz) << " GHz\n";
    out << "reference_dbm " << fmt(c.reference_dbm) << "\n";
    out << "wrote " << cfg.output.path << "\n";
    return ok;
}

int cmd_oracle_check(const Options& opt, std::ostream& out)
{
    const RunConfig cfg = load(opt);
    cfg.oracle.validate(cfg.device);
    const double omega_pump = cfg.pump.omega_pump_ghz.value_or(cfg.device.omega10_ghz());
    std::vector<io::OracleRow> rows;
    double worst = 0.0;
    int index = 0;
    for (const OraclePoint& p : cfg.oracle_points) {
        io::OracleRow row;
        row.index = index++;
        row.rabi_mhz = p.rabi_mhz;
        row.detuning_mhz = p.detuning_mhz;
        row.probe_ghz = omega_pump + units::ghz_from_mhz(p.detuning_mhz);
        row.r_response =
            phase_averaged_reflection(cfg.device, omega_pump, p.rabi_mhz, row.probe_ghz, cfg.n_phases);
        row.r_oracle = two_tone_reflection(cfg.device, omega_pump, p.rabi_mhz, row.probe_ghz, cfg.oracle);
        row.difference = std::abs(row.r_response - row.r_oracle);
        worst = std::max(worst, row.difference);
        out << "point " << row.index << " rabi " << fmt(p.rabi_mhz) << " MHz detuning "
            << fmt(p.detuning_mhz) << " MHz |diff| " << fmt(row.difference) << "\n";
        rows.push_back(row);
    }
    io::write_oracle_table(cfg.output.path, rows, cfg.output.format, io::timestamp_now());
    const bool pass = worst < cfg.oracle_tolerance;
    out << "max |diff| " << fmt(worst) << " tolerance " << fmt(cfg.oracle_tolerance) << " "
        << (pass ? "PASS" : "FAIL") << "\n";
    out << "wrote " << cfg.output.path << "\n";
    return pass ? ok : oracle_check_failure;
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"mollow: reflection spectra of a pumped transmon at the end of a waveguide"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", opt.config_path, "run configuration (JSON)")->required();
        sub->add_option("--workers", opt.workers, "worker threads for grid sweeps");
        sub->add_option("--out", opt.out, "output path (overrides output.path)");
        sub->add_option("--format", opt.format, "output format")->check(CLI::IsMember({"csv", "json"}));
        sub->add_option("--k", opt.k, "pump calibration constant in MHz per sqrt(W)");
    };
    CLI::App* spectrum_cmd = app.add_subcommand("spectrum", "one reflection spectrum");
    CLI::App* sweep_cmd = app.add_subcommand("sweep2d", "2D reflection map with overlays");
    CLI::App* calibrate_cmd = app.add_subcommand("calibrate", "fit pump amplitude and k to peak gain");
    CLI::App* oracle_cmd = app.add_subcommand("oracle-check", "compare response and time-domain oracle");
    for (CLI::App* sub : {spectrum_cmd, sweep_cmd, calibrate_cmd, oracle_cmd})
        add_common(sub);

    std::vector<std::string> rev(args.begin() + (args.empty() ? 0 : 1), args.end());
    std::reverse(rev.begin(), rev.end());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? ok : config_error;
    }

    try {
        if (spectrum_cmd->parsed())
            return cmd_spectrum(opt, out);
        if (sweep_cmd->parsed())
            return cmd_sweep2d(opt, out, err);
        if (calibrate_cmd->parsed())
            return cmd_calibrate(opt, out);
        return cmd_oracle_check(opt, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return config_error;
    } catch (const std::exception& e) {
        err << "numerical failure: " << e.what() << "\n";
        return numerical_failure;
    }
}

} // namespace mollow::cli
