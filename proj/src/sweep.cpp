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

#include "mollow/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <limits>
#include <thread>

#include "mollow/errors.hpp"
#include "mollow/response.hpp"
#include "mollow/units.hpp"

namespace mollow {

double dbm_to_rabi(double p_dbm, double k)
{
    if (!(k > 0))
        throw ConfigError("k", "must be positive");
    const double watts = std::pow(10.0, (p_dbm - 30.0) / 10.0);
    return k * std::sqrt(watts);
}

double k_from_rabi(double rabi_mhz, double p_dbm)
{
    return rabi_mhz / std::sqrt(std::pow(10.0, (p_dbm - 30.0) / 10.0));
}

void PumpSpec::validate() const
{
    const bool has_rabi = rabi_mhz.has_value();
    const bool has_power = power_dbm.has_value() || k.has_value();
    if (has_rabi == has_power)
        throw ConfigError("pump", "rabi_mhz and (power_dbm, k) are mutually exclusive; specify exactly one");
    if (has_power && !(power_dbm && k))
        throw ConfigError("pump", "power_dbm and k must be given together");
    if (has_rabi && !(std::isfinite(*rabi_mhz) && *rabi_mhz >= 0))
        throw ConfigError("pump.rabi_mhz", "must be non-negative");
    if (k && !(*k > 0))
        throw ConfigError("pump.k", "must be positive");
    if (omega_pump_ghz && !(*omega_pump_ghz > 0))
        throw ConfigError("pump.omega_pump_ghz", "must be positive");
}

double PumpSpec::resolve_rabi() const
{
    if (rabi_mhz)
        return *rabi_mhz;
    if (power_dbm && k)
        return dbm_to_rabi(*power_dbm, *k);
    throw ConfigError("pump", "no pump amplitude given");
}

double PumpSpec::resolve_omega(const DeviceParams& params) const
{
    return omega_pump_ghz ? *omega_pump_ghz : params.omega10_ghz();
}

const char* axis_kind_name(AxisKind kind)
{
    switch (kind) {
    case AxisKind::ProbeFreq:
        return "probe_freq";
    case AxisKind::PumpPowerDbm:
        return "pump_power_dbm";
    case AxisKind::PumpRabi:
        return "pump_rabi";
    case AxisKind::PumpFreq:
        return "pump_freq";
    case AxisKind::FluxRatio:
        return "flux_ratio";
    }
    return "unknown";
}

AxisKind parse_axis_kind(const std::string& name)
{
    for (AxisKind kind : {AxisKind::ProbeFreq, AxisKind::PumpPowerDbm, AxisKind::PumpRabi,
                          AxisKind::PumpFreq, AxisKind::FluxRatio})
        if (name == axis_kind_name(kind))
            return kind;
    throw ConfigError("axis.kind", "unknown axis kind '" + name + "'");
}

std::vector<double> Axis::values() const
{
    if (points == 1)
        return {start};
    std::vector<double> v(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        v[static_cast<std::size_t>(i)] = start + (stop - start) * i / (points - 1);
    return v;
}

void GridSpec::validate() const
{
    if (x.kind != AxisKind::ProbeFreq)
        throw ConfigError("x_axis.kind", "x axis must be probe_freq");
    if (y.kind == AxisKind::ProbeFreq)
        throw ConfigError("y_axis.kind", "y axis cannot be probe_freq");
    if (x.points < 2 || y.points < 2)
        throw ConfigError("axis.points", "every axis needs at least 2 points");
    if (!(x.stop > x.start))
        throw ConfigError("x_axis", "probe range must be increasing");
    if (!std::isfinite(y.start) || !std::isfinite(y.stop))
        throw ConfigError("y_axis", "range must be finite");
    if (n_phases < 1)
        throw ConfigError("engine.n_phases", "must be at least 1");
    device.validate();
    switch (y.kind) {
    case AxisKind::PumpPowerDbm:
        if (!(pump.k && *pump.k > 0))
            throw ConfigError("pump.k", "a pump power axis needs k");
        break;
    case AxisKind::PumpRabi:
        break;
    default:
        pump.validate();
    }
    if (engine == Engine::Oracle)
        oracle.validate(device);
}

RowContext row_context(const GridSpec& spec, double y_value)
{
    RowContext ctx{spec.device, 0.0, 0.0};
    switch (spec.y.kind) {
    case AxisKind::FluxRatio:
        ctx.device.flux_ratio = y_value;
        ctx.rabi_mhz = spec.pump.resolve_rabi();
        break;
    case AxisKind::PumpPowerDbm:
        ctx.rabi_mhz = dbm_to_rabi(y_value, *spec.pump.k);
        break;
    case AxisKind::PumpRabi:
        ctx.rabi_mhz = y_value;
        break;
    case AxisKind::PumpFreq:
        ctx.rabi_mhz = spec.pump.resolve_rabi();
        break;
    case AxisKind::ProbeFreq:
        throw ConfigError("y_axis.kind", "y axis cannot be probe_freq");
    }
    ctx.omega_pump_ghz = spec.y.kind == AxisKind::PumpFreq ? y_value
                                                           : spec.pump.resolve_omega(ctx.device);
    return ctx;
}

namespace {

constexpr double nan = std::numeric_limits<double>::quiet_NaN();

void evaluate_row(const GridSpec& spec, int iy, double y, const std::vector<double>& xs,
                  std::span<complex> out, std::vector<GridPointError>& errors)
{
    std::optional<RowContext> ctx;
    std::optional<ReflectionEngine> engine;
    try {
        ctx = row_context(spec, y);
        if (spec.engine == Engine::Response)
            engine.emplace(ctx->device, ctx->omega_pump_ghz, ctx->rabi_mhz, spec.n_phases);
    } catch (const std::exception& e) {
        std::fill(out.begin(), out.end(), complex(nan, nan));
        errors.push_back({iy, -1, e.what()});
        return;
    }
    for (std::size_t ix = 0; ix < xs.size(); ++ix) {
        try {
            out[ix] = engine ? engine->reflection(xs[ix])
                             : two_tone_reflection(ctx->device, ctx->omega_pump_ghz,
                                                   ctx->rabi_mhz, xs[ix], spec.oracle);
        } catch (const std::exception& e) {
            out[ix] = complex(nan, nan);
            errors.push_back({iy, static_cast<int>(ix), e.what()});
        }
    }
}

} // namespace

SweepGrid run_grid(const GridSpec& spec, int workers)
{
    spec.validate();
    SweepGrid grid;
    grid.spec = spec;
    grid.x_values = spec.x.values();
    grid.y_values = spec.y.values();
    const std::size_t nx = grid.x_values.size();
    const int ny = grid.ny();
    grid.r.assign(nx * static_cast<std::size_t>(ny), complex(nan, nan));

    std::vector<std::vector<GridPointError>> row_errors(static_cast<std::size_t>(ny));
    std::atomic<int> next{0};
    const auto work = [&] {
        for (int iy = next++; iy < ny; iy = next++) {
            std::span<complex> row(grid.r.data() + static_cast<std::size_t>(iy) * nx, nx);
            evaluate_row(spec, iy, grid.y_values[static_cast<std::size_t>(iy)], grid.x_values, row,
                         row_errors[static_cast<std::size_t>(iy)]);
        }
    };

    const int n_threads = std::clamp(workers, 1, ny);
    if (n_threads == 1) {
        work();
    } else {
        std::vector<std::jthread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int t = 0; t < n_threads; ++t)
            pool.emplace_back(work);
    }

    for (auto& errs : row_errors)
        grid.errors.insert(grid.errors.end(), errs.begin(), errs.end());
    return grid;
}

double inner_boundary_offset_mhz(const DeviceParams& params, double rabi_mhz)
{
    const double g = params.gamma_mhz();
    return std::sqrt(2.0 * params.gamma1_mhz * g * g * g) / rabi_mhz;
}

bool Overlays::gain_band_open() const
{
    return inner_boundaries_ghz[1] - omega_pump_ghz < triplet_ghz[2] - omega_pump_ghz;
}

Overlays overlays_for(const DeviceParams& params, double omega_pump_ghz, double rabi_mhz)
{
    if (!(rabi_mhz > 0))
        throw ConfigError("rabi_mhz", "overlays need a positive pump amplitude");
    const double omega = units::ghz_from_mhz(rabi_mhz);
    const double inner = units::ghz_from_mhz(inner_boundary_offset_mhz(params, rabi_mhz));
    const double omega21 = params.omega21_ghz();

    Overlays o;
    o.omega_pump_ghz = omega_pump_ghz;
    o.rabi_mhz = rabi_mhz;
    o.triplet_ghz = {omega_pump_ghz - omega, omega_pump_ghz, omega_pump_ghz + omega};
    o.inner_boundaries_ghz = {omega_pump_ghz - inner, omega_pump_ghz + inner};
    o.autler_townes_ghz = {omega21 - omega / 2.0, omega21 + omega / 2.0};
    return o;
}

TransitionFrequencies transitions_at_flux(const DeviceParams& params, double flux_ratio)
{
    DeviceParams at = params;
    at.flux_ratio = flux_ratio;
    return {at.omega10_ghz(), at.omega21_ghz()};
}

namespace {

// Maximum of a unimodal function on [a, b].
std::pair<double, double> golden_max(const std::function<double(double)>& f, double a, double b,
                                     int iterations)
{
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int i = 0; i < iterations; ++i) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    return fc > fd ? std::pair{c, fc} : std::pair{d, fd};
}

} // namespace

GainPeak inter_triplet_gain(const DeviceParams& params, double omega_pump_ghz, double rabi_mhz,
                            double probe_step_mhz, int n_phases)
{
    const ReflectionEngine engine(params, omega_pump_ghz, rabi_mhz, n_phases);
    const double step = units::ghz_from_mhz(probe_step_mhz);
    const double half = units::ghz_from_mhz(rabi_mhz);
    const int n = std::max(1, static_cast<int>(std::floor(2.0 * half / step)) - 1);

    GainPeak best{0.0, omega_pump_ghz};
    const double lo = omega_pump_ghz - half;
    for (int i = 1; i <= n; ++i) {
        const double f = lo + i * step;
        if (f >= omega_pump_ghz + half)
            break;
        const double a = std::abs(engine.reflection(f));
        if (a > best.max_abs_r)
            best = {a, f};
    }
    const auto objective = [&](double f) { return std::abs(engine.reflection(f)); };
    const double a = std::max(lo, best.probe_ghz - step);
    const double b = std::min(omega_pump_ghz + half, best.probe_ghz + step);
    const auto [f_opt, v_opt] = golden_max(objective, a, b, 30);
    if (v_opt > best.max_abs_r)
        best = {v_opt, f_opt};
    return best;
}

CalibrationResult calibrate(const DeviceParams& params, const CalibrationScan& scan)
{
    params.validate();
    if (scan.rabi_points < 2 || !(scan.rabi_stop_mhz > scan.rabi_start_mhz) ||
        !(scan.rabi_start_mhz > 0))
        throw ConfigError("calibrate", "rabi scan must be an increasing positive range with >= 2 points");
    if (!(scan.probe_step_mhz > 0))
        throw ConfigError("calibrate.probe_step_mhz", "must be positive");

    const double omega_pump = params.omega10_ghz();
    const auto gain = [&](double rabi) {
        return inter_triplet_gain(params, omega_pump, rabi, scan.probe_step_mhz, scan.n_phases);
    };

    const Axis rabi_axis{AxisKind::PumpRabi, scan.rabi_start_mhz, scan.rabi_stop_mhz, scan.rabi_points};
    const std::vector<double> rabis = rabi_axis.values();
    std::size_t best = 0;
    double best_gain = -1.0;
    for (std::size_t i = 0; i < rabis.size(); ++i) {
        const double g = gain(rabis[i]).max_abs_r;
        if (g > best_gain) {
            best_gain = g;
            best = i;
        }
    }
    const double a = rabis[best == 0 ? 0 : best - 1];
    const double b = rabis[std::min(best + 1, rabis.size() - 1)];
    auto [rabi_opt, gain_opt] =
        golden_max([&](double rabi) { return gain(rabi).max_abs_r; }, a, b, 25);
    if (gain_opt < best_gain) {
        rabi_opt = rabis[best];
        gain_opt = best_gain;
    }

    CalibrationResult result;
    result.rabi_mhz = rabi_opt;
    const GainPeak peak = gain(rabi_opt);
    result.max_gain = peak.max_abs_r;
    result.probe_ghz = peak.probe_ghz;
    result.reference_dbm = scan.reference_dbm;
    result.k = k_from_rabi(rabi_opt, scan.reference_dbm);
    return result;
}

std::vector<OverlaySeries> overlay_series(const SweepGrid& grid)
{
    static constexpr const char* names[] = {"triplet_lower", "triplet_center", "triplet_upper",
                                            "inner_lower",   "inner_upper",    "autler_townes_lower",
                                            "autler_townes_upper"};
    std::vector<OverlaySeries> series;
    for (const char* name : names)
        series.push_back({name, {}});
    const bool flux = grid.spec.y.kind == AxisKind::FluxRatio;
    if (flux) {
        series.push_back({"omega10", {}});
        series.push_back({"omega21", {}});
    }

    for (double y : grid.y_values) {
        RowContext ctx;
        try {
            ctx = row_context(grid.spec, y);
            if (flux) {
                const TransitionFrequencies t = transitions_at_flux(ctx.device, y);
                series[7].points.emplace_back(y, t.omega10_ghz);
                series[8].points.emplace_back(y, t.omega21_ghz);
            }
        } catch (const Error&) {
            continue;
        }
        if (!(ctx.rabi_mhz > 0))
            continue;
        const Overlays o = overlays_for(ctx.device, ctx.omega_pump_ghz, ctx.rabi_mhz);
        const double xs[] = {o.triplet_ghz[0],          o.triplet_ghz[1],          o.triplet_ghz[2],
                             o.inner_boundaries_ghz[0], o.inner_boundaries_ghz[1], o.autler_townes_ghz[0],
                             o.autler_townes_ghz[1]};
        for (std::size_t i = 0; i < 7; ++i)
            series[i].points.emplace_back(y, xs[i]);
    }
    return series;
}

std::vector<std::pair<double, double>> gain_bands(std::span<const double> probe_ghz,
                                                  std::span<const double> abs_r, double threshold)
{
    if (probe_ghz.size() != abs_r.size())
        throw std::invalid_argument("gain_bands: length mismatch");
    const auto crossing = [&](std::size_t i) {
        const double t = (threshold - abs_r[i - 1]) / (abs_r[i] - abs_r[i - 1]);
        return probe_ghz[i - 1] + t * (probe_ghz[i] - probe_ghz[i - 1]);
    };
    std::vector<std::pair<double, double>> bands;
    std::optional<double> open;
    for (std::size_t i = 0; i < abs_r.size(); ++i) {
        const bool above = abs_r[i] > threshold;
        if (above && !open)
            open = i == 0 ? probe_ghz[0] : crossing(i);
        else if (!above && open) {
            bands.emplace_back(*open, crossing(i));
            open.reset();
        }
    }
    if (open)
        bands.emplace_back(*open, probe_ghz.back());
    return bands;
}

} // namespace mollow
