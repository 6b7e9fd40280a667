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

#pragma once

#include <array>
#include <optional>
#include <span>
#include <utility>
#include <string>
#include <vector>

#include "mollow/model.hpp"
#include "mollow/operator.hpp"
#include "mollow/oracle.hpp"

namespace mollow {

inline constexpr const char* version_string = "0.3.1";

/// Omega/2pi = k sqrt(P) with P in watts, k in MHz per sqrt(W).
double dbm_to_rabi(double p_dbm, double k);

/// Inverse of dbm_to_rabi for k.
double k_from_rabi(double rabi_mhz, double p_dbm);

/// How the pump is specified. Exactly one of `rabi_mhz` and
/// (`power_dbm`, `k`) is set; an unset pump frequency tracks omega_10.
struct PumpSpec
{
    std::optional<double> omega_pump_ghz;
    std::optional<double> rabi_mhz;
    std::optional<double> power_dbm;
    std::optional<double> k;

    void validate() const;
    double resolve_rabi() const;
    double resolve_omega(const DeviceParams& params) const;
};

enum class AxisKind
{
    ProbeFreq,
    PumpPowerDbm,
    PumpRabi,
    PumpFreq,
    FluxRatio,
};

const char* axis_kind_name(AxisKind kind);
AxisKind parse_axis_kind(const std::string& name);

struct Axis
{
    AxisKind kind = AxisKind::ProbeFreq;
    double start = 0.0;
    double stop = 0.0;
    int points = 2;

    std::vector<double> values() const;
};

enum class Engine
{
    Response,
    Oracle,
};

struct GridSpec
{
    Axis x;
    Axis y;
    DeviceParams device;
    PumpSpec pump;
    int n_phases = 4;
    Engine engine = Engine::Response;
    OracleConfig oracle;

    void validate() const;
};

struct GridPointError
{
    int iy = 0;
    int ix = -1; ///< -1 when the whole row failed
    std::string message;
};

/// |r| (and complex r) on a y-major grid. Failed points hold NaN.
struct SweepGrid
{
    GridSpec spec;
    std::vector<double> x_values;
    std::vector<double> y_values;
    std::vector<complex> r; ///< index iy * nx + ix
    std::vector<GridPointError> errors;

    int nx() const { return static_cast<int>(x_values.size()); }
    int ny() const { return static_cast<int>(y_values.size()); }
    complex at(int iy, int ix) const { return r[static_cast<std::size_t>(iy * nx() + ix)]; }
    double abs_at(int iy, int ix) const { return std::abs(at(iy, ix)); }
};

/// Device and pump in effect on grid row `iy`.
struct RowContext
{
    DeviceParams device;
    double omega_pump_ghz = 0.0;
    double rabi_mhz = 0.0;
};

RowContext row_context(const GridSpec& spec, double y_value);

/// Evaluates every grid point. Rows are handed out to `workers` threads from
/// a shared counter; output ordering and values do not depend on the worker
/// count. Per-point failures are recorded, never thrown.
SweepGrid run_grid(const GridSpec& spec, int workers = 1);

/// Closed-form guide lines for a resonantly pumped atom.
struct Overlays
{
    double omega_pump_ghz = 0.0;
    double rabi_mhz = 0.0;
    std::array<double, 3> triplet_ghz{};          ///< w_pump - Omega, w_pump, w_pump + Omega
    std::array<double, 2> inner_boundaries_ghz{}; ///< w_pump -/+ sqrt(2 Gamma_1 gamma^3)/Omega
    std::array<double, 2> autler_townes_ghz{};    ///< w_21 -/+ Omega/2

    /// Frequency of the photon scattered in the four-photon process.
    double sideband(double omega_p_ghz) const { return 2.0 * omega_pump_ghz - omega_p_ghz; }

    /// True when the inner boundaries lie inside the triplet sidebands.
    bool gain_band_open() const;
};

/// sqrt(2 Gamma_1 gamma^3)/Omega in MHz.
double inner_boundary_offset_mhz(const DeviceParams& params, double rabi_mhz);

Overlays overlays_for(const DeviceParams& params, double omega_pump_ghz, double rabi_mhz);

/// A named polyline of (y, x) pairs drawn over a grid.
struct OverlaySeries
{
    std::string name;
    std::vector<std::pair<double, double>> points;
};

/// Guide lines for each row of a grid: triplet, inner gain boundaries and
/// Autler-Townes lines for pumped rows, transition curves for flux sweeps.
std::vector<OverlaySeries> overlay_series(const SweepGrid& grid);

/// Probe intervals where |r| exceeds `threshold`, with edges placed by
/// linear interpolation between grid points.
std::vector<std::pair<double, double>> gain_bands(std::span<const double> probe_ghz,
                                                  std::span<const double> abs_r,
                                                  double threshold = 1.0);

struct TransitionFrequencies
{
    double omega10_ghz = 0.0;
    double omega21_ghz = 0.0;
};

TransitionFrequencies transitions_at_flux(const DeviceParams& params, double flux_ratio);

/// Largest |r| strictly between the triplet sidebands for one pump setting.
struct GainPeak
{
    double max_abs_r = 0.0;
    double probe_ghz = 0.0;
};

GainPeak inter_triplet_gain(const DeviceParams& params, double omega_pump_ghz, double rabi_mhz,
                            double probe_step_mhz = 1.0, int n_phases = 4);

struct CalibrationScan
{
    double rabi_start_mhz = 10.0;
    double rabi_stop_mhz = 400.0;
    int rabi_points = 40;
    double probe_step_mhz = 1.0;
    double reference_dbm = -114.0;
    int n_phases = 4;
};

struct CalibrationResult
{
    double rabi_mhz = 0.0;  ///< Omega* maximising inter-triplet gain
    double k = 0.0;         ///< MHz per sqrt(W), so that Omega* sits at the reference power
    double max_gain = 0.0;  ///< |r| at the optimum
    double probe_ghz = 0.0;
    double reference_dbm = 0.0;
};

/// Scans Omega with the pump on omega_10, refines the best point by golden
/// section, and solves k from Omega* = k sqrt(P_ref).
CalibrationResult calibrate(const DeviceParams& params, const CalibrationScan& scan = {});

} // namespace mollow
