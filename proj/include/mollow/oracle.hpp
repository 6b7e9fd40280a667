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

#include <optional>
#include <vector>

#include "mollow/model.hpp"
#include "mollow/operator.hpp"

namespace mollow {

/// Settings for the explicit two-tone time evolution.
struct OracleConfig
{
    /// Weak probe Rabi frequency (cyclic MHz). Defaults to gamma/200.
    std::optional<double> probe_rabi_mhz;
    /// Evolution before the first demodulation window, in units of 1/gamma.
    double settle_time = 10.0;
    /// Demodulation window length in probe periods.
    int sample_window = 1;
    /// Piecewise-constant exponential steps per probe period.
    int samples_per_period = 1024;
    /// Probe quadrature relative to the pump, radians.
    double probe_phase = 0.0;
    /// Largest allowed change of the demodulated response between the two
    /// final windows, measured as Gamma_1 |a_2 - a_1| / Omega_p.
    double drift_tolerance = 1e-4;
    /// Largest allowed |r(2 Omega_p) - r(Omega_p)| when linearity is checked.
    double linearity_tolerance = 1e-3;
    bool check_linearity = false;

    double probe_rabi(const DeviceParams& params) const;

    /// Throws ConfigError: probe above gamma/50, settle_time < 10,
    /// samples_per_period < 16, sample_window < 1.
    void validate(const DeviceParams& params) const;
};

/// Analytic reflection of an undriven two-level atom at a mirror,
/// r = 1 - Gamma_1 / (gamma - i Delta). All arguments share one angular unit.
complex two_level_mirror_reflection(double gamma1, double gamma, double detuning);

/// Complex amplitude of <Sigma_-(t)> oscillating as e^{-i delta t} under an
/// explicit probe of Rabi frequency `probe_rabi_mhz`, referenced to the
/// probe quadrature. For omega_p == omega_pump the static response is
/// extracted from steady states at four probe quadratures instead.
complex demodulated_amplitude(const DeviceParams& params, double omega_pump_ghz, double rabi_mhz,
                              double omega_p_ghz, double probe_rabi_mhz,
                              const OracleConfig& cfg = {});

/// Input-output constant C in r = 1 + C Gamma_1 a / Omega_p. Fixed once from
/// the undriven two-level atom (device defaults, N = 2, delta = 2 gamma)
/// against the analytic mirror response and cached for the process.
complex oracle_calibration_constant();

/// A pump amplitude and probe detuning (probe minus pump) for cross-checks.
struct OraclePoint
{
    double rabi_mhz = 0.0;
    double detuning_mhz = 0.0;
};

/// Twenty points spanning Omega in {50, 100, 200} MHz and detunings up to
/// 1.5 Omega on both sides of the pump.
std::vector<OraclePoint> oracle_sample_points();

/// Reflection coefficient from the time-domain two-tone simulation.
complex two_tone_reflection(const DeviceParams& params, double omega_pump_ghz, double rabi_mhz,
                            double omega_p_ghz, const OracleConfig& cfg = {});

} // namespace mollow
