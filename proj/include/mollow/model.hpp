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

#include "mollow/operator.hpp"

namespace mollow {

/// Static description of a flux-tunable transmon terminating the waveguide.
/// Energies in cyclic GHz (E/h), rates in cyclic MHz (Gamma/2pi).
/// Defaults are the measured device.
struct DeviceParams
{
    double e_j_max_ghz = 7.97;
    double e_c_ghz = 0.39;
    int n_levels = 5;
    double gamma1_mhz = 45.0;
    double gamma_phi_mhz = 2.7;
    double flux_ratio = 0.0;
    /// omega_21 - omega_10; -E_C when unset.
    std::optional<double> anharmonicity_ghz;

    static constexpr int min_levels = 2;
    static constexpr int max_levels = 12;
    static constexpr double min_ej_over_ec = 10.0;

    /// Throws ConfigError on out-of-range fields and TransmonRegimeError when
    /// E_J/E_C at zero flux is below the transmon threshold.
    void validate() const;

    /// Total decoherence rate gamma = Gamma_1/2 + Gamma_phi (cyclic MHz).
    double gamma_mhz() const { return gamma1_mhz / 2.0 + gamma_phi_mhz; }
    double ej_ghz() const;
    double anharmonicity() const;
    double omega10_ghz() const;
    double omega21_ghz() const { return omega10_ghz() + anharmonicity(); }
};

/// E_J(Phi) = E_J |cos(pi Phi/Phi_0)|.
double ej_of_flux(double e_j_max_ghz, double flux_ratio);

/// Asymptotic transmon 0-1 frequency sqrt(8 E_J E_C) - E_C. Throws
/// TransmonRegimeError if e_j/e_c < 10.
double omega10(double e_j_ghz, double e_c_ghz);

/// Rotating-frame level energies (rad/ns) of a Duffing ladder:
/// Delta_m = 2pi [m (omega10 - omega_pump) + alpha m(m-1)/2].
std::vector<double> ladder(double omega10_ghz, double alpha_ghz, int n_levels,
                           double omega_pump_ghz);

/// sum_m sqrt(m) |m-1><m|.
Operator lowering_operator(int n_levels);

/// sum_m m |m><m|.
Operator number_operator(int n_levels);

/// Transmon in the frame rotating at the pump frequency.
struct PumpFrameModel
{
    std::vector<double> detunings; ///< Delta_m, rad/ns; detunings[0] == 0
    Operator sigma_minus;
    Operator sigma_plus;
    Operator sigma_p;              ///< -i (Sigma_+ - Sigma_-), Hermitian
    double omega_pump_ghz = 0.0;
    double rabi_mhz = 0.0;         ///< Omega_pump / 2pi
    double pump_phase = 0.0;       ///< radians

    int n_levels() const { return static_cast<int>(detunings.size()); }
};

PumpFrameModel build_pump_frame_model(const DeviceParams& params,
                                      double omega_pump_ghz, double rabi_mhz,
                                      double phase = 0.0);

} // namespace mollow
