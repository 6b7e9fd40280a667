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

#include "mollow/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mollow/errors.hpp"
#include "mollow/units.hpp"

namespace mollow {

namespace {

void require(bool ok, const char* field, const std::string& message)
{
    if (!ok)
        throw ConfigError(field, message);
}

} // namespace

void DeviceParams::validate() const
{
    require(std::isfinite(e_j_max_ghz) && e_j_max_ghz > 0, "e_j_max_ghz", "must be positive");
    require(std::isfinite(e_c_ghz) && e_c_ghz > 0, "e_c_ghz", "must be positive");
    require(n_levels >= min_levels && n_levels <= max_levels, "n_levels",
            "must lie in [2, 12]");
    require(std::isfinite(gamma1_mhz) && gamma1_mhz > 0, "gamma1_mhz", "must be positive");
    require(std::isfinite(gamma_phi_mhz) && gamma_phi_mhz >= 0, "gamma_phi_mhz",
            "must be non-negative");
    require(std::isfinite(flux_ratio), "flux_ratio", "must be finite");
    if (anharmonicity_ghz)
        require(std::isfinite(*anharmonicity_ghz), "anharmonicity_ghz", "must be finite");
    if (e_j_max_ghz / e_c_ghz < min_ej_over_ec)
        throw TransmonRegimeError("E_J/E_C = " + std::to_string(e_j_max_ghz / e_c_ghz) +
                                  " is below the transmon threshold of 10");
}

double DeviceParams::ej_ghz() const { return ej_of_flux(e_j_max_ghz, flux_ratio); }

double DeviceParams::anharmonicity() const { return anharmonicity_ghz.value_or(-e_c_ghz); }

double DeviceParams::omega10_ghz() const { return omega10(ej_ghz(), e_c_ghz); }

double ej_of_flux(double e_j_max_ghz, double flux_ratio)
{
    return e_j_max_ghz * std::abs(std::cos(std::numbers::pi * flux_ratio));
}

double omega10(double e_j_ghz, double e_c_ghz)
{
    if (!(e_j_ghz / e_c_ghz >= DeviceParams::min_ej_over_ec))
        throw TransmonRegimeError("E_J/E_C = " + std::to_string(e_j_ghz / e_c_ghz) +
                                  " is below the transmon threshold of 10");
    return std::sqrt(8.0 * e_j_ghz * e_c_ghz) - e_c_ghz;
}

std::vector<double> ladder(double omega10_ghz, double alpha_ghz, int n_levels,
                           double omega_pump_ghz)
{
    std::vector<double> detunings(static_cast<std::size_t>(n_levels));
    for (int m = 0; m < n_levels; ++m) {
        const double cyclic = m * (omega10_ghz - omega_pump_ghz) + alpha_ghz * m * (m - 1) / 2.0;
        detunings[static_cast<std::size_t>(m)] = units::angular_from_ghz(cyclic);
    }
    return detunings;
}

Operator lowering_operator(int n_levels)
{
    Operator op = Operator::Zero(n_levels, n_levels);
    for (int m = 1; m < n_levels; ++m)
        op(m - 1, m) = std::sqrt(static_cast<double>(m));
    return op;
}

Operator number_operator(int n_levels)
{
    Operator op = Operator::Zero(n_levels, n_levels);
    for (int m = 0; m < n_levels; ++m)
        op(m, m) = static_cast<double>(m);
    return op;
}

PumpFrameModel build_pump_frame_model(const DeviceParams& params, double omega_pump_ghz,
                                      double rabi_mhz, double phase)
{
    params.validate();
    if (!std::isfinite(omega_pump_ghz) || omega_pump_ghz <= 0)
        throw ConfigError("omega_pump_ghz", "must be positive");
    if (!std::isfinite(rabi_mhz) || rabi_mhz < 0)
        throw ConfigError("rabi_mhz", "must be non-negative");

    PumpFrameModel model;
    model.detunings =
        ladder(params.omega10_ghz(), params.anharmonicity(), params.n_levels, omega_pump_ghz);
    model.sigma_minus = lowering_operator(params.n_levels);
    model.sigma_plus = model.sigma_minus.adjoint();
    model.sigma_p = complex(0, -1) * (model.sigma_plus - model.sigma_minus);
    model.omega_pump_ghz = omega_pump_ghz;
    model.rabi_mhz = rabi_mhz;
    model.pump_phase = phase;
    return model;
}

} // namespace mollow
