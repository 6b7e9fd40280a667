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

#include <span>
#include <vector>

#include "mollow/lindblad.hpp"
#include "mollow/model.hpp"

namespace mollow {

/// Kubo susceptibility chi(omega_p) of the driven steady state, in ns.
///
/// Evaluated through the resolvent of L at the probe detuning
/// delta = 2pi (omega_p - omega_pump):
///   chi = i Tr{ Sigma_- (L + i delta)^{-1} [Sigma_p, rho_ss] }.
/// The overall sign is the one for which the undriven two-level atom gives
/// r = 1 - Gamma_1 / (gamma - i Delta). The stationary mode is deflated with
/// the trace functional, so delta = 0 is handled exactly.
complex susceptibility(const Liouvillian& l, const DensityMatrix& rho_ss,
                       const PumpFrameModel& model, double omega_p_ghz);

/// r = 1 + Gamma_1 chi with Gamma_1 in rad/ns.
complex reflection_from_susceptibility(complex chi, double gamma1_mhz);

/// Precomputed per-phase generators and steady states for one pump setting,
/// so that many probe frequencies cost one linear solve each per phase.
class ReflectionEngine
{
public:
    ReflectionEngine(const DeviceParams& params, double omega_pump_ghz, double rabi_mhz,
                     int n_phases = 4);

    /// Pump-phase averaged reflection coefficient.
    complex reflection(double omega_p_ghz) const;

    /// r_j for each pump phase 2 pi j / M, before averaging.
    std::vector<complex> phase_resolved(double omega_p_ghz) const;

    const DeviceParams& device() const { return m_params; }
    double omega_pump_ghz() const { return m_omega_pump; }
    double rabi_mhz() const { return m_rabi; }
    int n_phases() const { return static_cast<int>(m_branches.size()); }

    struct Branch
    {
        Eigen::MatrixXcd deflated; ///< L + c vec(rho_ss) vec(I)^T
        Eigen::VectorXcd source;   ///< vec([Sigma_p, rho_ss])
        Eigen::VectorXcd readout;  ///< vec(Sigma_-^T)
    };

private:
    DeviceParams m_params;
    double m_omega_pump;
    double m_rabi;
    std::vector<Branch> m_branches;
};

/// Builds the model at pump phases 2 pi j / M and averages r_j.
complex phase_averaged_reflection(const DeviceParams& params, double omega_pump_ghz,
                                  double rabi_mhz, double omega_p_ghz, int m_phases = 4);

struct ReflectionSpectrum
{
    std::vector<double> probe_ghz;
    std::vector<complex> r;
    double omega_pump_ghz = 0.0;
    double rabi_mhz = 0.0;
    int n_phases = 0;
    DeviceParams device;
};

/// Phase-averaged r over an increasing probe grid.
ReflectionSpectrum spectrum(const DeviceParams& params, double omega_pump_ghz, double rabi_mhz,
                            std::span<const double> probe_grid_ghz, int m_phases = 4);

} // namespace mollow
