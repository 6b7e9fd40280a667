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

#include "mollow/response.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "mollow/errors.hpp"
#include "mollow/kernels.hpp"
#include "mollow/units.hpp"

namespace mollow {

namespace {

using Branch = ReflectionEngine::Branch;

Branch make_branch(const Liouvillian& l, const DensityMatrix& rho_ss, const PumpFrameModel& model)
{
    const int n = l.dim();
    if (rho_ss.dim() != n || model.n_levels() != n)
        throw DimensionMismatch("susceptibility inputs disagree on the level count");

    Eigen::VectorXcd trace_row = Eigen::VectorXcd::Zero(l.size());
    for (int i = 0; i < n; ++i)
        trace_row(i + i * n) = 1.0;

    // Tr(source) = 0, so the solution is traceless and adding c |rho><Tr|
    // leaves it unchanged while lifting the zero eigenvalue to c.
    const double c = std::max(l.matrix().cwiseAbs().maxCoeff(), 1.0);
    const Operator& rho = rho_ss.matrix();

    Branch branch;
    branch.deflated = l.matrix() + c * vec(rho) * trace_row.transpose();
    branch.source = vec(model.sigma_p * rho - rho * model.sigma_p);
    branch.readout = vec(model.sigma_minus.transpose());
    return branch;
}

complex solve_branch(const Branch& branch, double delta)
{
    const Eigen::Index n2 = branch.deflated.rows();
    Eigen::MatrixXcd a = branch.deflated;
    a.diagonal().array() += complex(0, delta);
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(a);
    const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
    if (!(lu.rcond() > 1e-13) || !(pivots.minCoeff() > 1e-13 * pivots.maxCoeff()))
        throw ResolventSingular("resolvent singular at probe detuning " +
                                std::to_string(units::mhz_from_angular(delta)) + " MHz");
    const Eigen::VectorXcd x = lu.solve(branch.source);
    const complex tr = kernels::dotu({branch.readout.data(), static_cast<std::size_t>(n2)},
                                     {x.data(), static_cast<std::size_t>(n2)});
    return complex(0, 1) * tr;
}

double probe_detuning(double omega_p_ghz, double omega_pump_ghz)
{
    return units::angular_from_ghz(omega_p_ghz - omega_pump_ghz);
}

} // namespace

complex susceptibility(const Liouvillian& l, const DensityMatrix& rho_ss,
                       const PumpFrameModel& model, double omega_p_ghz)
{
    return solve_branch(make_branch(l, rho_ss, model),
                        probe_detuning(omega_p_ghz, model.omega_pump_ghz));
}

complex reflection_from_susceptibility(complex chi, double gamma1_mhz)
{
    return 1.0 + units::angular_from_mhz(gamma1_mhz) * chi;
}

ReflectionEngine::ReflectionEngine(const DeviceParams& params, double omega_pump_ghz,
                                   double rabi_mhz, int n_phases)
    : m_params(params), m_omega_pump(omega_pump_ghz), m_rabi(rabi_mhz)
{
    if (n_phases < 1)
        throw ConfigError("n_phases", "must be at least 1");
    m_branches.reserve(static_cast<std::size_t>(n_phases));
    for (int j = 0; j < n_phases; ++j) {
        const double phase = 2.0 * std::numbers::pi * j / n_phases;
        const PumpFrameModel model = build_pump_frame_model(params, omega_pump_ghz, rabi_mhz, phase);
        const Liouvillian l = build_liouvillian(model, params);
        m_branches.push_back(make_branch(l, steady_state(l), model));
    }
}

std::vector<complex> ReflectionEngine::phase_resolved(double omega_p_ghz) const
{
    const double delta = probe_detuning(omega_p_ghz, m_omega_pump);
    std::vector<complex> r;
    r.reserve(m_branches.size());
    for (const Branch& branch : m_branches)
        r.push_back(reflection_from_susceptibility(solve_branch(branch, delta), m_params.gamma1_mhz));
    return r;
}

complex ReflectionEngine::reflection(double omega_p_ghz) const
{
    // Shifted mean: identical branches average to exactly the branch value.
    const std::vector<complex> r = phase_resolved(omega_p_ghz);
    complex spread = 0.0;
    for (const complex& x : r)
        spread += x - r.front();
    return r.front() + spread / static_cast<double>(r.size());
}

complex phase_averaged_reflection(const DeviceParams& params, double omega_pump_ghz,
                                  double rabi_mhz, double omega_p_ghz, int m_phases)
{
    return ReflectionEngine(params, omega_pump_ghz, rabi_mhz, m_phases).reflection(omega_p_ghz);
}

ReflectionSpectrum spectrum(const DeviceParams& params, double omega_pump_ghz, double rabi_mhz,
                            std::span<const double> probe_grid_ghz, int m_phases)
{
    if (probe_grid_ghz.empty())
        throw ConfigError("probe", "grid is empty");
    for (std::size_t i = 1; i < probe_grid_ghz.size(); ++i)
        if (!(probe_grid_ghz[i] > probe_grid_ghz[i - 1]))
            throw ConfigError("probe", "grid must be strictly increasing");

    const ReflectionEngine engine(params, omega_pump_ghz, rabi_mhz, m_phases);
    ReflectionSpectrum out;
    out.probe_ghz.assign(probe_grid_ghz.begin(), probe_grid_ghz.end());
    out.r.reserve(probe_grid_ghz.size());
    for (double f : probe_grid_ghz)
        out.r.push_back(engine.reflection(f));
    out.omega_pump_ghz = omega_pump_ghz;
    out.rabi_mhz = rabi_mhz;
    out.n_phases = m_phases;
    out.device = params;
    return out;
}

} // namespace mollow
