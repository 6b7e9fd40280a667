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

#include "mollow/oracle.hpp"

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

#include <unsupported/Eigen/MatrixFunctions>

#include "mollow/errors.hpp"
#include "mollow/kernels.hpp"
#include "mollow/lindblad.hpp"
#include "mollow/units.hpp"

namespace mollow {

double OracleConfig::probe_rabi(const DeviceParams& params) const
{
    return probe_rabi_mhz.value_or(params.gamma_mhz() / 200.0);
}

void OracleConfig::validate(const DeviceParams& params) const
{
    const double probe = probe_rabi(params);
    if (!(probe > 0) || probe > params.gamma_mhz() / 50.0)
        throw ConfigError("probe_rabi_mhz", "must lie in (0, gamma/50]");
    if (!(settle_time >= 10.0))
        throw ConfigError("settle_time", "must be at least 10 (units of 1/gamma)");
    if (samples_per_period < 16)
        throw ConfigError("samples_per_period", "must be at least 16");
    if (sample_window < 1)
        throw ConfigError("sample_window", "must be at least one period");
}

complex two_level_mirror_reflection(double gamma1, double gamma, double detuning)
{
    return 1.0 - gamma1 / complex(gamma, -detuning);
}

namespace {

// Probe term -i[H_p, .] with
// H_p = -i (Omega_p/2) (Sigma_+ e^{i theta} e^{-i delta t} - h.c.).
Eigen::MatrixXcd probe_superoperator(const PumpFrameModel& model, double probe_rabi,
                                     double phase)
{
    const complex p = std::polar(1.0, phase);
    const Operator hp = complex(0, -probe_rabi / 2.0) *
                        (model.sigma_plus * p - model.sigma_minus * std::conj(p));
    return commutator_superoperator(hp).matrix();
}

complex expectation(const Eigen::VectorXcd& readout, const Eigen::VectorXcd& x)
{
    return kernels::dotu({readout.data(), static_cast<std::size_t>(readout.size())},
                         {x.data(), static_cast<std::size_t>(x.size())});
}

complex static_response(const PumpFrameModel& model, const Liouvillian& l0,
                        const DensityMatrix& rho0, double probe_rabi, double theta)
{
    const Eigen::VectorXcd readout = vec(model.sigma_minus.transpose());
    const complex base = expectation(readout, vec(rho0.matrix()));
    complex sum = 0.0;
    for (int j = 0; j < 4; ++j) {
        const double phase = theta + std::numbers::pi * j / 2.0;
        const Liouvillian l(l0.dim(), l0.matrix() + probe_superoperator(model, probe_rabi, phase));
        const complex shift = expectation(readout, vec(steady_state(l).matrix())) - base;
        sum += shift * std::polar(1.0, -phase);
    }
    return sum / 4.0;
}

} // namespace

complex demodulated_amplitude(const DeviceParams& params, double omega_pump_ghz, double rabi_mhz,
                              double omega_p_ghz, double probe_rabi_mhz, const OracleConfig& cfg)
{
    const PumpFrameModel model = build_pump_frame_model(params, omega_pump_ghz, rabi_mhz);
    const Liouvillian l0 = build_liouvillian(model, params);
    const DensityMatrix rho0 = steady_state(l0);
    const double probe_rabi = units::angular_from_mhz(probe_rabi_mhz);
    const double theta = cfg.probe_phase;

    const double delta = units::angular_from_ghz(omega_p_ghz - omega_pump_ghz);
    if (delta == 0.0)
        return static_response(model, l0, rho0, probe_rabi, theta);

    const int spp = cfg.samples_per_period;
    const double period = units::two_pi / std::abs(delta);
    const double h = period / spp;

    // The drive repeats every period, so one propagator per step index.
    std::vector<Eigen::MatrixXcd> steps;
    steps.reserve(static_cast<std::size_t>(spp));
    for (int k = 0; k < spp; ++k) {
        const double t_mid = (k + 0.5) * h;
        const Eigen::MatrixXcd gen =
            l0.matrix() + probe_superoperator(model, probe_rabi, theta - delta * t_mid);
        steps.push_back((gen * h).exp());
    }

    const Eigen::VectorXcd readout = vec(model.sigma_minus.transpose());
    Eigen::VectorXcd x = vec(rho0.matrix());
    Eigen::VectorXcd next(x.size());
    const auto step = [&](int k) {
        const Eigen::MatrixXcd& u = steps[static_cast<std::size_t>(k)];
        kernels::matvec({u.data(), static_cast<std::size_t>(u.size())},
                        {x.data(), static_cast<std::size_t>(x.size())},
                        {next.data(), static_cast<std::size_t>(next.size())});
        x.swap(next);
    };

    const double gamma = units::angular_from_mhz(params.gamma_mhz());
    const int settle_periods = std::max(1, static_cast<int>(std::ceil(cfg.settle_time / gamma / period)));
    for (int p = 0; p < settle_periods; ++p)
        for (int k = 0; k < spp; ++k)
            step(k);

    std::vector<complex> phasors(static_cast<std::size_t>(spp));
    for (int k = 0; k < spp; ++k)
        phasors[static_cast<std::size_t>(k)] = std::polar(1.0, delta * k * h);

    const auto window = [&] {
        complex acc = 0.0;
        for (int p = 0; p < cfg.sample_window; ++p) {
            for (int k = 0; k < spp; ++k) {
                acc += phasors[static_cast<std::size_t>(k)] * expectation(readout, x);
                step(k);
            }
        }
        return acc / static_cast<double>(spp * cfg.sample_window) * std::polar(1.0, -theta);
    };

    const complex first = window();
    const complex second = window();
    const double gamma1 = units::angular_from_mhz(params.gamma1_mhz);
    const double drift = gamma1 * std::abs(second - first) / probe_rabi;
    if (drift > cfg.drift_tolerance)
        throw ConvergenceFailure("demodulated response drifted by " + std::to_string(drift) +
                                 " between windows");
    return second;
}

complex oracle_calibration_constant()
{
    static const complex constant = [] {
        DeviceParams anchor;
        anchor.n_levels = 2;
        const OracleConfig cfg;
        const double omega10 = anchor.omega10_ghz();
        const double gamma_ghz = units::ghz_from_mhz(anchor.gamma_mhz());
        const double omega_p = omega10 + 2.0 * gamma_ghz;
        const double probe = cfg.probe_rabi(anchor);
        const complex a = demodulated_amplitude(anchor, omega10, 0.0, omega_p, probe, cfg);
        const double gamma1 = units::angular_from_mhz(anchor.gamma1_mhz);
        const complex exact = two_level_mirror_reflection(
            gamma1, units::angular_from_mhz(anchor.gamma_mhz()), units::angular_from_ghz(omega_p - omega10));
        return (exact - 1.0) * units::angular_from_mhz(probe) / (gamma1 * a);
    }();
    return constant;
}

complex two_tone_reflection(const DeviceParams& params, double omega_pump_ghz, double rabi_mhz,
                            double omega_p_ghz, const OracleConfig& cfg)
{
    cfg.validate(params);
    const complex c = oracle_calibration_constant();
    const double gamma1 = units::angular_from_mhz(params.gamma1_mhz);

    const auto reflect = [&](double probe_mhz) {
        const complex a = demodulated_amplitude(params, omega_pump_ghz, rabi_mhz, omega_p_ghz, probe_mhz, cfg);
        return 1.0 + c * gamma1 * a / units::angular_from_mhz(probe_mhz);
    };

    const double probe = cfg.probe_rabi(params);
    const complex r = reflect(probe);
    if (cfg.check_linearity) {
        const double change = std::abs(reflect(2.0 * probe) - r);
        if (change > cfg.linearity_tolerance)
            throw LinearityViolation("doubling the probe changed r by " + std::to_string(change));
    }
    return r;
}

std::vector<OraclePoint> oracle_sample_points()
{
    constexpr double fractions[] = {-1.5, -1.0, -0.5, 0.25, 0.5, 1.0, 1.5};
    std::vector<OraclePoint> points;
    for (double rabi : {50.0, 100.0, 200.0})
        for (double f : fractions)
            points.push_back({rabi, f * rabi});
    points.pop_back();
    return points;
}

} // namespace mollow
