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

// Acceptance suite. Each criterion prints one PASS/FAIL line with the
// measured quantities and the wall time against its budget. Pass criterion
// ids as arguments to run a subset; the exit status is non-zero if any
// selected criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <Eigen/Eigenvalues>

#include "mollow/lindblad.hpp"
#include "mollow/oracle.hpp"
#include "mollow/response.hpp"
#include "mollow/sweep.hpp"
#include "mollow/units.hpp"
#include "reference.hpp"

using namespace mollow;
namespace ts = testing_support;

namespace {

struct Outcome
{
    bool pass = false;
    std::string detail;
};

struct Criterion
{
    int id;
    const char* title;
    double budget_s;
    std::function<Outcome()> run;
};

std::string num(double v, int digits = 6)
{
    std::ostringstream s;
    s.precision(digits);
    s << v;
    return s.str();
}

DeviceParams table_i(int n_levels = 5, double gamma_phi = 2.7)
{
    DeviceParams p;
    p.n_levels = n_levels;
    p.gamma_phi_mhz = gamma_phi;
    return p;
}

std::vector<double> magnitudes(const std::vector<complex>& r)
{
    std::vector<double> out(r.size());
    std::transform(r.begin(), r.end(), out.begin(), [](complex x) { return std::abs(x); });
    return out;
}

int worker_count()
{
    return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

// Golden-section maximum of f on [a, b].
double golden_max(const std::function<double(double)>& f, double a, double b, double* arg)
{
    const double g = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    for (int i = 0; i < 60; ++i) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - g * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + g * (b - a);
            fd = f(d);
        }
    }
    *arg = 0.5 * (a + b);
    return f(*arg);
}

Outcome analytic_limit()
{
    const DeviceParams p = table_i(2);
    const double w10 = p.omega10_ghz();
    const double gamma = p.gamma_mhz();
    const ReflectionEngine engine(p, w10, 0.0);
    double worst = 0.0;
    for (int i = 0; i <= 200; ++i) {
        const double det = -10.0 * gamma + 20.0 * gamma * i / 200.0;
        const complex r = engine.reflection(w10 + units::ghz_from_mhz(det));
        const complex ref = ts::mirror_reflection(ts::ang_mhz(p.gamma1_mhz), ts::ang_mhz(gamma), ts::ang_mhz(det));
        worst = std::max(worst, std::abs(r - ref));
    }
    const complex r0 = engine.reflection(w10);
    const double exact = 1.0 - p.gamma1_mhz / gamma;
    const bool resonance_ok = std::abs(r0 - exact) < 1e-6 && std::abs(r0.imag()) < 1e-6 &&
                              std::round(r0.real() * 1000.0) / 1000.0 == -0.786;

    const DeviceParams q = table_i(2, 0.0);
    const complex r_full = phase_averaged_reflection(q, q.omega10_ghz(), 0.0, q.omega10_ghz());
    const double full_dev = std::abs(r_full + 1.0);

    return {worst < 1e-8 && resonance_ok && full_dev < 1e-10,
            "max |r - analytic| = " + num(worst, 3) + " over 201 points; r(0) = " + num(r0.real(), 9) +
                "; r(0) without dephasing + 1 = " + num(full_dev, 3)};
}

Outcome peak_gain()
{
    const DeviceParams p = table_i();
    CalibrationScan scan;
    scan.rabi_start_mhz = 10.0;
    scan.rabi_stop_mhz = 400.0;
    scan.rabi_points = 40;
    scan.probe_step_mhz = 1.0;
    const CalibrationResult c = calibrate(p, scan);
    return {c.max_gain >= 1.05 && c.max_gain <= 1.09,
            "max |r| = " + num(c.max_gain) + " at rabi " + num(c.rabi_mhz, 5) + " MHz, probe " +
                num(c.probe_ghz, 7) + " GHz (target [1.05, 1.09])"};
}

Outcome null_gain()
{
    const DeviceParams p = table_i(2);
    const double w = p.omega10_ghz();
    const ReflectionEngine engine(p, w, 200.0);
    const double up = std::abs(engine.reflection(w + 0.2));
    const double down = std::abs(engine.reflection(w - 0.2));
    return {std::abs(up - 1.0) < 0.01 && std::abs(down - 1.0) < 0.01,
            "|r(pump + rabi)| = " + num(up) + ", |r(pump - rabi)| = " + num(down)};
}

struct TwoLevelScan
{
    std::vector<double> probe;
    std::vector<double> mag;
    double pump = 0.0;
    double step = 0.0;
};

TwoLevelScan two_level_scan()
{
    const DeviceParams p = table_i(2);
    TwoLevelScan s;
    s.pump = p.omega10_ghz();
    s.probe = ts::linspace(s.pump - 1.0, s.pump + 1.0, 2001);
    s.step = s.probe[1] - s.probe[0];
    s.mag = magnitudes(spectrum(p, s.pump, 200.0, s.probe).r);
    return s;
}

Outcome band_edges()
{
    const DeviceParams p = table_i(2);
    const TwoLevelScan s = two_level_scan();
    const auto bands = gain_bands(s.probe, s.mag);
    const double inner = units::ghz_from_mhz(inner_boundary_offset_mhz(p, 200.0));
    const double outer = 0.2;
    if (bands.size() != 2)
        return {false, "expected two gain bands, found " + std::to_string(bands.size())};
    const double e[4] = {bands[0].first - s.pump, bands[0].second - s.pump, bands[1].first - s.pump,
                         bands[1].second - s.pump};
    const double want[4] = {-outer, -inner, inner, outer};
    double worst = 0.0;
    for (int i = 0; i < 4; ++i)
        worst = std::max(worst, std::abs(e[i] - want[i]));
    std::string d = "edges (MHz from pump):";
    for (double x : e)
        d += " " + num(units::mhz_from_ghz(x), 5);
    d += "; expected +-" + num(units::mhz_from_ghz(inner), 4) + ", +-200; worst miss " +
         num(units::mhz_from_ghz(worst), 3) + " MHz vs step " + num(units::mhz_from_ghz(s.step), 3);
    return {worst <= s.step * (1.0 + 1e-9), d};
}

Outcome triplet_dips()
{
    const DeviceParams p = table_i(2);
    const TwoLevelScan s = two_level_scan();
    const auto mins = ts::local_minima(s.mag);
    const double tol = units::ghz_from_mhz(0.1 * p.gamma_mhz());
    std::string d = "minima (MHz from pump):";
    for (std::size_t i : mins)
        d += " " + num(units::mhz_from_ghz(s.probe[i] - s.pump), 5);
    bool pass = true;
    for (double target : {-0.2, 0.0, 0.2}) {
        double best = 1e9;
        for (std::size_t i : mins)
            best = std::min(best, std::abs(s.probe[i] - s.pump - target));
        pass = pass && best <= tol;
        d += "; nearest to " + num(units::mhz_from_ghz(target), 4) + " misses by " +
             num(units::mhz_from_ghz(best), 4) + " MHz";
    }
    d += " (tolerance " + num(units::mhz_from_ghz(tol), 3) + " MHz)";
    return {pass, d};
}

// Largest |r| strictly inside (pump, pump + sign * rabi), refined.
double side_maximum(const ReflectionEngine& engine, double pump, double rabi_ghz, int sign)
{
    const int n = 800;
    double best = 0.0;
    int best_i = 1;
    for (int i = 1; i < n; ++i) {
        const double a = std::abs(engine.reflection(pump + sign * rabi_ghz * i / n));
        if (a > best) {
            best = a;
            best_i = i;
        }
    }
    double arg = 0.0;
    const auto f = [&](double x) { return std::abs(engine.reflection(pump + sign * x)); };
    return golden_max(f, rabi_ghz * (best_i - 1) / n, rabi_ghz * (best_i + 1) / n, &arg);
}

Outcome asymmetry()
{
    const DeviceParams five = table_i(5);
    const DeviceParams two = table_i(2);
    const ReflectionEngine e5(five, five.omega10_ghz(), 200.0);
    const ReflectionEngine e2(two, two.omega10_ghz(), 200.0);
    const double up5 = side_maximum(e5, five.omega10_ghz(), 0.2, +1);
    const double dn5 = side_maximum(e5, five.omega10_ghz(), 0.2, -1);
    const double up2 = side_maximum(e2, two.omega10_ghz(), 0.2, +1);
    const double dn2 = side_maximum(e2, two.omega10_ghz(), 0.2, -1);
    return {std::abs(up5 - dn5) > 0.005 && std::abs(up2 - dn2) < 1e-6,
            "N=5 maxima " + num(dn5, 7) + " (below) / " + num(up5, 7) + " (above), difference " +
                num(std::abs(up5 - dn5), 4) + "; N=2 difference " + num(std::abs(up2 - dn2), 3)};
}

Outcome autler_townes()
{
    const DeviceParams p = table_i(5);
    const double pump = p.omega10_ghz();
    const double w21 = p.omega21_ghz();
    const std::vector<double> probe = ts::linspace(3.7, 4.45, 1501);
    std::vector<double> seps;
    std::string d = "separations (MHz):";
    bool found = true;
    for (double rabi : {180.0, 200.0, 220.0, 240.0, 260.0}) {
        const double half = units::ghz_from_mhz(rabi);
        const auto mag = magnitudes(spectrum(p, pump, rabi, probe).r);
        std::vector<std::pair<double, double>> dips; // (depth, freq)
        for (std::size_t i : ts::local_minima(mag))
            if (probe[i] > w21 - half && probe[i] < w21 + half / 2.0)
                dips.emplace_back(mag[i], probe[i]);
        std::sort(dips.begin(), dips.end());
        if (dips.size() < 2) {
            found = false;
            d += " [rabi " + num(rabi, 4) + ": fewer than two dips]";
            continue;
        }
        const double sep = units::mhz_from_ghz(std::abs(dips[0].second - dips[1].second));
        seps.push_back(sep);
        d += " " + num(sep, 5) + "@" + num(rabi, 4);
    }
    bool monotone = found && seps.size() == 5;
    for (std::size_t i = 1; monotone && i < seps.size(); ++i)
        monotone = seps[i] > seps[i - 1];
    const double rel = seps.empty() ? 1.0 : std::abs(seps.back() - 260.0) / 260.0;
    d += "; largest off by " + num(100.0 * rel, 3) + "% of rabi";
    return {monotone && rel < 0.15, d};
}

Outcome oracle_equivalence()
{
    const DeviceParams p = table_i(5);
    const double pump = p.omega10_ghz();
    double worst = 0.0;
    int n = 0;
    for (const OraclePoint& pt : oracle_sample_points()) {
        const double probe = pump + units::ghz_from_mhz(pt.detuning_mhz);
        const complex a = phase_averaged_reflection(p, pump, pt.rabi_mhz, probe);
        const complex b = two_tone_reflection(p, pump, pt.rabi_mhz, probe);
        worst = std::max(worst, std::abs(a - b));
        ++n;
    }
    return {n == 20 && worst < 1e-3, std::to_string(n) + " points, max |r_response - r_oracle| = " + num(worst, 3)};
}

Outcome invariants()
{
    std::mt19937_64 rng(42);
    double trace_err = 0.0, max_re = -1e300, fixed_err = 0.0, phase_err = 0.0;
    for (int n = 2; n <= 6; ++n) {
        DeviceParams p = table_i(n);
        const double pump = p.omega10_ghz() - 0.01 * n;
        const Liouvillian l = build_liouvillian(build_pump_frame_model(p, pump, 40.0 * n, 0.5 * n), p);
        for (int k = 0; k < 20; ++k)
            trace_err = std::max(trace_err, std::abs(l.apply(ts::random_hermitian(n, rng)).trace()));
        const Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<Eigen::MatrixXcd>(l.matrix(), false).eigenvalues();
        for (const complex& e : ev)
            max_re = std::max(max_re, e.real());
        const DensityMatrix ss = steady_state(l);
        const DensityMatrix moved = propagate(l, ss, 5.0 / ts::ang_mhz(p.gamma1_mhz));
        fixed_err = std::max(fixed_err, (vec(moved.matrix()) - vec(ss.matrix())).norm());
    }
    const DeviceParams p = table_i();
    for (double rabi : {60.0, 120.0, 240.0}) {
        const ReflectionEngine four(p, p.omega10_ghz(), rabi, 4);
        const ReflectionEngine eight(p, p.omega10_ghz(), rabi, 8);
        for (double f : ts::linspace(4.2, 5.0, 161))
            phase_err = std::max(phase_err, std::abs(four.reflection(f) - eight.reflection(f)));
    }
    GridSpec spec;
    spec.x = {AxisKind::ProbeFreq, 4.2, 5.0, 81};
    spec.y = {AxisKind::PumpRabi, 10.0, 300.0, 12};
    const SweepGrid one = run_grid(spec, 1);
    const SweepGrid many = run_grid(spec, std::max(4, worker_count()));
    const bool same = one.r == many.r;
    const bool pass = trace_err < 1e-12 && max_re <= 1e-9 && fixed_err < 1e-7 && phase_err < 1e-9 && same;
    return {pass, "trace " + num(trace_err, 3) + ", max Re(eig) " + num(max_re, 3) + ", fixed point " +
                      num(fixed_err, 3) + ", M=4 vs 8 " + num(phase_err, 3) + ", parallel grid " +
                      (same ? "identical" : "DIFFERENT")};
}

Outcome figure_shapes()
{
    const DeviceParams p = table_i();
    const double w10 = p.omega10_ghz();
    const double gamma = units::ghz_from_mhz(p.gamma_mhz());
    const CalibrationResult cal = calibrate(p);

    GridSpec spec;
    spec.device = p;
    spec.x = {AxisKind::ProbeFreq, 4.0, 5.0, 401};
    spec.y = {AxisKind::PumpFreq, 4.0, 5.0, 101};
    spec.pump.k = cal.k;

    const auto grid_at = [&](double dbm) {
        GridSpec s = spec;
        s.pump.power_dbm = dbm;
        return run_grid(s, worker_count());
    };
    const auto row = [](const SweepGrid& g, int iy) {
        std::vector<double> out(static_cast<std::size_t>(g.nx()));
        for (int ix = 0; ix < g.nx(); ++ix)
            out[static_cast<std::size_t>(ix)] = g.abs_at(iy, ix);
        return out;
    };
    const auto nearest_row = [](const SweepGrid& g, double f) {
        int best = 0;
        for (int i = 1; i < g.ny(); ++i)
            if (std::abs(g.y_values[std::size_t(i)] - f) < std::abs(g.y_values[std::size_t(best)] - f))
                best = i;
        return best;
    };
    const auto minima_in = [&](const SweepGrid& g, int iy, double lo, double hi) {
        std::vector<double> f;
        const auto mag = row(g, iy);
        for (std::size_t i : ts::local_minima(mag))
            if (g.x_values[i] > lo && g.x_values[i] < hi)
                f.push_back(g.x_values[i]);
        return f;
    };

    std::string d;
    bool pass = true;
    std::vector<SweepGrid> grids;
    for (double dbm : {-130.0, -125.0, -120.0, -115.0})
        grids.push_back(grid_at(dbm));
    for (const SweepGrid& g : grids)
        if (!g.errors.empty())
            return {false, "grid reported " + std::to_string(g.errors.size()) + " failed rows"};

    // (a) lowest power: one line at omega10 in every row, no gain.
    {
        const SweepGrid& g = grids[0];
        int off = 0;
        double hi = 0.0;
        for (int iy = 0; iy < g.ny(); ++iy) {
            const auto mag = row(g, iy);
            const auto it = std::min_element(mag.begin(), mag.end());
            off += std::abs(g.x_values[std::size_t(it - mag.begin())] - w10) > 0.01;
            hi = std::max(hi, *std::max_element(mag.begin(), mag.end()));
        }
        const bool ok = off == 0 && hi <= 1.0 + 1e-3;
        pass = pass && ok;
        d += std::string("(a) ") + (ok ? "ok" : "FAIL") + ": rows with dip away from w10 " + std::to_string(off) +
             ", max |r| " + num(hi, 5);
    }

    const double rabi = dbm_to_rabi(-115.0, cal.k);
    const double om = units::ghz_from_mhz(rabi);
    const SweepGrid& top = grids[3];

    // (b) highest power, resonant row: gain between the triplet lines and a split resonance.
    {
        const int iy = nearest_row(top, w10);
        const auto mag = row(top, iy);
        double inside = 0.0;
        for (int ix = 0; ix < top.nx(); ++ix)
            if (std::abs(top.x_values[std::size_t(ix)] - w10) < om)
                inside = std::max(inside, mag[std::size_t(ix)]);
        const auto mins = minima_in(top, iy, w10 - 1.25 * om, w10 + 1.25 * om);
        const bool ok = inside > 1.02 && mins.size() >= 2;
        pass = pass && ok;
        d += std::string("; (b) ") + (ok ? "ok" : "FAIL") + ": rabi " + num(rabi, 4) + " MHz, max |r| inside " +
             num(inside, 5) + ", dips " + std::to_string(mins.size());
    }

    // (c) pumping the upper transition splits the omega10 line into a doublet.
    {
        const int iy = nearest_row(top, p.omega21_ghz());
        const auto high = minima_in(top, iy, w10 - om, w10 + om);
        const auto low = minima_in(grids[0], iy, w10 - om, w10 + om);
        const bool split = high.size() >= 2 && (high.back() - high.front()) >= 0.5 * om;
        const bool ok = split && low.size() == 1;
        pass = pass && ok;
        d += std::string("; (c) ") + (ok ? "ok" : "FAIL") + ": pump " + num(top.y_values[std::size_t(iy)], 4) +
             " GHz, dips at high power " + std::to_string(high.size()) +
             (high.size() >= 2 ? " spanning " + num(units::mhz_from_ghz(high.back() - high.front()), 4) + " MHz" : "") +
             ", at low power " + std::to_string(low.size());
    }

    // (d) detuned pump: gain near one generalized sideband.
    {
        double best = 0.0, best_pump = 0.0;
        for (int iy = 0; iy < top.ny(); ++iy) {
            const double pump = top.y_values[std::size_t(iy)];
            const double det = pump - w10;
            if (std::abs(det) < gamma)
                continue;
            const double gen = std::sqrt(om * om + det * det);
            for (int ix = 0; ix < top.nx(); ++ix) {
                const double x = top.x_values[std::size_t(ix)];
                const double near = std::min(std::abs(x - (pump - gen)), std::abs(x - (pump + gen)));
                if (near <= 0.25 * gen && top.abs_at(iy, ix) > best) {
                    best = top.abs_at(iy, ix);
                    best_pump = pump;
                }
            }
        }
        const bool ok = best > 1.005;
        pass = pass && ok;
        d += std::string("; (d) ") + (ok ? "ok" : "FAIL") + ": max sideband |r| at detuned pump " + num(best, 5) +
             " (pump " + num(best_pump, 4) + " GHz)";
    }
    return {pass, d};
}

} // namespace

int main(int argc, char** argv)
{
    const std::vector<Criterion> criteria = {
        {1, "analytic two-level limit", 1.0, analytic_limit},
        {2, "peak gain reproduction", 60.0, peak_gain},
        {3, "null-gain points", 5.0, null_gain},
        {4, "gain-band boundaries", 10.0, band_edges},
        {5, "triplet dip positions", 10.0, triplet_dips},
        {6, "asymmetry attribution", 20.0, asymmetry},
        {7, "Autler-Townes doublet", 30.0, autler_townes},
        {8, "oracle equivalence", 300.0, oracle_equivalence},
        {9, "invariant suite", 60.0, invariants},
        {10, "figure-shape reproduction", 600.0, figure_shapes},
    };

    std::vector<int> selected;
    for (int i = 1; i < argc; ++i)
        selected.push_back(std::atoi(argv[i]));

    int failed = 0;
    for (const Criterion& c : criteria) {
        if (!selected.empty() && std::find(selected.begin(), selected.end(), c.id) == selected.end())
            continue;
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool in_time = dt < c.budget_s;
        const bool pass = o.pass && in_time;
        failed += !pass;
        std::printf("[%s] criterion %d (%s): %s; %.2f s of %.0f s budget%s\n", pass ? "PASS" : "FAIL", c.id,
                    c.title, o.detail.c_str(), dt, c.budget_s, in_time ? "" : " EXCEEDED");
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
