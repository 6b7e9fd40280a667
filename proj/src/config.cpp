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

#include "mollow/config.hpp"

#include <fstream>
#include <set>

#include "mollow/errors.hpp"

namespace mollow {

using nlohmann::json;

OutputFormat parse_output_format(const std::string& name)
{
    if (name == "csv")
        return OutputFormat::Csv;
    if (name == "json")
        return OutputFormat::Json;
    throw ConfigError("output.format", "must be 'csv' or 'json', got '" + name + "'");
}

GridSpec RunConfig::grid_spec() const
{
    if (!y_axis)
        throw ConfigError("sweep.y_axis", "sweep2d needs a y axis");
    GridSpec spec;
    spec.x = probe;
    spec.y = *y_axis;
    spec.device = device;
    spec.pump = pump;
    spec.n_phases = n_phases;
    spec.engine = engine;
    spec.oracle = oracle;
    return spec;
}

namespace {

// Reads typed members of one JSON object and rejects keys nobody asked for.
class Block
{
public:
    Block(const json& doc, std::string path) : m_doc(doc), m_path(std::move(path))
    {
        if (!m_doc.is_object())
            throw ConfigError(m_path, "must be an object");
    }

    ~Block() noexcept(false)
    {
        if (std::uncaught_exceptions() > 0)
            return;
        for (const auto& item : m_doc.items())
            if (!m_seen.contains(item.key()))
                throw ConfigError(field(item.key()), "unknown key");
    }

    bool has(const std::string& key)
    {
        m_seen.insert(key);
        return m_doc.contains(key);
    }

    template <class T>
    std::optional<T> get(const std::string& key)
    {
        if (!has(key))
            return std::nullopt;
        try {
            return m_doc.at(key).get<T>();
        } catch (const json::exception&) {
            throw ConfigError(field(key), "has the wrong type");
        }
    }

    template <class T>
    void read(const std::string& key, T& target)
    {
        if (auto v = get<T>(key))
            target = *v;
    }

    const json& at(const std::string& key) const { return m_doc.at(key); }
    std::string field(const std::string& key) const { return m_path + "." + key; }

private:
    const json& m_doc;
    std::string m_path;
    std::set<std::string> m_seen;
};

Axis parse_axis(const json& doc, const std::string& path, AxisKind default_kind)
{
    Block b(doc, path);
    Axis axis;
    axis.kind = default_kind;
    if (auto kind = b.get<std::string>("kind"))
        axis.kind = parse_axis_kind(*kind);
    b.read("start", axis.start);
    b.read("stop", axis.stop);
    b.read("points", axis.points);
    if (axis.points < 2)
        throw ConfigError(path + ".points", "must be at least 2");
    return axis;
}

void parse_device(const json& doc, DeviceParams& d)
{
    Block b(doc, "device");
    b.read("e_j_max_ghz", d.e_j_max_ghz);
    b.read("e_c_ghz", d.e_c_ghz);
    b.read("n_levels", d.n_levels);
    b.read("gamma1_mhz", d.gamma1_mhz);
    b.read("gamma_phi_mhz", d.gamma_phi_mhz);
    b.read("flux_ratio", d.flux_ratio);
    if (auto a = b.get<double>("anharmonicity_ghz"))
        d.anharmonicity_ghz = *a;
}

void parse_pump(const json& doc, PumpSpec& p)
{
    Block b(doc, "pump");
    if (b.has("omega_pump_ghz")) {
        const json& w = b.at("omega_pump_ghz");
        if (w.is_string()) {
            if (w.get<std::string>() != "resonant")
                throw ConfigError("pump.omega_pump_ghz", "must be a number or \"resonant\"");
        } else if (w.is_number()) {
            p.omega_pump_ghz = w.get<double>();
        } else {
            throw ConfigError("pump.omega_pump_ghz", "must be a number or \"resonant\"");
        }
    }
    p.rabi_mhz = b.get<double>("rabi_mhz");
    p.power_dbm = b.get<double>("power_dbm");
    p.k = b.get<double>("k_mhz_per_sqrt_w");
}

void parse_oracle(const json& doc, RunConfig& cfg)
{
    Block b(doc, "oracle");
    OracleConfig& o = cfg.oracle;
    if (auto v = b.get<double>("probe_rabi_mhz"))
        o.probe_rabi_mhz = *v;
    b.read("settle_time", o.settle_time);
    b.read("sample_window", o.sample_window);
    b.read("samples_per_period", o.samples_per_period);
    b.read("probe_phase", o.probe_phase);
    b.read("drift_tolerance", o.drift_tolerance);
    b.read("linearity_tolerance", o.linearity_tolerance);
    b.read("check_linearity", o.check_linearity);
    b.read("tolerance", cfg.oracle_tolerance);
    if (b.has("points")) {
        const json& pts = b.at("points");
        if (!pts.is_array() || pts.empty())
            throw ConfigError("oracle.points", "must be a non-empty array");
        cfg.oracle_points.clear();
        for (std::size_t i = 0; i < pts.size(); ++i) {
            Block p(pts[i], "oracle.points[" + std::to_string(i) + "]");
            OraclePoint point;
            p.read("rabi_mhz", point.rabi_mhz);
            p.read("detuning_mhz", point.detuning_mhz);
            cfg.oracle_points.push_back(point);
        }
    }
}

} // namespace

RunConfig parse_config(const json& doc)
{
    RunConfig cfg;
    {
        Block root(doc, "config");
        if (root.has("device"))
            parse_device(root.at("device"), cfg.device);

        if (root.has("pump"))
            parse_pump(root.at("pump"), cfg.pump);
        else
            cfg.pump.rabi_mhz = 0.0;

        if (root.has("probe")) {
            Block p(root.at("probe"), "probe");
            p.read("start_ghz", cfg.probe.start);
            p.read("stop_ghz", cfg.probe.stop);
            p.read("points", cfg.probe.points);
        }
        if (root.has("sweep")) {
            Block s(root.at("sweep"), "sweep");
            if (s.has("y_axis"))
                cfg.y_axis = parse_axis(s.at("y_axis"), "sweep.y_axis", AxisKind::PumpPowerDbm);
        }
        if (root.has("engine")) {
            Block e(root.at("engine"), "engine");
            e.read("n_phases", cfg.n_phases);
            if (auto kind = e.get<std::string>("kind")) {
                if (*kind == "response")
                    cfg.engine = Engine::Response;
                else if (*kind == "oracle")
                    cfg.engine = Engine::Oracle;
                else
                    throw ConfigError("engine.kind", "must be 'response' or 'oracle'");
            }
        }
        if (root.has("output")) {
            Block o(root.at("output"), "output");
            o.read("path", cfg.output.path);
            if (auto f = o.get<std::string>("format"))
                cfg.output.format = parse_output_format(*f);
            o.read("include_complex", cfg.output.include_complex);
        }
        if (root.has("calibrate")) {
            Block c(root.at("calibrate"), "calibrate");
            CalibrationScan& s = cfg.calibration;
            c.read("rabi_start_mhz", s.rabi_start_mhz);
            c.read("rabi_stop_mhz", s.rabi_stop_mhz);
            c.read("rabi_points", s.rabi_points);
            c.read("probe_step_mhz", s.probe_step_mhz);
            c.read("reference_dbm", s.reference_dbm);
        }
        if (root.has("oracle"))
            parse_oracle(root.at("oracle"), cfg);
    }

    cfg.device.validate();
    const AxisKind y_kind = cfg.y_axis ? cfg.y_axis->kind : AxisKind::ProbeFreq;
    if (y_kind == AxisKind::PumpPowerDbm) {
        if (!(cfg.pump.k && *cfg.pump.k > 0))
            throw ConfigError("pump.k_mhz_per_sqrt_w", "a pump power axis needs k");
    } else if (y_kind != AxisKind::PumpRabi) {
        cfg.pump.validate();
    }
    if (cfg.probe.points < 1)
        throw ConfigError("probe.points", "must be positive");
    if (cfg.probe.points > 1 && !(cfg.probe.stop > cfg.probe.start))
        throw ConfigError("probe", "stop_ghz must exceed start_ghz");
    if (cfg.n_phases < 1)
        throw ConfigError("engine.n_phases", "must be at least 1");
    cfg.calibration.n_phases = cfg.n_phases;
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("config", "cannot open " + path.string());
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw ConfigError("config", std::string("invalid JSON: ") + e.what());
    }
    return parse_config(doc);
}

} // namespace mollow
