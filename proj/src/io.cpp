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

#include "mollow/io.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "mollow/errors.hpp"

namespace mollow::io {

using nlohmann::json;

std::string timestamp_now()
{
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &utc);
    return buf;
}

std::string format_double(double value)
{
    if (std::isnan(value))
        return "nan";
    char buf[32];
    for (int precision = 15; precision <= 17; ++precision) {
        std::snprintf(buf, sizeof buf, "%.*g", precision, value);
        if (std::strtod(buf, nullptr) == value)
            break;
    }
    return buf;
}

std::filesystem::path overlay_path(const std::filesystem::path& path)
{
    std::filesystem::path p = path;
    p.replace_extension();
    return p.string() + ".overlays.csv";
}

namespace {

std::ofstream open_out(const std::filesystem::path& path)
{
    std::ofstream out(path);
    if (!out)
        throw ConfigError("output.path", "cannot write " + path.string());
    return out;
}

json json_number(double v)
{
    return std::isnan(v) ? json(nullptr) : json(v);
}

double number_from_json(const json& v)
{
    return v.is_null() ? std::numeric_limits<double>::quiet_NaN() : v.get<double>();
}

std::vector<std::pair<std::string, std::string>> device_fields(const DeviceParams& d)
{
    std::vector<std::pair<std::string, std::string>> f = {
        {"e_j_max_ghz", format_double(d.e_j_max_ghz)},
        {"e_c_ghz", format_double(d.e_c_ghz)},
        {"n_levels", std::to_string(d.n_levels)},
        {"gamma1_mhz", format_double(d.gamma1_mhz)},
        {"gamma_phi_mhz", format_double(d.gamma_phi_mhz)},
        {"flux_ratio", format_double(d.flux_ratio)},
        {"anharmonicity_ghz", format_double(d.anharmonicity())},
    };
    return f;
}

json device_json(const DeviceParams& d)
{
    json j;
    for (const auto& [k, v] : device_fields(d))
        j[k] = k == "n_levels" ? json(d.n_levels) : json(std::strtod(v.c_str(), nullptr));
    return j;
}

void write_csv_preamble(std::ostream& out, const std::string& kind, const DeviceParams& device,
                        const std::string& created)
{
    out << "# mollow " << kind << "\n";
    out << "# format_version,1\n";
    out << "# generator,mollow " << version_string << "\n";
    out << "# created," << created << "\n";
    for (const auto& [k, v] : device_fields(device))
        out << "# device," << k << "," << v << "\n";
}

json json_preamble(const std::string& kind, const DeviceParams& device, const std::string& created)
{
    return {{"kind", kind},
            {"format_version", 1},
            {"generator", std::string("mollow ") + version_string},
            {"metadata", {{"created", created}}},
            {"device", device_json(device)}};
}

void write_json(const std::filesystem::path& path, const json& doc)
{
    std::ofstream out = open_out(path);
    out << doc.dump(1) << "\n";
}

std::string pump_frequency_text(const GridSpec& spec)
{
    return spec.pump.omega_pump_ghz ? format_double(*spec.pump.omega_pump_ghz) : "resonant";
}

} // namespace

void write_spectrum(const std::filesystem::path& path, const ReflectionSpectrum& s,
                    OutputFormat format, bool include_complex, const std::string& created)
{
    if (format == OutputFormat::Json) {
        json doc = json_preamble("spectrum", s.device, created);
        doc["pump"] = {{"omega_pump_ghz", s.omega_pump_ghz}, {"rabi_mhz", s.rabi_mhz}};
        doc["engine"] = {{"n_phases", s.n_phases}};
        json abs_r = json::array(), re = json::array(), im = json::array();
        for (const complex& r : s.r) {
            abs_r.push_back(json_number(std::abs(r)));
            re.push_back(json_number(r.real()));
            im.push_back(json_number(r.imag()));
        }
        doc["probe_ghz"] = s.probe_ghz;
        doc["abs_r"] = abs_r;
        if (include_complex) {
            doc["re_r"] = re;
            doc["im_r"] = im;
        }
        write_json(path, doc);
        return;
    }

    std::ofstream out = open_out(path);
    write_csv_preamble(out, "spectrum", s.device, created);
    out << "# pump,omega_pump_ghz," << format_double(s.omega_pump_ghz) << "\n";
    out << "# pump,rabi_mhz," << format_double(s.rabi_mhz) << "\n";
    out << "# engine,n_phases," << s.n_phases << "\n";
    out << "probe_ghz,abs_r" << (include_complex ? ",re_r,im_r" : "") << "\n";
    for (std::size_t i = 0; i < s.r.size(); ++i) {
        out << format_double(s.probe_ghz[i]) << "," << format_double(std::abs(s.r[i]));
        if (include_complex)
            out << "," << format_double(s.r[i].real()) << "," << format_double(s.r[i].imag());
        out << "\n";
    }
}

void write_grid(const std::filesystem::path& path, const SweepGrid& grid, OutputFormat format,
                bool include_complex, const std::string& created)
{
    const GridSpec& spec = grid.spec;
    const std::vector<OverlaySeries> overlays = overlay_series(grid);

    if (format == OutputFormat::Json) {
        json doc = json_preamble("sweep2d", spec.device, created);
        json pump = {{"omega_pump_ghz", pump_frequency_text(spec)}};
        if (spec.pump.rabi_mhz)
            pump["rabi_mhz"] = *spec.pump.rabi_mhz;
        if (spec.pump.power_dbm)
            pump["power_dbm"] = *spec.pump.power_dbm;
        if (spec.pump.k)
            pump["k_mhz_per_sqrt_w"] = *spec.pump.k;
        doc["pump"] = pump;
        doc["engine"] = {{"n_phases", spec.n_phases},
                         {"kind", spec.engine == Engine::Response ? "response" : "oracle"}};
        doc["x_axis"] = {{"kind", axis_kind_name(spec.x.kind)}, {"values", grid.x_values}};
        doc["y_axis"] = {{"kind", axis_kind_name(spec.y.kind)}, {"values", grid.y_values}};
        json abs_r = json::array(), re = json::array(), im = json::array();
        for (int iy = 0; iy < grid.ny(); ++iy) {
            json ra = json::array(), rr = json::array(), ri = json::array();
            for (int ix = 0; ix < grid.nx(); ++ix) {
                const complex r = grid.at(iy, ix);
                ra.push_back(json_number(std::abs(r)));
                rr.push_back(json_number(r.real()));
                ri.push_back(json_number(r.imag()));
            }
            abs_r.push_back(ra);
            re.push_back(rr);
            im.push_back(ri);
        }
        doc["abs_r"] = abs_r;
        if (include_complex) {
            doc["re_r"] = re;
            doc["im_r"] = im;
        }
        json ov = json::array();
        for (const OverlaySeries& s : overlays) {
            json ys = json::array(), xs = json::array();
            for (const auto& [y, x] : s.points) {
                ys.push_back(y);
                xs.push_back(x);
            }
            ov.push_back({{"name", s.name}, {"y", ys}, {"x_ghz", xs}});
        }
        doc["overlays"] = ov;
        json errs = json::array();
        for (const GridPointError& e : grid.errors)
            errs.push_back({{"iy", e.iy}, {"ix", e.ix}, {"message", e.message}});
        doc["errors"] = errs;
        write_json(path, doc);
        return;
    }

    std::ofstream out = open_out(path);
    write_csv_preamble(out, "sweep2d", spec.device, created);
    out << "# pump,omega_pump_ghz," << pump_frequency_text(spec) << "\n";
    if (spec.pump.rabi_mhz)
        out << "# pump,rabi_mhz," << format_double(*spec.pump.rabi_mhz) << "\n";
    if (spec.pump.power_dbm)
        out << "# pump,power_dbm," << format_double(*spec.pump.power_dbm) << "\n";
    if (spec.pump.k)
        out << "# pump,k_mhz_per_sqrt_w," << format_double(*spec.pump.k) << "\n";
    out << "# engine,n_phases," << spec.n_phases << "\n";
    for (const auto& [name, axis] : {std::pair{"x_axis", spec.x}, std::pair{"y_axis", spec.y}})
        out << "# " << name << "," << axis_kind_name(axis.kind) << "," << format_double(axis.start)
            << "," << format_double(axis.stop) << "," << axis.points << "\n";
    for (const GridPointError& e : grid.errors) {
        std::string msg = e.message;
        for (char& c : msg)
            if (c == '\n' || c == ',')
                c = ' ';
        out << "# error," << e.iy << "," << e.ix << "," << msg << "\n";
    }
    out << "iy,ix,y,x,abs_r" << (include_complex ? ",re_r,im_r" : "") << "\n";
    for (int iy = 0; iy < grid.ny(); ++iy) {
        for (int ix = 0; ix < grid.nx(); ++ix) {
            const complex r = grid.at(iy, ix);
            out << iy << "," << ix << "," << format_double(grid.y_values[static_cast<std::size_t>(iy)])
                << "," << format_double(grid.x_values[static_cast<std::size_t>(ix)]) << ","
                << format_double(std::abs(r));
            if (include_complex)
                out << "," << format_double(r.real()) << "," << format_double(r.imag());
            out << "\n";
        }
    }

    std::ofstream ov = open_out(overlay_path(path));
    ov << "series,y,x_ghz\n";
    for (const OverlaySeries& s : overlays)
        for (const auto& [y, x] : s.points)
            ov << s.name << "," << format_double(y) << "," << format_double(x) << "\n";
}

namespace {

std::string read_all(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("input", "cannot open " + path.string());
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool looks_like_json(const std::string& text)
{
    const auto pos = text.find_first_not_of(" \t\r\n");
    return pos != std::string::npos && text[pos] == '{';
}

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
        cells.push_back(cell);
    return cells;
}

double parse_double(const std::string& s)
{
    return std::strtod(s.c_str(), nullptr);
}

} // namespace

SpectrumTable read_spectrum(const std::filesystem::path& path)
{
    const std::string text = read_all(path);
    SpectrumTable t;
    if (looks_like_json(text)) {
        const json doc = json::parse(text);
        t.probe_ghz = doc.at("probe_ghz").get<std::vector<double>>();
        for (const json& v : doc.at("abs_r"))
            t.abs_r.push_back(number_from_json(v));
        if (doc.contains("re_r"))
            for (std::size_t i = 0; i < t.abs_r.size(); ++i)
                t.r.emplace_back(number_from_json(doc["re_r"][i]), number_from_json(doc["im_r"][i]));
        return t;
    }
    std::stringstream in(text);
    std::string line;
    bool header = false;
    bool complex_cols = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        if (!header) {
            header = true;
            complex_cols = split(line).size() >= 4;
            continue;
        }
        const auto c = split(line);
        t.probe_ghz.push_back(parse_double(c.at(0)));
        t.abs_r.push_back(parse_double(c.at(1)));
        if (complex_cols)
            t.r.emplace_back(parse_double(c.at(2)), parse_double(c.at(3)));
    }
    return t;
}

GridTable read_grid(const std::filesystem::path& path)
{
    const std::string text = read_all(path);
    GridTable t;
    if (looks_like_json(text)) {
        const json doc = json::parse(text);
        t.x_kind = parse_axis_kind(doc.at("x_axis").at("kind").get<std::string>());
        t.y_kind = parse_axis_kind(doc.at("y_axis").at("kind").get<std::string>());
        t.x_values = doc.at("x_axis").at("values").get<std::vector<double>>();
        t.y_values = doc.at("y_axis").at("values").get<std::vector<double>>();
        const bool has_complex = doc.contains("re_r");
        for (std::size_t iy = 0; iy < t.y_values.size(); ++iy) {
            for (std::size_t ix = 0; ix < t.x_values.size(); ++ix) {
                t.abs_r.push_back(number_from_json(doc["abs_r"][iy][ix]));
                if (has_complex)
                    t.r.emplace_back(number_from_json(doc["re_r"][iy][ix]),
                                     number_from_json(doc["im_r"][iy][ix]));
            }
        }
        return t;
    }

    std::stringstream in(text);
    std::string line;
    bool header = false;
    bool complex_cols = false;
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        if (line[0] == '#') {
            const auto c = split(line.substr(2));
            if (c.size() >= 2 && c[0] == "x_axis")
                t.x_kind = parse_axis_kind(c[1]);
            if (c.size() >= 2 && c[0] == "y_axis")
                t.y_kind = parse_axis_kind(c[1]);
            continue;
        }
        if (!header) {
            header = true;
            complex_cols = split(line).size() >= 7;
            continue;
        }
        const auto c = split(line);
        const long iy = std::stol(c.at(0));
        const long ix = std::stol(c.at(1));
        if (ix == 0)
            t.y_values.push_back(parse_double(c.at(2)));
        if (iy == 0)
            t.x_values.push_back(parse_double(c.at(3)));
        t.abs_r.push_back(parse_double(c.at(4)));
        if (complex_cols)
            t.r.emplace_back(parse_double(c.at(5)), parse_double(c.at(6)));
    }
    return t;
}

void write_calibration(const std::filesystem::path& path, const CalibrationResult& c,
                       OutputFormat format, const std::string& created)
{
    if (format == OutputFormat::Json) {
        write_json(path, {{"kind", "calibration"},
                          {"generator", std::string("mollow ") + version_string},
                          {"metadata", {{"created", created}}},
                          {"rabi_mhz", c.rabi_mhz},
                          {"k_mhz_per_sqrt_w", c.k},
                          {"max_abs_r", c.max_gain},
                          {"probe_ghz", c.probe_ghz},
                          {"reference_dbm", c.reference_dbm}});
        return;
    }
    std::ofstream out = open_out(path);
    out << "# mollow calibration\n# generator,mollow " << version_string << "\n# created," << created
        << "\n";
    out << "key,value\n";
    out << "rabi_mhz," << format_double(c.rabi_mhz) << "\n";
    out << "k_mhz_per_sqrt_w," << format_double(c.k) << "\n";
    out << "max_abs_r," << format_double(c.max_gain) << "\n";
    out << "probe_ghz," << format_double(c.probe_ghz) << "\n";
    out << "reference_dbm," << format_double(c.reference_dbm) << "\n";
}

void write_oracle_table(const std::filesystem::path& path, const std::vector<OracleRow>& rows,
                        OutputFormat format, const std::string& created)
{
    if (format == OutputFormat::Json) {
        json table = json::array();
        for (const OracleRow& r : rows)
            table.push_back({{"point", r.index},
                             {"rabi_mhz", r.rabi_mhz},
                             {"detuning_mhz", r.detuning_mhz},
                             {"probe_ghz", r.probe_ghz},
                             {"r_response", {r.r_response.real(), r.r_response.imag()}},
                             {"r_oracle", {r.r_oracle.real(), r.r_oracle.imag()}},
                             {"abs_difference", r.difference}});
        write_json(path, {{"kind", "oracle-check"},
                          {"generator", std::string("mollow ") + version_string},
                          {"metadata", {{"created", created}}},
                          {"points", table}});
        return;
    }
    std::ofstream out = open_out(path);
    out << "# mollow oracle-check\n# generator,mollow " << version_string << "\n# created," << created
        << "\n";
    out << "point,rabi_mhz,detuning_mhz,probe_ghz,re_r_response,im_r_response,re_r_oracle,"
           "im_r_oracle,abs_difference\n";
    for (const OracleRow& r : rows)
        out << r.index << "," << format_double(r.rabi_mhz) << "," << format_double(r.detuning_mhz) << ","
            << format_double(r.probe_ghz) << "," << format_double(r.r_response.real()) << ","
            << format_double(r.r_response.imag()) << "," << format_double(r.r_oracle.real()) << ","
            << format_double(r.r_oracle.imag()) << "," << format_double(r.difference) << "\n";
}

} // namespace mollow::io
