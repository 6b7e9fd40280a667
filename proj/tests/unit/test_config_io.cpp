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

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>

#include "mollow/config.hpp"
#include "mollow/errors.hpp"
#include "mollow/io.hpp"

using namespace mollow;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / "mollow_io_tests";
    fs::create_directories(dir);
    return dir / name;
}

json minimal()
{
    return json::parse(R"({
        "device": {"n_levels": 3},
        "pump": {"omega_pump_ghz": "resonant", "rabi_mhz": 50.0},
        "probe": {"start_ghz": 4.4, "stop_ghz": 4.8, "points": 5}
    })");
}

std::string config_error_message(const json& doc)
{
    try {
        parse_config(doc);
    } catch (const ConfigError& e) {
        return e.what();
    }
    return "";
}

SweepGrid sample_grid()
{
    GridSpec spec;
    spec.device.n_levels = 3;
    spec.x = {AxisKind::ProbeFreq, 4.3, 4.9, 7};
    spec.y = {AxisKind::PumpRabi, 10.0, 200.0, 4};
    SweepGrid grid = run_grid(spec, 1);
    grid.r[5] = complex(std::nan(""), std::nan(""));
    grid.errors.push_back({0, 5, "synthetic, with comma"});
    return grid;
}

} // namespace

TEST_SUITE("config")
{
    TEST_CASE("defaults mirror the device table")
    {
        const RunConfig cfg = parse_config(json::parse(R"({"probe": {"start_ghz": 4.0, "stop_ghz": 5.0, "points": 3}})"));
        CHECK(cfg.device.e_j_max_ghz == 7.97);
        CHECK(cfg.device.e_c_ghz == 0.39);
        CHECK(cfg.device.n_levels == 5);
        CHECK(cfg.device.gamma1_mhz == 45.0);
        CHECK(cfg.device.gamma_phi_mhz == 2.7);
        CHECK(cfg.pump.resolve_rabi() == 0.0);
        CHECK(cfg.n_phases == 4);
        CHECK(cfg.oracle_points.size() == 20);
    }

    TEST_CASE("full configuration parses")
    {
        json doc = minimal();
        doc["pump"] = {{"omega_pump_ghz", 4.5}, {"power_dbm", -120.0}, {"k_mhz_per_sqrt_w", 1e9}};
        doc["sweep"] = {{"y_axis", {{"kind", "pump_freq"}, {"start", 4.2}, {"stop", 4.6}, {"points", 3}}}};
        doc["engine"] = {{"n_phases", 8}, {"kind", "oracle"}};
        doc["output"] = {{"path", "x.json"}, {"format", "json"}, {"include_complex", true}};
        doc["oracle"] = {{"samples_per_period", 64}, {"tolerance", 5e-4},
                         {"points", {{{"rabi_mhz", 50.0}, {"detuning_mhz", 20.0}}}}};
        const RunConfig cfg = parse_config(doc);
        CHECK(*cfg.pump.omega_pump_ghz == 4.5);
        CHECK(cfg.pump.resolve_rabi() == doctest::Approx(31.6227766));
        CHECK(cfg.y_axis->kind == AxisKind::PumpFreq);
        CHECK(cfg.n_phases == 8);
        CHECK(cfg.engine == Engine::Oracle);
        CHECK(cfg.output.format == OutputFormat::Json);
        CHECK(cfg.output.include_complex);
        CHECK(cfg.oracle.samples_per_period == 64);
        CHECK(cfg.oracle_tolerance == 5e-4);
        REQUIRE(cfg.oracle_points.size() == 1);
        CHECK(cfg.oracle_points[0].detuning_mhz == 20.0);
        const GridSpec spec = cfg.grid_spec();
        CHECK(spec.y.points == 3);
        CHECK(spec.n_phases == 8);
    }

    TEST_CASE("rabi and power together violate the exclusive choice")
    {
        json doc = minimal();
        doc["pump"]["power_dbm"] = -120.0;
        doc["pump"]["k_mhz_per_sqrt_w"] = 1e9;
        CHECK(config_error_message(doc).find("mutually exclusive") != std::string::npos);
    }

    TEST_CASE("errors name the offending field")
    {
        json doc = minimal();
        doc["device"]["n_levles"] = 3;
        CHECK(config_error_message(doc).find("n_levles") != std::string::npos);

        doc = minimal();
        doc["device"]["gamma1_mhz"] = "fast";
        CHECK(config_error_message(doc).find("gamma1_mhz") != std::string::npos);

        doc = minimal();
        doc["device"]["n_levels"] = 40;
        CHECK(config_error_message(doc).find("n_levels") != std::string::npos);

        doc = minimal();
        doc["output"] = {{"format", "xml"}};
        CHECK(config_error_message(doc).find("format") != std::string::npos);

        doc = minimal();
        doc["probe"]["points"] = 0;
        CHECK(!config_error_message(doc).empty());

        doc = minimal();
        doc["sweep"] = {{"y_axis", {{"kind", "pump_power_dbm"}, {"start", -130}, {"stop", -110}, {"points", 3}}}};
        CHECK(config_error_message(doc).find("k") != std::string::npos);
    }

    TEST_CASE("unreadable and malformed files are config errors")
    {
        CHECK_THROWS_AS(load_config(scratch("does_not_exist.json")), ConfigError);
        const fs::path bad = scratch("bad.json");
        std::ofstream(bad) << "{ not json";
        CHECK_THROWS_AS(load_config(bad), ConfigError);
    }
}

TEST_SUITE("io")
{
    TEST_CASE("doubles print in shortest round-trip form")
    {
        std::mt19937_64 rng(1);
        std::uniform_real_distribution<double> u(-10.0, 10.0);
        for (int i = 0; i < 1000; ++i) {
            const double x = u(rng) * std::pow(10.0, u(rng));
            CHECK(std::strtod(io::format_double(x).c_str(), nullptr) == x);
        }
        CHECK(io::format_double(0.1) == "0.1");
        CHECK(io::format_double(4.2) == "4.2");
    }

    TEST_CASE("grid round trip is exact in both formats")
    {
        const SweepGrid grid = sample_grid();
        for (OutputFormat f : {OutputFormat::Csv, OutputFormat::Json}) {
            const fs::path path = scratch(f == OutputFormat::Csv ? "grid.csv" : "grid.json");
            io::write_grid(path, grid, f, true, "t0");
            const io::GridTable t = io::read_grid(path);
            CHECK(t.x_kind == AxisKind::ProbeFreq);
            CHECK(t.y_kind == AxisKind::PumpRabi);
            CHECK(t.x_values == grid.x_values);
            CHECK(t.y_values == grid.y_values);
            REQUIRE(t.abs_r.size() == grid.r.size());
            REQUIRE(t.r.size() == grid.r.size());
            for (std::size_t i = 0; i < grid.r.size(); ++i) {
                if (i == 5) {
                    CHECK(std::isnan(t.abs_r[i]));
                    CHECK(std::isnan(t.r[i].real()));
                    continue;
                }
                CHECK(t.abs_r[i] == std::abs(grid.r[i]));
                CHECK(t.r[i] == grid.r[i]);
            }
        }
    }

    TEST_CASE("csv grid layout")
    {
        const SweepGrid grid = sample_grid();
        const fs::path path = scratch("layout.csv");
        io::write_grid(path, grid, OutputFormat::Csv, false, "t0");
        std::ifstream in(path);
        std::string line;
        std::vector<std::string> header;
        std::string columns;
        while (std::getline(in, line)) {
            if (line.rfind("#", 0) == 0) {
                header.push_back(line);
                continue;
            }
            columns = line;
            break;
        }
        CHECK(columns == "iy,ix,y,x,abs_r");
        CHECK(std::count(header.begin(), header.end(), "# x_axis,probe_freq,4.3,4.9,7") == 1);
        CHECK(std::count(header.begin(), header.end(), "# y_axis,pump_rabi,10,200,4") == 1);
        CHECK(std::count(header.begin(), header.end(), "# created,t0") == 1);
        std::getline(in, line);
        CHECK(line.rfind("0,0,10,4.3,", 0) == 0);
        std::getline(in, line);
        CHECK(line.rfind("0,1,10,", 0) == 0);

        std::ifstream ov(io::overlay_path(path));
        std::getline(ov, line);
        CHECK(line == "series,y,x_ghz");
        int rows = 0;
        while (std::getline(ov, line))
            ++rows;
        CHECK(rows == 7 * 4);
        CHECK(io::overlay_path(path).filename() == "layout.overlays.csv");
    }

    TEST_CASE("json grid carries overlays and errors")
    {
        const SweepGrid grid = sample_grid();
        const fs::path path = scratch("overlay.json");
        io::write_grid(path, grid, OutputFormat::Json, false, "t0");
        std::ifstream in(path);
        const json doc = json::parse(in);
        CHECK(doc["kind"] == "sweep2d");
        CHECK(doc["metadata"]["created"] == "t0");
        CHECK(doc["overlays"].size() == 7);
        CHECK(doc["errors"].size() == 1);
        CHECK(doc["abs_r"][0][5].is_null());
        CHECK(!doc.contains("re_r"));
    }

    TEST_CASE("spectrum round trip")
    {
        const DeviceParams p;
        const std::vector<double> grid = {4.4, 4.5, 4.6, 4.7};
        const ReflectionSpectrum s = spectrum(p, 4.59, 80.0, grid);
        for (OutputFormat f : {OutputFormat::Csv, OutputFormat::Json}) {
            const fs::path path = scratch(f == OutputFormat::Csv ? "spec.csv" : "spec.json");
            io::write_spectrum(path, s, f, true, "t0");
            const io::SpectrumTable t = io::read_spectrum(path);
            CHECK(t.probe_ghz == grid);
            REQUIRE(t.r.size() == 4);
            for (std::size_t i = 0; i < 4; ++i) {
                CHECK(t.r[i] == s.r[i]);
                CHECK(t.abs_r[i] == std::abs(s.r[i]));
            }
        }
    }

    TEST_CASE("identical grids give identical bytes apart from the timestamp")
    {
        const SweepGrid grid = sample_grid();
        const fs::path a = scratch("same_a.csv");
        const fs::path b = scratch("same_b.csv");
        io::write_grid(a, grid, OutputFormat::Csv, true, "2026-01-01T00:00:00Z");
        io::write_grid(b, grid, OutputFormat::Csv, true, "2027-01-01T00:00:00Z");
        auto strip = [](const fs::path& p) {
            std::ifstream in(p);
            std::string line, out;
            while (std::getline(in, line))
                if (line.rfind("# created,", 0) != 0)
                    out += line + "\n";
            return out;
        };
        CHECK(strip(a) == strip(b));
    }

    TEST_CASE("unwritable output path is a config error")
    {
        const SweepGrid grid = sample_grid();
        CHECK_THROWS_AS(io::write_grid("/nonexistent_dir/x.csv", grid, OutputFormat::Csv, false, "t"), ConfigError);
    }
}
