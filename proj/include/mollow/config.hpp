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

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "mollow/model.hpp"
#include "mollow/oracle.hpp"
#include "mollow/sweep.hpp"

namespace mollow {

enum class OutputFormat
{
    Csv,
    Json,
};

OutputFormat parse_output_format(const std::string& name);

struct OutputSpec
{
    std::string path = "mollow_out.csv";
    OutputFormat format = OutputFormat::Csv;
    bool include_complex = false;
};

/// Everything a CLI run needs. Absent blocks take the device defaults; an
/// absent pump block means no pump.
struct RunConfig
{
    DeviceParams device;
    PumpSpec pump;
    Axis probe{AxisKind::ProbeFreq, 4.2, 5.0, 201};
    std::optional<Axis> y_axis;
    int n_phases = 4;
    Engine engine = Engine::Response;
    OutputSpec output;
    CalibrationScan calibration;
    OracleConfig oracle;
    std::vector<OraclePoint> oracle_points = oracle_sample_points();
    double oracle_tolerance = 1e-3;

    GridSpec grid_spec() const;
};

/// Parses and validates a JSON run configuration. Unknown keys are rejected.
/// Throws ConfigError naming the offending field.
RunConfig parse_config(const nlohmann::json& doc);
RunConfig load_config(const std::filesystem::path& path);

} // namespace mollow
