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
#include <string>
#include <vector>

#include "mollow/config.hpp"
#include "mollow/response.hpp"
#include "mollow/sweep.hpp"

// Result files. CSV files open with '#' metadata lines (axis definitions,
// device, pump, engine) followed by one header row and the data; grids are
// written long-form in y-major order with complex r as (re_r, im_r) columns.
// JSON mirrors the same content with explicit axis arrays. The "created"
// timestamp is the only field that differs between identical runs.
namespace mollow::io {

std::string timestamp_now();

/// Shortest decimal form that reads back to the same double.
std::string format_double(double value);

void write_spectrum(const std::filesystem::path& path, const ReflectionSpectrum& spectrum,
                    OutputFormat format, bool include_complex, const std::string& created);

/// Writes the grid; overlay polylines go into the JSON document or, for CSV,
/// into the sibling file given by `overlay_path`.
void write_grid(const std::filesystem::path& path, const SweepGrid& grid, OutputFormat format,
                bool include_complex, const std::string& created);

std::filesystem::path overlay_path(const std::filesystem::path& path);

struct SpectrumTable
{
    std::vector<double> probe_ghz;
    std::vector<double> abs_r;
    std::vector<complex> r; ///< empty unless the file carries re/im columns
};

struct GridTable
{
    AxisKind x_kind = AxisKind::ProbeFreq;
    AxisKind y_kind = AxisKind::PumpPowerDbm;
    std::vector<double> x_values;
    std::vector<double> y_values;
    std::vector<double> abs_r; ///< y-major
    std::vector<complex> r;    ///< empty unless the file carries re/im columns
};

/// Readers detect the format from the first non-blank character.
SpectrumTable read_spectrum(const std::filesystem::path& path);
GridTable read_grid(const std::filesystem::path& path);

void write_calibration(const std::filesystem::path& path, const CalibrationResult& result,
                       OutputFormat format, const std::string& created);

struct OracleRow
{
    int index = 0;
    double rabi_mhz = 0.0;
    double detuning_mhz = 0.0;
    double probe_ghz = 0.0;
    complex r_response;
    complex r_oracle;
    double difference = 0.0;
};

void write_oracle_table(const std::filesystem::path& path, const std::vector<OracleRow>& rows,
                        OutputFormat format, const std::string& created);

} // namespace mollow::io
