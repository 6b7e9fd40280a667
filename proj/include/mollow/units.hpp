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

#include <numbers>

// User-facing quantities are cyclic (GHz, MHz). Everything inside the
// dynamics is angular with time in nanoseconds, so rates are rad/ns.
namespace mollow::units {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

constexpr double angular_from_ghz(double f_ghz) { return two_pi * f_ghz; }
constexpr double angular_from_mhz(double f_mhz) { return two_pi * f_mhz * 1e-3; }
constexpr double ghz_from_angular(double w) { return w / two_pi; }
constexpr double mhz_from_angular(double w) { return w / two_pi * 1e3; }

constexpr double ghz_from_mhz(double f_mhz) { return f_mhz * 1e-3; }
constexpr double mhz_from_ghz(double f_ghz) { return f_ghz * 1e3; }

} // namespace mollow::units
