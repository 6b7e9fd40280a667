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

#include <stdexcept>
#include <string>

namespace mollow {

/// Base class for every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

/// E_J/E_C below the transmon threshold; the asymptotic level formula no
/// longer holds.
class TransmonRegimeError : public Error
{
public:
    using Error::Error;
};

class DimensionMismatch : public Error
{
public:
    using Error::Error;
};

/// The Liouvillian has more than one stationary state.
class DegenerateSteadyState : public Error
{
public:
    using Error::Error;
};

class ResolventSingular : public Error
{
public:
    using Error::Error;
};

/// Doubling the oracle probe amplitude moved r by more than the tolerance.
class LinearityViolation : public Error
{
public:
    using Error::Error;
};

/// Demodulated oracle amplitude still drifting between windows.
class ConvergenceFailure : public Error
{
public:
    using Error::Error;
};

/// Invalid user-facing input. `field()` names the offending entry.
class ConfigError : public Error
{
public:
    ConfigError(std::string field, const std::string& message)
        : Error(field + ": " + message), m_field(std::move(field))
    {
    }

    const std::string& field() const { return m_field; }

private:
    std::string m_field;
};

} // namespace mollow
