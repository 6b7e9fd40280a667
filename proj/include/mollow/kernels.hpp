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

#include <complex>
#include <cstddef>
#include <span>

// Complex inner loops of the time-domain code paths. Each kernel has a
// portable scalar reference and, where the CPU supports it, an AVX2+FMA
// variant chosen once at startup. The variants agree to rounding; they are
// not bitwise identical (FMA contracts differently).
namespace mollow::kernels {

using complex = std::complex<double>;

enum class Backend
{
    Scalar,
    Avx2,
};

const char* backend_name(Backend backend);

/// True if the backend was compiled in and the running CPU supports it.
bool backend_available(Backend backend);

/// Backend currently used by `matvec` and `dotu`. Initialised from the
/// MOLLOW_KERNELS environment variable ("scalar" or "avx2") when set, else
/// the best available one.
Backend active_backend();

/// Switch backends. Not meant to be called while other threads are inside a
/// kernel. Throws std::invalid_argument if the backend is unavailable.
void set_backend(Backend backend);

/// y = A x with A column-major of shape rows x (x.size()).
void matvec(std::span<const complex> a, std::span<const complex> x, std::span<complex> y);

/// sum_i a_i b_i (no conjugation).
complex dotu(std::span<const complex> a, std::span<const complex> b);

namespace scalar {
void matvec(const complex* a, const complex* x, complex* y, std::size_t rows, std::size_t cols);
complex dotu(const complex* a, const complex* b, std::size_t n);
} // namespace scalar

namespace avx2 {
void matvec(const complex* a, const complex* x, complex* y, std::size_t rows, std::size_t cols);
complex dotu(const complex* a, const complex* b, std::size_t n);
} // namespace avx2

} // namespace mollow::kernels
