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

#include "mollow/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mollow::kernels {

namespace {

bool cpu_has_avx2()
{
#if defined(MOLLOW_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend initial_backend()
{
    if (const char* env = std::getenv("MOLLOW_KERNELS")) {
        const std::string_view name(env);
        if (name == "scalar")
            return Backend::Scalar;
        if (name == "avx2" && cpu_has_avx2())
            return Backend::Avx2;
    }
    return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

std::atomic<Backend>& current()
{
    static std::atomic<Backend> backend{initial_backend()};
    return backend;
}

} // namespace

const char* backend_name(Backend backend)
{
    switch (backend) {
    case Backend::Scalar:
        return "scalar";
    case Backend::Avx2:
        return "avx2";
    }
    return "unknown";
}

bool backend_available(Backend backend)
{
    return backend == Backend::Scalar || cpu_has_avx2();
}

Backend active_backend() { return current().load(std::memory_order_relaxed); }

void set_backend(Backend backend)
{
    if (!backend_available(backend))
        throw std::invalid_argument(std::string("kernel backend unavailable: ") +
                                    backend_name(backend));
    current().store(backend, std::memory_order_relaxed);
}

void matvec(std::span<const complex> a, std::span<const complex> x, std::span<complex> y)
{
    const std::size_t cols = x.size();
    const std::size_t rows = y.size();
    if (a.size() != rows * cols)
        throw std::invalid_argument("matvec: matrix size does not match vectors");
#if defined(MOLLOW_HAVE_AVX2)
    if (active_backend() == Backend::Avx2) {
        avx2::matvec(a.data(), x.data(), y.data(), rows, cols);
        return;
    }
#endif
    scalar::matvec(a.data(), x.data(), y.data(), rows, cols);
}

complex dotu(std::span<const complex> a, std::span<const complex> b)
{
    if (a.size() != b.size())
        throw std::invalid_argument("dotu: length mismatch");
#if defined(MOLLOW_HAVE_AVX2)
    if (active_backend() == Backend::Avx2)
        return avx2::dotu(a.data(), b.data(), a.size());
#endif
    return scalar::dotu(a.data(), b.data(), a.size());
}

} // namespace mollow::kernels
