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

#include <immintrin.h>

// Two complex doubles per 256-bit register, interleaved (re, im, re, im).
namespace mollow::kernels::avx2 {

namespace {

// (ar + i ai)(xr + i xi) for both lanes of `a`, with x broadcast.
inline __m256d cmul_broadcast(__m256d a, __m256d xr, __m256d xi)
{
    const __m256d swapped = _mm256_permute_pd(a, 0b0101); // (ai, ar, ...)
    return _mm256_fmaddsub_pd(a, xr, _mm256_mul_pd(swapped, xi));
}

} // namespace

void matvec(const complex* a, const complex* x, complex* y, std::size_t rows, std::size_t cols)
{
    const double* ad = reinterpret_cast<const double*>(a);
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    const std::size_t pairs = rows / 2;
    const bool odd = rows % 2 != 0;

    for (std::size_t i = 0; i < 2 * rows; ++i)
        yd[i] = 0.0;

    for (std::size_t j = 0; j < cols; ++j) {
        const __m256d xr = _mm256_set1_pd(xd[2 * j]);
        const __m256d xi = _mm256_set1_pd(xd[2 * j + 1]);
        const double* col = ad + 2 * j * rows;
        for (std::size_t p = 0; p < pairs; ++p) {
            const __m256d av = _mm256_loadu_pd(col + 4 * p);
            const __m256d acc = _mm256_loadu_pd(yd + 4 * p);
            _mm256_storeu_pd(yd + 4 * p, _mm256_add_pd(acc, cmul_broadcast(av, xr, xi)));
        }
        if (odd) {
            const std::size_t i = rows - 1;
            const double ar = col[2 * i], ai = col[2 * i + 1];
            yd[2 * i] += ar * xd[2 * j] - ai * xd[2 * j + 1];
            yd[2 * i + 1] += ar * xd[2 * j + 1] + ai * xd[2 * j];
        }
    }
}

complex dotu(const complex* a, const complex* b, std::size_t n)
{
    const double* ad = reinterpret_cast<const double*>(a);
    const double* bd = reinterpret_cast<const double*>(b);
    __m256d acc_rr = _mm256_setzero_pd(); // (ar br, ai bi, ...)
    __m256d acc_ri = _mm256_setzero_pd(); // (ar bi, ai br, ...)
    const std::size_t pairs = n / 2;
    for (std::size_t p = 0; p < pairs; ++p) {
        const __m256d av = _mm256_loadu_pd(ad + 4 * p);
        const __m256d bv = _mm256_loadu_pd(bd + 4 * p);
        acc_rr = _mm256_fmadd_pd(av, bv, acc_rr);
        acc_ri = _mm256_fmadd_pd(av, _mm256_permute_pd(bv, 0b0101), acc_ri);
    }
    alignas(32) double rr[4];
    alignas(32) double ri[4];
    _mm256_store_pd(rr, acc_rr);
    _mm256_store_pd(ri, acc_ri);
    double re = (rr[0] + rr[2]) - (rr[1] + rr[3]);
    double im = (ri[0] + ri[2]) + (ri[1] + ri[3]);
    if (n % 2 != 0) {
        const std::size_t i = n - 1;
        re += ad[2 * i] * bd[2 * i] - ad[2 * i + 1] * bd[2 * i + 1];
        im += ad[2 * i] * bd[2 * i + 1] + ad[2 * i + 1] * bd[2 * i];
    }
    return {re, im};
}

} // namespace mollow::kernels::avx2
