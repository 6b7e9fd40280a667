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

namespace mollow::kernels::scalar {

void matvec(const complex* a, const complex* x, complex* y, std::size_t rows, std::size_t cols)
{
    const double* ad = reinterpret_cast<const double*>(a);
    const double* xd = reinterpret_cast<const double*>(x);
    double* yd = reinterpret_cast<double*>(y);
    for (std::size_t i = 0; i < 2 * rows; ++i)
        yd[i] = 0.0;
    for (std::size_t j = 0; j < cols; ++j) {
        const double xr = xd[2 * j];
        const double xi = xd[2 * j + 1];
        const double* col = ad + 2 * j * rows;
        for (std::size_t i = 0; i < rows; ++i) {
            const double ar = col[2 * i];
            const double ai = col[2 * i + 1];
            yd[2 * i] += ar * xr - ai * xi;
            yd[2 * i + 1] += ar * xi + ai * xr;
        }
    }
}

complex dotu(const complex* a, const complex* b, std::size_t n)
{
    const double* ad = reinterpret_cast<const double*>(a);
    const double* bd = reinterpret_cast<const double*>(b);
    double re = 0.0;
    double im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double ar = ad[2 * i], ai = ad[2 * i + 1];
        const double br = bd[2 * i], bi = bd[2 * i + 1];
        re += ar * br - ai * bi;
        im += ar * bi + ai * br;
    }
    return {re, im};
}

} // namespace mollow::kernels::scalar
