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

#include <Eigen/Dense>

namespace mollow {

using complex = std::complex<double>;

/// Dense operator on the N-level Hilbert space.
using Operator = Eigen::MatrixXcd;

/// Column-stacked density matrix: element (i, j) lives at i + j*N.
using StateVector = Eigen::VectorXcd;

inline StateVector vec(const Operator& rho)
{
    return Eigen::Map<const StateVector>(rho.data(), rho.size());
}

inline Operator unvec(const StateVector& v, Eigen::Index dim)
{
    return Eigen::Map<const Operator>(v.data(), dim, dim);
}

/// Largest absolute entry of A - A^dagger.
inline double hermiticity_defect(const Operator& a)
{
    return (a - a.adjoint()).cwiseAbs().maxCoeff();
}

/// Level projector |row><col|.
inline Operator ket_bra(Eigen::Index dim, Eigen::Index row, Eigen::Index col)
{
    Operator op = Operator::Zero(dim, dim);
    op(row, col) = 1.0;
    return op;
}

} // namespace mollow
