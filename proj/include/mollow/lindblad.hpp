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

#include "mollow/model.hpp"
#include "mollow/operator.hpp"

namespace mollow {

/// A validated density matrix: Hermitian, unit trace, positive semidefinite
/// within the given tolerances.
class DensityMatrix
{
public:
    static constexpr double default_tolerance = 1e-10;
    static constexpr double positivity_tolerance = 1e-8;

    /// Throws std::invalid_argument if `rho` violates an invariant.
    explicit DensityMatrix(Operator rho, double tolerance = default_tolerance);

    /// |level><level|.
    static DensityMatrix pure(int dim, int level);

    const Operator& matrix() const { return m_rho; }
    int dim() const { return static_cast<int>(m_rho.rows()); }
    double population(int level) const { return m_rho(level, level).real(); }
    complex operator()(int row, int col) const { return m_rho(row, col); }

private:
    Operator m_rho;
};

/// Dense generator acting on column-stacked density matrices; vec(rho) has
/// element (i, j) at index i + j*N, so vec(A X B) = (B^T kron A) vec(X).
class Liouvillian
{
public:
    Liouvillian() = default;
    Liouvillian(int dim, Eigen::MatrixXcd matrix);

    static Liouvillian zero(int dim);

    /// Hilbert-space dimension N; the matrix is N^2 x N^2.
    int dim() const { return m_dim; }
    Eigen::Index size() const { return m_matrix.rows(); }
    const Eigen::MatrixXcd& matrix() const { return m_matrix; }

    /// L rho, as an operator.
    Operator apply(const Operator& rho) const;

    Liouvillian& operator+=(const Liouvillian& other);
    friend Liouvillian operator+(Liouvillian a, const Liouvillian& b) { return a += b; }

private:
    int m_dim = 0;
    Eigen::MatrixXcd m_matrix;
};

/// Pump-frame Hamiltonian in rad/ns:
/// H = sum_m Delta_m |m><m| - i (Omega/2)(Sigma_+ e^{i phi} - Sigma_- e^{-i phi}).
Operator hamiltonian(const PumpFrameModel& model);

/// -i[H, .]
Liouvillian commutator_superoperator(const Operator& h);

/// rate * D[op] with D[X] rho = X rho X^dag - {X^dag X, rho}/2.
Liouvillian dissipator(const Operator& op, double rate);

/// Full generator: coherent part plus m*Gamma_1 D[|m-1><m|] for every level
/// and pure dephasing 2 Gamma_phi D[n], which dephases the 0-1 coherence at
/// Gamma_phi so that gamma = Gamma_1/2 + Gamma_phi.
Liouvillian build_liouvillian(const PumpFrameModel& model, const DeviceParams& params);

/// Unique stationary state from the bordered system (first row of L replaced
/// by the trace functional). Throws DegenerateSteadyState when the second
/// smallest singular value of L is below 1e-9 of the largest.
DensityMatrix steady_state(const Liouvillian& l);

/// exp(L t) rho0 with t in ns, by scaling and squaring.
DensityMatrix propagate(const Liouvillian& l, const DensityMatrix& rho0, double t_ns);

} // namespace mollow
