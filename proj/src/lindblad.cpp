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

#include "mollow/lindblad.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include <unsupported/Eigen/KroneckerProduct>
#include <unsupported/Eigen/MatrixFunctions>

#include "mollow/errors.hpp"
#include "mollow/kernels.hpp"
#include "mollow/units.hpp"

namespace mollow {

DensityMatrix::DensityMatrix(Operator rho, double tolerance) : m_rho(std::move(rho))
{
    if (m_rho.rows() != m_rho.cols() || m_rho.rows() < 2)
        throw std::invalid_argument("density matrix must be square with dim >= 2");
    if (!m_rho.allFinite())
        throw std::invalid_argument("density matrix has non-finite entries");
    if (hermiticity_defect(m_rho) > tolerance)
        throw std::invalid_argument("density matrix is not Hermitian");
    if (std::abs(m_rho.trace() - 1.0) > tolerance)
        throw std::invalid_argument("density matrix trace differs from one");
    const Operator hermitian = 0.5 * (m_rho + m_rho.adjoint());
    Eigen::SelfAdjointEigenSolver<Operator> eig(hermitian, Eigen::EigenvaluesOnly);
    if (eig.eigenvalues().minCoeff() < -positivity_tolerance)
        throw std::invalid_argument("density matrix has a negative eigenvalue");
}

DensityMatrix DensityMatrix::pure(int dim, int level)
{
    return DensityMatrix(ket_bra(dim, level, level));
}

Liouvillian::Liouvillian(int dim, Eigen::MatrixXcd matrix) : m_dim(dim), m_matrix(std::move(matrix))
{
    const Eigen::Index n2 = static_cast<Eigen::Index>(dim) * dim;
    if (m_matrix.rows() != n2 || m_matrix.cols() != n2)
        throw DimensionMismatch("Liouvillian matrix must be N^2 x N^2 for N = " +
                                std::to_string(dim));
}

Liouvillian Liouvillian::zero(int dim)
{
    const Eigen::Index n2 = static_cast<Eigen::Index>(dim) * dim;
    return Liouvillian(dim, Eigen::MatrixXcd::Zero(n2, n2));
}

Operator Liouvillian::apply(const Operator& rho) const
{
    if (rho.rows() != m_dim || rho.cols() != m_dim)
        throw DimensionMismatch("state dimension does not match the Liouvillian");
    Operator out(m_dim, m_dim);
    kernels::matvec({m_matrix.data(), static_cast<std::size_t>(m_matrix.size())},
                    {rho.data(), static_cast<std::size_t>(rho.size())},
                    {out.data(), static_cast<std::size_t>(out.size())});
    return out;
}

Liouvillian& Liouvillian::operator+=(const Liouvillian& other)
{
    if (other.m_dim != m_dim)
        throw DimensionMismatch("cannot add Liouvillians of different dimension");
    m_matrix += other.m_matrix;
    return *this;
}

Operator hamiltonian(const PumpFrameModel& model)
{
    const int n = model.n_levels();
    Operator h = Operator::Zero(n, n);
    for (int m = 0; m < n; ++m)
        h(m, m) = model.detunings[static_cast<std::size_t>(m)];
    const double omega = units::angular_from_mhz(model.rabi_mhz);
    const complex phase = std::polar(1.0, model.pump_phase);
    h += complex(0, -omega / 2.0) *
         (model.sigma_plus * phase - model.sigma_minus * std::conj(phase));
    return h;
}

namespace {

// vec(A X) = (I kron A) vec(X)
Eigen::MatrixXcd left_multiply(const Operator& a)
{
    return Eigen::kroneckerProduct(Operator::Identity(a.rows(), a.cols()), a).eval();
}

// vec(X A) = (A^T kron I) vec(X)
Eigen::MatrixXcd right_multiply(const Operator& a)
{
    return Eigen::kroneckerProduct(a.transpose(), Operator::Identity(a.rows(), a.cols())).eval();
}

} // namespace

Liouvillian commutator_superoperator(const Operator& h)
{
    const int n = static_cast<int>(h.rows());
    return Liouvillian(n, complex(0, -1) * (left_multiply(h) - right_multiply(h)));
}

Liouvillian dissipator(const Operator& op, double rate)
{
    if (!(rate >= 0))
        throw std::invalid_argument("dissipator rate must be non-negative");
    const int n = static_cast<int>(op.rows());
    if (rate == 0)
        return Liouvillian::zero(n);
    const Operator xdx = op.adjoint() * op;
    // vec(X rho X^dag) = (conj(X) kron X) vec(rho)
    Eigen::MatrixXcd d = Eigen::kroneckerProduct(op.conjugate(), op).eval();
    d -= 0.5 * left_multiply(xdx);
    d -= 0.5 * right_multiply(xdx);
    return Liouvillian(n, rate * d);
}

Liouvillian build_liouvillian(const PumpFrameModel& model, const DeviceParams& params)
{
    const int n = model.n_levels();
    if (n != params.n_levels)
        throw DimensionMismatch("model has " + std::to_string(n) + " levels, device has " +
                                std::to_string(params.n_levels));

    Liouvillian l = commutator_superoperator(hamiltonian(model));
    const double gamma1 = units::angular_from_mhz(params.gamma1_mhz);
    for (int m = 1; m < n; ++m)
        l += dissipator(ket_bra(n, m - 1, m), m * gamma1);
    const double gamma_phi = units::angular_from_mhz(params.gamma_phi_mhz);
    l += dissipator(number_operator(n), 2.0 * gamma_phi);
    return l;
}

DensityMatrix steady_state(const Liouvillian& l)
{
    const int n = l.dim();
    const Eigen::Index n2 = l.size();

    Eigen::MatrixXcd bordered = l.matrix();
    bordered.row(0).setZero();
    for (int i = 0; i < n; ++i)
        bordered(0, i + i * n) = 1.0;
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(n2);
    rhs(0) = 1.0;

    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(bordered);
    const Eigen::VectorXd pivots = lu.matrixLU().diagonal().cwiseAbs();
    if (!(lu.rcond() > 1e-9) || !(pivots.minCoeff() > 1e-9 * pivots.maxCoeff())) {
        Eigen::JacobiSVD<Eigen::MatrixXcd> svd(l.matrix());
        const auto& sv = svd.singularValues(); // descending
        if (sv(n2 - 2) < 1e-9 * sv(0))
            throw DegenerateSteadyState("Liouvillian null space has dimension > 1 (sigma_2/sigma_max = " +
                                        std::to_string(sv(n2 - 2) / sv(0)) + ")");
    }
    const Eigen::VectorXcd x = lu.solve(rhs);
    if (!x.allFinite())
        throw DegenerateSteadyState("steady-state solve produced non-finite values");

    const double residual = (l.matrix() * x).norm();
    const double scale = l.matrix().norm() * x.norm();
    if (residual > 1e-10 * scale)
        throw Error("steady-state residual " + std::to_string(residual / scale) +
                    " exceeds 1e-10");

    Operator rho = unvec(x, n);
    rho = 0.5 * (rho + rho.adjoint());
    rho /= rho.trace().real();
    return DensityMatrix(std::move(rho));
}

DensityMatrix propagate(const Liouvillian& l, const DensityMatrix& rho0, double t_ns)
{
    if (!(t_ns >= 0))
        throw std::invalid_argument("propagation time must be non-negative");
    if (rho0.dim() != l.dim())
        throw DimensionMismatch("state dimension does not match the Liouvillian");
    if (t_ns == 0)
        return rho0;

    const Eigen::MatrixXcd step = (l.matrix() * t_ns).exp();
    const Operator& in = rho0.matrix();
    Operator out(in.rows(), in.cols());
    kernels::matvec({step.data(), static_cast<std::size_t>(step.size())},
                    {in.data(), static_cast<std::size_t>(in.size())},
                    {out.data(), static_cast<std::size_t>(out.size())});
    return DensityMatrix(std::move(out), 1e-8);
}

} // namespace mollow
