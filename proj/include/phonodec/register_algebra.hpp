// Copyright 2026 The phonodec Authors
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

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "phonodec/core_model.hpp"

namespace phonodec {

using SparseOp = Eigen::SparseMatrix<Complex, Eigen::ColMajor>;

/// Hard cap on register size for dense 2^N operators.
inline constexpr int kMaxQubits = 10;

enum class Pauli { plus, minus, z };

/// Opposite ladder: plus <-> minus. z maps to itself.
Pauli conjugate(Pauli p);

/// Pure register state. Basis index b has qubit i (zero based) in bit N-1-i,
/// so qubit 0 is the most significant bit.
class RegisterState {
 public:
  /// Takes ownership of `amplitudes`; throws DomainError unless the size is a
  /// power of two in [2, 2^kMaxQubits] and the norm is 1 to 1e-12.
  explicit RegisterState(Eigen::VectorXcd amplitudes);

  /// Normalises `amplitudes` first (norm must be > 0).
  static RegisterState normalized(Eigen::VectorXcd amplitudes);
  static RegisterState basis(int n_qubits, std::size_t index);

  int n_qubits() const noexcept { return n_qubits_; }
  const Eigen::VectorXcd& amplitudes() const noexcept { return amplitudes_; }
  Eigen::MatrixXcd projector() const;

 private:
  Eigen::VectorXcd amplitudes_;
  int n_qubits_ = 0;
};

/// Disjoint pairing of all qubits (zero-based indices).
class DimerPartition {
 public:
  DimerPartition(int n_qubits, std::vector<std::pair<int, int>> pairs);

  /// (0,1), (2,3), ... ; the default encoding of the register.
  static DimerPartition adjacent(int n_qubits);

  int n_qubits() const noexcept { return n_qubits_; }
  const std::vector<std::pair<int, int>>& pairs() const noexcept { return pairs_; }

 private:
  int n_qubits_;
  std::vector<std::pair<int, int>> pairs_;
};

struct RegisterOperator {
  Eigen::MatrixXcd matrix;
  std::string label;
};

// Sparse building blocks shared with the Liouvillian.
SparseOp ladder_sparse(int qubit, Pauli kind, int n_qubits);
SparseOp collective_sparse(Pauli kind, int n_qubits);
/// sum_{eta} sum_{ij} M^eta_ij sigma_i^{-eta} sigma_j^{eta}
SparseOp bilinear_sparse(const Eigen::MatrixXcd& plus, const Eigen::MatrixXcd& minus);

RegisterOperator pauli_local(int qubit, Pauli kind, int n_qubits);
RegisterOperator collective_spin(Pauli kind, int n_qubits);
/// J^2 for J = S/2, eigenvalues j(j+1).
RegisterOperator total_spin_squared(int n_qubits);

/// Carrier Hamiltonian eps S^z with eps = E/2, so the single-qubit splitting is E.
RegisterOperator carrier_hamiltonian(int n_qubits, double splitting);

RegisterState singlet_dimer_state(const DimerPartition& partition);

/// H_eff = sum_eta sum_ij Gamma^eta_ij sigma_i^{-eta} sigma_j^{eta}.
RegisterOperator effective_hamiltonian(const Eigen::MatrixXcd& gamma_plus,
                                       const Eigen::MatrixXcd& gamma_minus);

/// Lamb-shift renormalisation; same bilinear structure as H_eff with Delta.
RegisterOperator lamb_shift_hamiltonian(const Eigen::MatrixXcd& delta_plus,
                                        const Eigen::MatrixXcd& delta_minus);

/// Variance of J^2 in `state`; zero iff the state is a total-spin eigenstate.
double total_spin_variance(const RegisterState& state);

/// First-order decoherence rate <psi|H_eff|psi> / hbar, 1/ps.
/// Throws PreconditionError unless `state` is a total-spin eigenstate
/// (J^2 variance < 1e-8).
double tau1_inverse(const RegisterState& state, const Eigen::MatrixXcd& gamma_plus,
                    const Eigen::MatrixXcd& gamma_minus);

/// 1 - (2/N) Re sum_{(i,j) in D} Gamma_ij / Gamma_11.
double correlation_factor_fD(const Eigen::MatrixXcd& gamma, const DimerPartition& partition);

/// Uncorrelated-register rate N Gamma_11 / hbar, 1/ps.
double uncorrelated_rate(const Eigen::MatrixXcd& gamma);

/// Throws DomainError unless `m` is square and Hermitian to `rel_tol`.
void require_hermitian(const Eigen::MatrixXcd& m, const char* name, double rel_tol = 1e-12);

double expectation(const RegisterState& state, const SparseOp& op);

}  // namespace phonodec
