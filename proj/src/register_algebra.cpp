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

#include "phonodec/register_algebra.hpp"

#include <cmath>
#include <sstream>

#include "phonodec/error.hpp"
#include "phonodec/units.hpp"

namespace phonodec {
namespace {

int qubits_for_dimension(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim || n < 1 || n > kMaxQubits) {
    std::ostringstream msg;
    msg << "state dimension " << dim << " is not 2^N with 1 <= N <= " << kMaxQubits;
    throw DomainError(msg.str());
  }
  return n;
}

void check_register_size(int n_qubits) {
  if (n_qubits < 1 || n_qubits > kMaxQubits) {
    throw DomainError("register size must be in [1, " + std::to_string(kMaxQubits) + "], got " +
                      std::to_string(n_qubits));
  }
}

Eigen::Index dim_of(int n_qubits) { return Eigen::Index{1} << n_qubits; }

}  // namespace

Pauli conjugate(Pauli p) {
  switch (p) {
    case Pauli::plus: return Pauli::minus;
    case Pauli::minus: return Pauli::plus;
    case Pauli::z: return Pauli::z;
  }
  return p;
}

RegisterState::RegisterState(Eigen::VectorXcd amplitudes)
    : amplitudes_(std::move(amplitudes)), n_qubits_(qubits_for_dimension(amplitudes_.size())) {
  const double norm = amplitudes_.norm();
  if (std::abs(norm - 1.0) > 1e-12) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "register state must have unit norm (got " << norm << ")";
    throw DomainError(msg.str());
  }
}

RegisterState RegisterState::normalized(Eigen::VectorXcd amplitudes) {
  const double norm = amplitudes.norm();
  if (!(norm > 0.0)) throw DomainError("cannot normalise a zero vector");
  amplitudes /= norm;
  return RegisterState(std::move(amplitudes));
}

RegisterState RegisterState::basis(int n_qubits, std::size_t index) {
  check_register_size(n_qubits);
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim_of(n_qubits));
  if (static_cast<Eigen::Index>(index) >= v.size()) throw DomainError("basis index out of range");
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return RegisterState(std::move(v));
}

Eigen::MatrixXcd RegisterState::projector() const { return amplitudes_ * amplitudes_.adjoint(); }

DimerPartition::DimerPartition(int n_qubits, std::vector<std::pair<int, int>> pairs)
    : n_qubits_(n_qubits), pairs_(std::move(pairs)) {
  check_register_size(n_qubits);
  if (n_qubits % 2 != 0) throw DomainError("dimer partition needs an even number of qubits");
  if (static_cast<int>(pairs_.size()) * 2 != n_qubits) {
    throw DomainError("dimer partition must contain exactly N/2 pairs");
  }
  std::vector<bool> seen(static_cast<std::size_t>(n_qubits), false);
  for (const auto& [a, b] : pairs_) {
    for (int q : {a, b}) {
      if (q < 0 || q >= n_qubits) throw DomainError("dimer partition index out of range");
      if (seen[static_cast<std::size_t>(q)]) {
        throw DomainError("qubit " + std::to_string(q) + " appears twice in dimer partition");
      }
      seen[static_cast<std::size_t>(q)] = true;
    }
  }
}

DimerPartition DimerPartition::adjacent(int n_qubits) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i + 1 < n_qubits; i += 2) pairs.emplace_back(i, i + 1);
  return DimerPartition(n_qubits, std::move(pairs));
}

SparseOp ladder_sparse(int qubit, Pauli kind, int n_qubits) {
  check_register_size(n_qubits);
  if (qubit < 0 || qubit >= n_qubits) {
    throw DomainError("qubit index " + std::to_string(qubit) + " out of range for N=" +
                      std::to_string(n_qubits));
  }
  const Eigen::Index dim = dim_of(n_qubits);
  const Eigen::Index bit = Eigen::Index{1} << (n_qubits - 1 - qubit);
  std::vector<Eigen::Triplet<Complex>> entries;
  entries.reserve(static_cast<std::size_t>(dim));
  for (Eigen::Index col = 0; col < dim; ++col) {
    const bool up = (col & bit) != 0;
    switch (kind) {
      case Pauli::plus:
        if (!up) entries.emplace_back(col | bit, col, 1.0);
        break;
      case Pauli::minus:
        if (up) entries.emplace_back(col & ~bit, col, 1.0);
        break;
      case Pauli::z:
        entries.emplace_back(col, col, up ? 1.0 : -1.0);
        break;
    }
  }
  SparseOp op(dim, dim);
  op.setFromTriplets(entries.begin(), entries.end());
  return op;
}

SparseOp collective_sparse(Pauli kind, int n_qubits) {
  SparseOp sum(dim_of(n_qubits), dim_of(n_qubits));
  for (int i = 0; i < n_qubits; ++i) sum += ladder_sparse(i, kind, n_qubits);
  return sum;
}

SparseOp bilinear_sparse(const Eigen::MatrixXcd& plus, const Eigen::MatrixXcd& minus) {
  if (plus.rows() != plus.cols() || minus.rows() != plus.rows() || minus.cols() != plus.cols()) {
    throw DomainError("bilinear form needs two square matrices of equal size");
  }
  const int n = static_cast<int>(plus.rows());
  check_register_size(n);
  std::vector<SparseOp> up, down;
  for (int i = 0; i < n; ++i) {
    up.push_back(ladder_sparse(i, Pauli::plus, n));
    down.push_back(ladder_sparse(i, Pauli::minus, n));
  }
  SparseOp out(dim_of(n), dim_of(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (plus(i, j) != 0.0) out += plus(i, j) * SparseOp(down[i] * up[j]);
      if (minus(i, j) != 0.0) out += minus(i, j) * SparseOp(up[i] * down[j]);
    }
  }
  out.prune(Complex(0.0));
  return out;
}

RegisterOperator pauli_local(int qubit, Pauli kind, int n_qubits) {
  const char* names[] = {"sigma+", "sigma-", "sigmaz"};
  return {Eigen::MatrixXcd(ladder_sparse(qubit, kind, n_qubits)),
          std::string(names[static_cast<int>(kind)]) + "_" + std::to_string(qubit + 1)};
}

RegisterOperator collective_spin(Pauli kind, int n_qubits) {
  const char* names[] = {"S+", "S-", "Sz"};
  return {Eigen::MatrixXcd(collective_sparse(kind, n_qubits)), names[static_cast<int>(kind)]};
}

namespace {

SparseOp total_spin_squared_sparse(int n_qubits) {
  const SparseOp sp = collective_sparse(Pauli::plus, n_qubits);
  const SparseOp sm = collective_sparse(Pauli::minus, n_qubits);
  const SparseOp sz = collective_sparse(Pauli::z, n_qubits);
  // J^2 = Jz^2 + (J+J- + J-J+)/2 with Jz = Sz/2 and J+- = S+-
  SparseOp j2 = 0.25 * SparseOp(sz * sz) + 0.5 * SparseOp(sp * sm) + 0.5 * SparseOp(sm * sp);
  return j2;
}

}  // namespace

RegisterOperator total_spin_squared(int n_qubits) {
  return {Eigen::MatrixXcd(total_spin_squared_sparse(n_qubits)), "J^2"};
}

RegisterOperator carrier_hamiltonian(int n_qubits, double splitting) {
  return {Eigen::MatrixXcd(0.5 * splitting * collective_sparse(Pauli::z, n_qubits)), "H_c"};
}

RegisterState singlet_dimer_state(const DimerPartition& partition) {
  const int n = partition.n_qubits();
  const Eigen::Index dim = dim_of(n);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(dim);
  const double amp = std::pow(2.0, -0.5 * static_cast<double>(partition.pairs().size()));
  for (Eigen::Index b = 0; b < dim; ++b) {
    double sign = 1.0;
    bool in_support = true;
    for (const auto& [i, j] : partition.pairs()) {
      const bool bi = (b >> (n - 1 - i)) & 1;
      const bool bj = (b >> (n - 1 - j)) & 1;
      if (bi == bj) {
        in_support = false;
        break;
      }
      // (|01> - |10>)_{ij}
      if (bi) sign = -sign;
    }
    if (in_support) amps(b) = sign * amp;
  }
  return RegisterState(std::move(amps));
}

void require_hermitian(const Eigen::MatrixXcd& m, const char* name, double rel_tol) {
  if (m.rows() != m.cols()) throw DomainError(std::string(name) + " must be square");
  const double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  const double dev = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (dev > rel_tol * scale) {
    std::ostringstream msg;
    msg << name << " is not Hermitian (max |M - M^dagger| = " << dev << ")";
    throw DomainError(msg.str());
  }
}

RegisterOperator effective_hamiltonian(const Eigen::MatrixXcd& gamma_plus,
                                       const Eigen::MatrixXcd& gamma_minus) {
  require_hermitian(gamma_plus, "Gamma+");
  require_hermitian(gamma_minus, "Gamma-");
  return {Eigen::MatrixXcd(bilinear_sparse(gamma_plus, gamma_minus)), "H_eff"};
}

RegisterOperator lamb_shift_hamiltonian(const Eigen::MatrixXcd& delta_plus,
                                        const Eigen::MatrixXcd& delta_minus) {
  require_hermitian(delta_plus, "Delta+");
  require_hermitian(delta_minus, "Delta-");
  return {Eigen::MatrixXcd(bilinear_sparse(delta_plus, delta_minus)), "dH_c"};
}

double expectation(const RegisterState& state, const SparseOp& op) {
  const Eigen::VectorXcd& psi = state.amplitudes();
  return psi.dot(op * psi).real();
}

double total_spin_variance(const RegisterState& state) {
  const SparseOp j2 = total_spin_squared_sparse(state.n_qubits());
  const Eigen::VectorXcd j2psi = j2 * state.amplitudes();
  const double mean = state.amplitudes().dot(j2psi).real();
  return std::max(0.0, j2psi.squaredNorm() - mean * mean);
}

double tau1_inverse(const RegisterState& state, const Eigen::MatrixXcd& gamma_plus,
                    const Eigen::MatrixXcd& gamma_minus) {
  if (gamma_plus.rows() != state.n_qubits()) {
    throw DomainError("Gamma matrices do not match the register size");
  }
  require_hermitian(gamma_plus, "Gamma+");
  require_hermitian(gamma_minus, "Gamma-");
  const double variance = total_spin_variance(state);
  if (variance >= 1e-8) {
    std::ostringstream msg;
    msg << "tau1_inverse requires a total-spin eigenstate; J^2 variance is " << variance;
    throw PreconditionError(msg.str());
  }
  return expectation(state, bilinear_sparse(gamma_plus, gamma_minus)) / units::kHbar;
}

double correlation_factor_fD(const Eigen::MatrixXcd& gamma, const DimerPartition& partition) {
  if (gamma.rows() != partition.n_qubits() || gamma.cols() != partition.n_qubits()) {
    throw DomainError("Gamma size does not match the dimer partition");
  }
  const Complex g11 = gamma(0, 0);
  if (g11 == 0.0) throw DomainError("f_D undefined: Gamma_11 is zero");
  Complex sum = 0.0;
  for (const auto& [i, j] : partition.pairs()) sum += gamma(i, j) / g11;
  return 1.0 - 2.0 / partition.n_qubits() * sum.real();
}

double uncorrelated_rate(const Eigen::MatrixXcd& gamma) {
  return static_cast<double>(gamma.rows()) * gamma(0, 0).real() / units::kHbar;
}

}  // namespace phonodec
