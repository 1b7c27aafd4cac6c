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
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "phonodec/bath_correlations.hpp"
#include "phonodec/register_algebra.hpp"

namespace phonodec {

using DensityMatrix = Eigen::MatrixXcd;

/// Largest register for which the dense 4^N superoperator is built.
inline constexpr int kMaxSpectralQubits = 5;

/// Born-Markov generator
///   L(rho) = (i/hbar) [rho, H] + (1/hbar) sum_eta sum_ij Gamma^eta_ij
///            ([s_i^eta rho, s_j^-eta] + [s_i^eta, rho s_j^-eta]),
/// stored as H_nh = H - i K with K = sum Gamma_ij s_j^-eta s_i^eta and the
/// jump part diagonalised: sum_k lambda_k A_k rho A_k^dagger.
class Liouvillian {
 public:
  Liouvillian(const Eigen::MatrixXcd& hamiltonian, const Eigen::MatrixXcd& gamma_plus,
              const Eigen::MatrixXcd& gamma_minus);

  /// Rotating-frame generator (H_c removed) with the Lamb shift from `set`.
  static Liouvillian rotating_frame(const CorrelationSet& set, bool include_lamb_shift = true);
  /// Lab-frame generator with H_c = (E/2) S^z.
  static Liouvillian lab_frame(const CorrelationSet& set, bool include_lamb_shift = true);

  int n_qubits() const noexcept { return n_qubits_; }
  Eigen::Index dimension() const noexcept { return dim_; }

  DensityMatrix apply(const DensityMatrix& rho) const;

  /// Dense column-stacked superoperator: vec(L(rho)) = S vec(rho). N <= kMaxSpectralQubits.
  Eigen::MatrixXcd superoperator() const;

 private:
  struct Jump {
    double weight;   // 2 lambda_k / hbar
    SparseOp op;
    SparseOp op_adj;
  };

  int n_qubits_ = 0;
  Eigen::Index dim_ = 0;
  SparseOp h_nh_;       // -(i/hbar) (H - iK)
  SparseOp h_nh_adj_;   // its adjoint
  std::vector<Jump> jumps_;
};

/// The generator exactly as written, term by term, for given H_c + dH_c and
/// Gamma matrices.
DensityMatrix liouvillian_apply(const DensityMatrix& rho, const Eigen::MatrixXcd& carrier,
                                const Eigen::MatrixXcd& lamb_shift,
                                const Eigen::MatrixXcd& gamma_plus,
                                const Eigen::MatrixXcd& gamma_minus);

Eigen::MatrixXcd build_superoperator(const Eigen::MatrixXcd& carrier,
                                     const Eigen::MatrixXcd& lamb_shift,
                                     const Eigen::MatrixXcd& gamma_plus,
                                     const Eigen::MatrixXcd& gamma_minus);

/// d F / dt at t = 0 for rho(0) = |psi><psi|.
double fidelity_initial_slope(const Liouvillian& generator, const RegisterState& psi);

/// Normalised stationary state from the null space of the superoperator.
DensityMatrix steady_state(const Liouvillian& generator);

enum class EvolutionMethod { adaptive_step, spectral };

struct EvolveOptions {
  EvolutionMethod method = EvolutionMethod::adaptive_step;
  double rel_tol = 1e-9;
  double abs_tol = 1e-13;
  double initial_step = 0.0;   // 0: chosen from the generator norm
  std::size_t max_steps = 50'000'000;
  // Monitors; a breach throws NumericalError.
  double trace_tol = 1e-9;
  double hermiticity_tol = 1e-9;
  double min_eigenvalue_tol = 1e-9;
};

struct TrajectoryRow {
  double t = 0.0;          // ps
  double fidelity = 0.0;
  double trace_dev = 0.0;
  double min_eig = 0.0;
  double purity = 0.0;
};

struct TrajectoryRecord {
  std::vector<TrajectoryRow> rows;
  std::size_t steps_accepted = 0;
  std::size_t steps_rejected = 0;
};

/// Evolves rho0 under `generator` (rotating frame of H_c = (E/2) S^z when
/// `splitting` > 0; pass 0 if the generator is already in the lab frame) and
/// records the lab-frame fidelity with `reference` on `times`.
TrajectoryRecord evolve(const Liouvillian& generator, const DensityMatrix& rho0,
                        const RegisterState& reference, const std::vector<double>& times,
                        double splitting, const EvolveOptions& options = {});

/// Rotating-frame state mapped back to the lab frame of H_c = (E/2) S^z.
DensityMatrix to_lab_frame(const DensityMatrix& rotating, double splitting, double t);

/// Exact evolution through the eigendecomposition of the dense superoperator.
class SpectralPropagator {
 public:
  explicit SpectralPropagator(const Liouvillian& generator);

  /// Coefficients of vec(rho0) in the eigenbasis; throws NumericalError when
  /// the basis cannot represent rho0 to 1e-10.
  Eigen::VectorXcd expand(const DensityMatrix& rho0) const;
  DensityMatrix at(const Eigen::VectorXcd& coefficients, double t) const;

  const Eigen::VectorXcd& eigenvalues() const noexcept { return values_; }

 private:
  Eigen::Index dim_;
  Eigen::MatrixXcd vectors_;
  Eigen::VectorXcd values_;
  Eigen::FullPivLU<Eigen::MatrixXcd> lu_;
};

/// First time in (0, t_max] at which the lab-frame fidelity with `reference`
/// drops below `threshold`, located by log-grid bracketing and bisection to
/// relative precision 1e-10. Returns NaN if it never does.
double fidelity_crossing_time(const SpectralPropagator& propagator, const DensityMatrix& rho0,
                              const RegisterState& reference, double splitting, double threshold,
                              double t_min, double t_max);

/// Log-spaced grid from t_min to t_max inclusive.
std::vector<double> log_time_grid(double t_min, double t_max, int points_per_decade);

}  // namespace phonodec
