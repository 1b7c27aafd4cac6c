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

#include <cstdint>
#include <Eigen/Dense>

#include "phonodec/core_model.hpp"
#include "phonodec/quadrature.hpp"

namespace phonodec {

/// Phonon branch of a bath matrix: absorption carries n, emission carries n + 1.
enum class Process { absorption, emission };

/// Occupation weight n + theta for the process at temperature T.
double thermal_weight(Process process, double energy, double temperature);

struct BathSettings {
  quad::Options angular{1e-10, 18};
  quad::Options radial{1e-9, 16};
  double cutoff_multiplier = 10.0;   // radial PV integral runs to cutoff_multiplier * q_shell
  double pv_window_fraction = 0.5;   // half-width of the PV window in units of q_shell
};

/// Gamma^(+), Gamma^(-), Delta^(+), Delta^(-) in meV, plus the device they describe.
struct CorrelationSet {
  Eigen::MatrixXcd gamma_plus;
  Eigen::MatrixXcd gamma_minus;
  Eigen::MatrixXcd delta_plus;
  Eigen::MatrixXcd delta_minus;
  ArrayGeometry geometry{1, 4.0, 5.0, 0.0};
  MaterialParams materials;
  double temperature = 0.0;

  int n_dots() const { return static_cast<int>(gamma_plus.rows()); }
  const Eigen::MatrixXcd& gamma(Process p) const {
    return p == Process::absorption ? gamma_plus : gamma_minus;
  }
  const Eigen::MatrixXcd& delta(Process p) const {
    return p == Process::absorption ? delta_plus : delta_minus;
  }
};

/// Solid-angle integral over the sphere |q| = q of |M_par|^2 M_z^2 cos(q_z dz).
///
/// The azimuthal average of |M_par|^2 is done in closed form, leaving an
/// adaptive integral over cos(theta).
double shell_angular_integral(double q, double dz, double oscillator_len, double well_width,
                              const quad::Options& options);

/// Dissipative correlation matrix Gamma^(process) (meV): the resonant-shell
/// part of the bath sum. Real symmetric and Toeplitz for a uniform array.
Eigen::MatrixXcd gamma_matrix(Process process, const ArrayGeometry& geometry,
                              const MaterialParams& materials, double temperature,
                              const BathSettings& settings = {});

/// Coherent (Lamb-shift) correlation matrix Delta^(process) (meV): the
/// principal-value radial integral over all acoustic modes.
Eigen::MatrixXcd delta_matrix(Process process, const ArrayGeometry& geometry,
                              const MaterialParams& materials, double temperature,
                              const BathSettings& settings = {});

CorrelationSet compute_correlations(const ArrayGeometry& geometry, const MaterialParams& materials,
                                    double temperature, const BathSettings& settings = {},
                                    bool include_lamb_shift = true);

/// Total population relaxation rate 2 (Gamma+_11 + Gamma-_11) / hbar of one dot, 1/ps.
double single_dot_rate(double splitting, double well_width, const MaterialParams& materials,
                       double temperature, const BathSettings& settings = {});

struct OracleResult {
  Eigen::MatrixXcd value;
  Eigen::MatrixXd standard_error;   // per entry, |complex| standard error
  std::uint64_t samples = 0;
};

/// Monte-Carlo evaluation of the shell integral for Gamma^(process): uniform
/// samples on the sphere, full complex couplings per dot from coupling_g, no
/// angular reduction. Sample k depends only on (seed, k), and partial sums are
/// reduced in fixed chunk order, so the result is independent of `threads`.
OracleResult gamma_bruteforce_oracle(Process process, const ArrayGeometry& geometry,
                                     const MaterialParams& materials, double temperature,
                                     std::uint64_t samples, std::uint64_t seed,
                                     unsigned threads = 1);

}  // namespace phonodec
