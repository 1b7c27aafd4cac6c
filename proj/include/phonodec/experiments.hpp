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

#include "phonodec/config.hpp"
#include "phonodec/lindblad.hpp"

namespace phonodec {

struct Fig1Row {
  double splitting;   // meV
  double rate;        // 1/ps
};

struct Fig2Row {
  double spacing;            // nm
  double tau1_inverse;       // 1/ps
  double uncorrelated_rate;  // sum_eta N Gamma^eta_11 / (2 hbar), 1/ps
  double fd_minus;
  double fd_plus;            // NaN when Gamma+_11 = 0 (T = 0)
};

struct Fig3Case {
  std::string label;
  double spacing = 0.0;           // nm
  TrajectoryRecord trajectory;
  double crossing_time = 0.0;     // ps; NaN if F stays above the threshold
  std::string error;              // non-empty when this case failed
};

struct RunReport {
  std::vector<std::string> files;
  std::vector<std::string> failures;
};

/// First noiseless spacing 2 pi / q_shell for the configured device, nm.
double noiseless_spacing(const ExperimentConfig& config);

std::vector<Fig1Row> fig1_rates(const ExperimentConfig& config);

Fig2Row fig2_point(const ExperimentConfig& config, double spacing);
std::vector<Fig2Row> fig2_rates(const ExperimentConfig& config);

/// Local minima of tau1^-1(a) on [a_lo, a_hi]: bracketed on a grid of
/// `grid_step` and refined with Brent's method.
std::vector<double> locate_rate_minima(const ExperimentConfig& config, double a_lo, double a_hi,
                                       double grid_step);

std::vector<Fig3Case> fig3_cases(const ExperimentConfig& config);

/// Metadata header lines: version, experiment, config echo, seed.
std::vector<std::string> metadata_lines(const ExperimentConfig& config);

RunReport run_fig1(const ExperimentConfig& config);
RunReport run_fig2(const ExperimentConfig& config);
RunReport run_fig3(const ExperimentConfig& config);
RunReport run_gamma_dump(const ExperimentConfig& config);
RunReport run_evolve(const ExperimentConfig& config);
RunReport run_experiment(const ExperimentConfig& config);

}  // namespace phonodec
