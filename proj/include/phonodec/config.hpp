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
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "phonodec/bath_correlations.hpp"
#include "phonodec/lindblad.hpp"
#include "phonodec/register_algebra.hpp"

namespace phonodec {

enum class Experiment { fig1, fig2, fig3, gamma_dump, evolve };

const char* experiment_id(Experiment e);
std::optional<Experiment> experiment_from_id(const std::string& id);

struct SweepRange {
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;

  /// start, start + step, ... up to stop (inclusive within step * 1e-9).
  std::vector<double> values() const;
};

struct GeometrySpec {
  int n_dots = 4;
  double well_width = 4.0;   // nm
  double splitting = 5.0;    // meV
  double spacing = 0.0;      // nm; defaults to the first noiseless spacing 2 pi / q_shell
};

struct InitialStateSpec {
  // One of the two is set after parsing. Pairs are zero based.
  std::optional<std::vector<std::pair<int, int>>> partition;
  std::optional<Eigen::VectorXcd> amplitudes;
};

struct IntegratorSpec {
  EvolutionMethod method = EvolutionMethod::spectral;
  double rel_tol = 1e-9;
  double abs_tol = 1e-13;
};

struct BathSpec {
  double angular_rel_tol = 1e-10;
  double radial_rel_tol = 1e-9;
  double cutoff_multiplier = 10.0;
  bool lamb_shift = true;
};

struct Fig3Spec {
  std::map<std::string, double> spacing_factors{{"A", 0.25}, {"B", 0.5}, {"C", 1.0}};
  double t_min = 1e-2;   // ps
  double t_max = 1e6;    // ps
  int points_per_decade = 10;
  double threshold = 0.9;
};

struct EvolveSpec {
  std::string correlations;   // CorrelationSet JSON; empty: computed from the geometry
  double t_min = 1e-2;
  double t_max = 1e3;
  int points_per_decade = 10;
};

struct ExperimentConfig {
  Experiment experiment = Experiment::fig1;
  MaterialParams materials;
  GeometrySpec geometry;
  double temperature = 10.0;   // K
  SweepRange sweep;            // fig1: E in meV, fig2: a in nm
  InitialStateSpec initial_state;
  IntegratorSpec integrator;
  BathSpec bath;
  Fig3Spec fig3;
  EvolveSpec evolve;
  std::uint64_t oracle_samples = 0;   // gamma-dump: Monte-Carlo cross-check when > 0
  std::string output_dir = ".";
  std::uint64_t seed = 1;
  unsigned threads = 1;

  ArrayGeometry array_geometry() const;
  BathSettings bath_settings() const;
  EvolveOptions evolve_options() const;
  RegisterState initial_register_state() const;
  DimerPartition partition() const;   // throws ConfigError for explicit amplitudes
};

/// Environment variable consulted for the default output directory.
inline constexpr const char* kOutputDirEnv = "PHONODEC_OUT_DIR";

/// Validates `doc`, rejects unknown keys, and materialises every default.
/// Errors are ConfigError carrying the dotted field path.
ExperimentConfig parse_config_json(const nlohmann::json& doc);
ExperimentConfig parse_config(const std::string& path);

/// Full materialised document. `for_echo` drops fields that do not affect
/// results (output_dir, threads).
nlohmann::json config_to_json(const ExperimentConfig& config, bool for_echo = false);

/// Re-validates a config after programmatic edits (CLI overrides).
void validate_config(const ExperimentConfig& config);

}  // namespace phonodec
