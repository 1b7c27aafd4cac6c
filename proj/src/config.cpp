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

#include "phonodec/config.hpp"

#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>

#include "phonodec/error.hpp"
#include "phonodec/matrix_io.hpp"
#include "phonodec/units.hpp"

namespace phonodec {

using nlohmann::json;

namespace {

constexpr std::pair<Experiment, const char*> kExperimentIds[] = {
    {Experiment::fig1, "fig1-rate-vs-E"},
    {Experiment::fig2, "fig2-rate-vs-a"},
    {Experiment::fig3, "fig3-fidelity"},
    {Experiment::gamma_dump, "gamma-dump"},
    {Experiment::evolve, "evolve"},
};

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

// Reads an object field by field and rejects whatever was not consumed.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(path_, "expected a JSON object");
  }

  bool has(const std::string& key) const { return j_.contains(key) && !j_.at(key).is_null(); }

  const json& raw(const std::string& key) {
    used_.insert(key);
    return j_.at(key);
  }

  double number(const std::string& key, double fallback) {
    used_.insert(key);
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_number()) throw ConfigError(join(path_, key), "expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) throw ConfigError(join(path_, key), "must be finite");
    return x;
  }

  std::int64_t integer(const std::string& key, std::int64_t fallback) {
    used_.insert(key);
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_number_integer()) throw ConfigError(join(path_, key), "expected an integer");
    return v.get<std::int64_t>();
  }

  std::uint64_t unsigned_integer(const std::string& key, std::uint64_t fallback) {
    used_.insert(key);
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer() && v.get<std::int64_t>() >= 0) return v.get<std::uint64_t>();
    throw ConfigError(join(path_, key), "expected a non-negative integer");
  }

  bool boolean(const std::string& key, bool fallback) {
    used_.insert(key);
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_boolean()) throw ConfigError(join(path_, key), "expected true or false");
    return v.get<bool>();
  }

  std::string string(const std::string& key, const std::string& fallback) {
    used_.insert(key);
    if (!has(key)) return fallback;
    const json& v = j_.at(key);
    if (!v.is_string()) throw ConfigError(join(path_, key), "expected a string");
    return v.get<std::string>();
  }

  std::string child_path(const std::string& key) const { return join(path_, key); }

  void finish() const {
    for (const auto& [key, value] : j_.items()) {
      if (!used_.count(key)) throw ConfigError(join(path_, key), "unknown key");
    }
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

void reject_unused_block(const json& doc, const char* key, Experiment e) {
  if (doc.contains(key)) {
    throw ConfigError(key, std::string("not used by experiment ") + experiment_id(e));
  }
}

bool uses_sweep(Experiment e) { return e == Experiment::fig1 || e == Experiment::fig2; }
bool uses_state(Experiment e) {
  return e == Experiment::fig2 || e == Experiment::fig3 || e == Experiment::evolve;
}
bool uses_integrator(Experiment e) { return e == Experiment::fig3 || e == Experiment::evolve; }

SweepRange default_sweep(Experiment e) {
  if (e == Experiment::fig1) return {1.0, 20.0, 0.25};
  return {0.25, 14.0, 0.01};
}

double default_spacing(const GeometrySpec& g, const MaterialParams& m) {
  if (!(g.splitting > 0.0) || !(m.sound_speed > 0.0)) return 0.0;
  return 2.0 * units::kPi / shell_wavevector(g.splitting, m.sound_speed);
}

const char* method_id(EvolutionMethod m) {
  return m == EvolutionMethod::spectral ? "spectral" : "adaptive-step";
}

}  // namespace

const char* experiment_id(Experiment e) {
  for (const auto& [value, id] : kExperimentIds) {
    if (value == e) return id;
  }
  return "unknown";
}

std::optional<Experiment> experiment_from_id(const std::string& id) {
  for (const auto& [value, name] : kExperimentIds) {
    if (id == name) return value;
  }
  return std::nullopt;
}

std::vector<double> SweepRange::values() const {
  std::vector<double> out;
  if (!(step > 0.0) || stop < start) return out;
  const auto n = static_cast<long>(std::floor((stop - start) / step * (1.0 + 1e-12) + 1e-9));
  out.reserve(static_cast<std::size_t>(n) + 1);
  for (long k = 0; k <= n; ++k) out.push_back(start + static_cast<double>(k) * step);
  return out;
}

ArrayGeometry ExperimentConfig::array_geometry() const {
  return ArrayGeometry(geometry.n_dots, geometry.well_width, geometry.splitting, geometry.spacing,
                       materials);
}

BathSettings ExperimentConfig::bath_settings() const {
  BathSettings s;
  s.angular.rel_tol = bath.angular_rel_tol;
  s.radial.rel_tol = bath.radial_rel_tol;
  s.cutoff_multiplier = bath.cutoff_multiplier;
  return s;
}

EvolveOptions ExperimentConfig::evolve_options() const {
  EvolveOptions o;
  o.method = integrator.method;
  o.rel_tol = integrator.rel_tol;
  o.abs_tol = integrator.abs_tol;
  return o;
}

DimerPartition ExperimentConfig::partition() const {
  if (!initial_state.partition) {
    throw ConfigError("initial_state.partition", "experiment requires a dimer partition");
  }
  return DimerPartition(geometry.n_dots, *initial_state.partition);
}

RegisterState ExperimentConfig::initial_register_state() const {
  if (initial_state.amplitudes) return RegisterState::normalized(*initial_state.amplitudes);
  return singlet_dimer_state(partition());
}

void validate_config(const ExperimentConfig& c) {
  auto positive = [](double v, const char* field) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(field, "must be > 0");
  };
  positive(c.materials.sound_speed, "materials.sound_speed");
  positive(c.materials.mass_density, "materials.mass_density");
  positive(c.materials.deformation_potential, "materials.deformation_potential");
  positive(c.materials.effective_mass, "materials.effective_mass");
  positive(c.materials.lo_phonon_energy, "materials.lo_phonon_energy");

  const GeometrySpec& g = c.geometry;
  if (g.n_dots < 1 || g.n_dots > kMaxQubits) {
    throw ConfigError("geometry.N", "must be in [1, " + std::to_string(kMaxQubits) + "]");
  }
  positive(g.well_width, "geometry.d");
  positive(g.splitting, "geometry.E");
  if (g.splitting >= c.materials.lo_phonon_energy) {
    throw ConfigError("geometry.E", "must be below materials.lo_phonon_energy");
  }
  if (!(g.spacing >= 0.0)) throw ConfigError("geometry.a", "must be >= 0");
  if (!(c.temperature >= 0.0)) throw ConfigError("temperature", "must be >= 0");

  const Experiment e = c.experiment;
  if (uses_sweep(e)) {
    if (!(c.sweep.step > 0.0)) throw ConfigError("sweep.step", "must be > 0");
    if (!(c.sweep.stop >= c.sweep.start)) throw ConfigError("sweep.stop", "must be >= sweep.start");
    if (!(c.sweep.start > 0.0)) throw ConfigError("sweep.start", "must be > 0");
    if (e == Experiment::fig1 && !(c.sweep.stop < c.materials.lo_phonon_energy)) {
      throw ConfigError("sweep.stop", "energy sweep must stay below materials.lo_phonon_energy");
    }
  }
  if (uses_state(e)) {
    if (c.initial_state.partition) {
      try {
        DimerPartition(g.n_dots, *c.initial_state.partition);
      } catch (const DomainError& err) {
        throw ConfigError("initial_state.partition", err.what());
      }
    } else if (c.initial_state.amplitudes) {
      if (e == Experiment::fig2) {
        throw ConfigError("initial_state.amplitudes", "fig2 needs a dimer partition");
      }
      if (c.initial_state.amplitudes->size() != (Eigen::Index{1} << g.n_dots)) {
        throw ConfigError("initial_state.amplitudes", "length must be 2^N");
      }
      const double norm = c.initial_state.amplitudes->norm();
      if (std::abs(norm - 1.0) > 1e-9) throw ConfigError("initial_state.amplitudes", "must have unit norm");
    } else {
      throw ConfigError("initial_state", "needs a partition or amplitudes");
    }
  }
  positive(c.integrator.rel_tol, "integrator.rel_tol");
  positive(c.integrator.abs_tol, "integrator.abs_tol");
  if (uses_integrator(e)) {
    if (c.integrator.method == EvolutionMethod::spectral && g.n_dots > kMaxSpectralQubits) {
      throw ConfigError("integrator.method", "spectral evolution needs N <= " +
                                                 std::to_string(kMaxSpectralQubits));
    }
  }
  positive(c.bath.angular_rel_tol, "bath.angular_rel_tol");
  positive(c.bath.radial_rel_tol, "bath.radial_rel_tol");
  if (!(c.bath.cutoff_multiplier >= 5.0)) throw ConfigError("bath.cutoff_multiplier", "must be >= 5");

  if (e == Experiment::fig3) {
    if (c.fig3.spacing_factors.empty()) throw ConfigError("fig3.spacing_factors", "must not be empty");
    for (const auto& [label, factor] : c.fig3.spacing_factors) {
      if (!(factor >= 0.0)) throw ConfigError("fig3.spacing_factors." + label, "must be >= 0");
    }
    positive(c.fig3.t_min, "fig3.t_min");
    if (!(c.fig3.t_max > c.fig3.t_min)) throw ConfigError("fig3.t_max", "must exceed fig3.t_min");
    if (c.fig3.points_per_decade < 1) throw ConfigError("fig3.points_per_decade", "must be >= 1");
    if (!(c.fig3.threshold > 0.0 && c.fig3.threshold < 1.0)) {
      throw ConfigError("fig3.threshold", "must lie in (0, 1)");
    }
  }
  if (e == Experiment::evolve) {
    positive(c.evolve.t_min, "evolve.t_min");
    if (!(c.evolve.t_max > c.evolve.t_min)) throw ConfigError("evolve.t_max", "must exceed evolve.t_min");
    if (c.evolve.points_per_decade < 1) throw ConfigError("evolve.points_per_decade", "must be >= 1");
  }
  if (c.oracle_samples != 0 && c.oracle_samples < 100000) {
    throw ConfigError("oracle_samples", "must be 0 or >= 100000");
  }
  if (c.threads < 1) throw ConfigError("threads", "must be >= 1");
}

ExperimentConfig parse_config_json(const json& doc) {
  ObjectReader top(doc, "");
  ExperimentConfig c;

  if (!top.has("experiment")) throw ConfigError("experiment", "missing required field");
  const std::string id = top.string("experiment", "");
  const auto experiment = experiment_from_id(id);
  if (!experiment) throw ConfigError("experiment", "unknown experiment id \"" + id + "\"");
  c.experiment = *experiment;
  const Experiment e = c.experiment;

  if (top.has("materials")) {
    ObjectReader m(top.raw("materials"), "materials");
    c.materials.sound_speed = m.number("sound_speed", c.materials.sound_speed);
    c.materials.mass_density = m.number("mass_density", c.materials.mass_density);
    c.materials.deformation_potential = m.number("deformation_potential", c.materials.deformation_potential);
    c.materials.effective_mass = m.number("effective_mass", c.materials.effective_mass);
    c.materials.lo_phonon_energy = m.number("lo_phonon_energy", c.materials.lo_phonon_energy);
    m.finish();
  }

  c.geometry.n_dots = e == Experiment::fig1 ? 1 : 4;
  bool spacing_given = false;
  if (top.has("geometry")) {
    ObjectReader g(top.raw("geometry"), "geometry");
    const auto n = g.integer("N", c.geometry.n_dots);
    if (n < 1 || n > kMaxQubits) {
      throw ConfigError("geometry.N", "must be in [1, " + std::to_string(kMaxQubits) + "]");
    }
    c.geometry.n_dots = static_cast<int>(n);
    c.geometry.well_width = g.number("d", c.geometry.well_width);
    c.geometry.splitting = g.number("E", c.geometry.splitting);
    spacing_given = g.has("a");
    c.geometry.spacing = g.number("a", 0.0);
    g.finish();
  }
  if (!spacing_given) c.geometry.spacing = default_spacing(c.geometry, c.materials);

  c.temperature = top.number("temperature", c.temperature);

  if (uses_sweep(e)) {
    c.sweep = default_sweep(e);
    if (top.has("sweep")) {
      ObjectReader s(top.raw("sweep"), "sweep");
      c.sweep.start = s.number("start", c.sweep.start);
      c.sweep.stop = s.number("stop", c.sweep.stop);
      c.sweep.step = s.number("step", c.sweep.step);
      s.finish();
    }
  } else {
    reject_unused_block(doc, "sweep", e);
  }

  if (uses_state(e)) {
    if (top.has("initial_state")) {
      ObjectReader s(top.raw("initial_state"), "initial_state");
      if (s.has("partition") == s.has("amplitudes")) {
        throw ConfigError("initial_state", "give exactly one of partition or amplitudes");
      }
      if (s.has("partition")) {
        const json& p = s.raw("partition");
        if (!p.is_array()) throw ConfigError("initial_state.partition", "expected [[i, j], ...]");
        std::vector<std::pair<int, int>> pairs;
        for (std::size_t k = 0; k < p.size(); ++k) {
          const json& pair = p[k];
          if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
              !pair[1].is_number_integer()) {
            throw ConfigError("initial_state.partition[" + std::to_string(k) + "]",
                              "expected a pair of 1-based qubit indices");
          }
          pairs.emplace_back(pair[0].get<int>() - 1, pair[1].get<int>() - 1);
        }
        c.initial_state.partition = std::move(pairs);
      } else {
        const Eigen::MatrixXcd m = io::matrix_from_json(s.raw("amplitudes"), "initial_state.amplitudes");
        if (m.cols() != 1) throw ConfigError("initial_state.amplitudes", "must be a column vector");
        c.initial_state.amplitudes = m.col(0);
      }
      s.finish();
    } else {
      std::vector<std::pair<int, int>> pairs;
      for (int i = 0; i + 1 < c.geometry.n_dots; i += 2) pairs.emplace_back(i, i + 1);
      c.initial_state.partition = std::move(pairs);
    }
  } else {
    reject_unused_block(doc, "initial_state", e);
  }

  if (uses_integrator(e)) {
    if (e == Experiment::evolve) c.integrator.method = EvolutionMethod::adaptive_step;
    if (top.has("integrator")) {
      ObjectReader s(top.raw("integrator"), "integrator");
      const std::string method = s.string("method", method_id(c.integrator.method));
      if (method == "spectral") {
        c.integrator.method = EvolutionMethod::spectral;
      } else if (method == "adaptive-step") {
        c.integrator.method = EvolutionMethod::adaptive_step;
      } else {
        throw ConfigError("integrator.method", "expected \"spectral\" or \"adaptive-step\"");
      }
      c.integrator.rel_tol = s.number("rel_tol", c.integrator.rel_tol);
      c.integrator.abs_tol = s.number("abs_tol", c.integrator.abs_tol);
      s.finish();
    }
  } else {
    reject_unused_block(doc, "integrator", e);
  }

  if (top.has("bath")) {
    ObjectReader s(top.raw("bath"), "bath");
    c.bath.angular_rel_tol = s.number("angular_rel_tol", c.bath.angular_rel_tol);
    c.bath.radial_rel_tol = s.number("radial_rel_tol", c.bath.radial_rel_tol);
    c.bath.cutoff_multiplier = s.number("cutoff_multiplier", c.bath.cutoff_multiplier);
    c.bath.lamb_shift = s.boolean("lamb_shift", c.bath.lamb_shift);
    s.finish();
  }

  if (e == Experiment::fig3) {
    if (top.has("fig3")) {
      ObjectReader s(top.raw("fig3"), "fig3");
      if (s.has("spacing_factors")) {
        ObjectReader f(s.raw("spacing_factors"), "fig3.spacing_factors");
        c.fig3.spacing_factors.clear();
        for (const auto& [label, value] : s.raw("spacing_factors").items()) {
          c.fig3.spacing_factors[label] = f.number(label, 0.0);
        }
        f.finish();
      }
      c.fig3.t_min = s.number("t_min", c.fig3.t_min);
      c.fig3.t_max = s.number("t_max", c.fig3.t_max);
      c.fig3.points_per_decade = static_cast<int>(s.integer("points_per_decade", c.fig3.points_per_decade));
      c.fig3.threshold = s.number("threshold", c.fig3.threshold);
      s.finish();
    }
  } else {
    reject_unused_block(doc, "fig3", e);
  }

  if (e == Experiment::evolve) {
    if (top.has("evolve")) {
      ObjectReader s(top.raw("evolve"), "evolve");
      c.evolve.correlations = s.string("correlations", c.evolve.correlations);
      c.evolve.t_min = s.number("t_min", c.evolve.t_min);
      c.evolve.t_max = s.number("t_max", c.evolve.t_max);
      c.evolve.points_per_decade = static_cast<int>(s.integer("points_per_decade", c.evolve.points_per_decade));
      s.finish();
    }
  } else {
    reject_unused_block(doc, "evolve", e);
  }

  if (e == Experiment::gamma_dump) {
    c.oracle_samples = top.unsigned_integer("oracle_samples", 0);
  } else {
    reject_unused_block(doc, "oracle_samples", e);
  }

  const char* env_dir = std::getenv(kOutputDirEnv);
  c.output_dir = top.string("output_dir", env_dir && *env_dir ? env_dir : ".");
  c.seed = top.unsigned_integer("seed", c.seed);
  const auto threads = top.unsigned_integer("threads", c.threads);
  if (threads < 1 || threads > 1024) throw ConfigError("threads", "must be in [1, 1024]");
  c.threads = static_cast<unsigned>(threads);
  top.finish();

  validate_config(c);
  return c;
}

ExperimentConfig parse_config(const std::string& path) {
  return parse_config_json(io::read_json_file(path));
}

json config_to_json(const ExperimentConfig& c, bool for_echo) {
  const Experiment e = c.experiment;
  json j;
  j["experiment"] = experiment_id(e);
  j["materials"] = io::materials_to_json(c.materials);
  j["geometry"] = {{"N", c.geometry.n_dots},
                   {"d", c.geometry.well_width},
                   {"E", c.geometry.splitting},
                   {"a", c.geometry.spacing}};
  j["temperature"] = c.temperature;
  if (uses_sweep(e)) {
    j["sweep"] = {{"start", c.sweep.start}, {"stop", c.sweep.stop}, {"step", c.sweep.step}};
  }
  if (uses_state(e)) {
    if (c.initial_state.partition) {
      json pairs = json::array();
      for (const auto& [a, b] : *c.initial_state.partition) pairs.push_back({a + 1, b + 1});
      j["initial_state"] = {{"partition", pairs}};
    } else if (c.initial_state.amplitudes) {
      j["initial_state"] = {{"amplitudes", io::matrix_to_json(*c.initial_state.amplitudes)}};
    }
  }
  if (uses_integrator(e)) {
    j["integrator"] = {{"method", method_id(c.integrator.method)},
                       {"rel_tol", c.integrator.rel_tol},
                       {"abs_tol", c.integrator.abs_tol}};
  }
  j["bath"] = {{"angular_rel_tol", c.bath.angular_rel_tol},
               {"radial_rel_tol", c.bath.radial_rel_tol},
               {"cutoff_multiplier", c.bath.cutoff_multiplier},
               {"lamb_shift", c.bath.lamb_shift}};
  if (e == Experiment::fig3) {
    json factors = json::object();
    for (const auto& [label, f] : c.fig3.spacing_factors) factors[label] = f;
    j["fig3"] = {{"spacing_factors", factors},
                 {"t_min", c.fig3.t_min},
                 {"t_max", c.fig3.t_max},
                 {"points_per_decade", c.fig3.points_per_decade},
                 {"threshold", c.fig3.threshold}};
  }
  if (e == Experiment::evolve) {
    j["evolve"] = {{"correlations", c.evolve.correlations},
                   {"t_min", c.evolve.t_min},
                   {"t_max", c.evolve.t_max},
                   {"points_per_decade", c.evolve.points_per_decade}};
  }
  if (e == Experiment::gamma_dump) j["oracle_samples"] = c.oracle_samples;
  j["seed"] = c.seed;
  if (!for_echo) {
    j["output_dir"] = c.output_dir;
    j["threads"] = c.threads;
  }
  return j;
}

}  // namespace phonodec
