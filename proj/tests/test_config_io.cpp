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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "phonodec/config.hpp"
#include "phonodec/csv.hpp"
#include "phonodec/error.hpp"
#include "phonodec/matrix_io.hpp"
#include "phonodec/units.hpp"

using namespace phonodec;
using nlohmann::json;

namespace {

std::string field_of(const json& doc) {
  try {
    parse_config_json(doc);
  } catch (const ConfigError& e) {
    return e.field();
  }
  return "<accepted>";
}

std::filesystem::path scratch(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "phonodec_unit";
  std::filesystem::create_directories(dir);
  return dir / name;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_SUITE("experiments-cli") {

TEST_CASE("minimal config materialises the documented defaults") {
  const ExperimentConfig c = parse_config_json({{"experiment", "fig2-rate-vs-a"}});
  CHECK(c.experiment == Experiment::fig2);
  CHECK(c.geometry.n_dots == 4);
  CHECK(c.geometry.well_width == 4.0);
  CHECK(c.geometry.splitting == 5.0);
  CHECK(c.geometry.spacing == doctest::Approx(2.0 * units::kPi / shell_wavevector(5.0, 5.11)));
  CHECK(c.temperature == 10.0);
  CHECK(c.materials.sound_speed == 5.11);
  CHECK(c.materials.mass_density == 5317.0);
  CHECK(c.materials.deformation_potential == 8600.0);
  CHECK(c.materials.effective_mass == 0.067);
  CHECK(c.partition().pairs() == std::vector<std::pair<int, int>>{{0, 1}, {2, 3}});
  CHECK(c.seed == 1);
  CHECK(!c.sweep.values().empty());

  const ExperimentConfig f1 = parse_config_json({{"experiment", "fig1-rate-vs-E"}});
  CHECK(f1.geometry.n_dots == 1);
  CHECK(f1.sweep.values().front() > 0.0);
  CHECK(f1.sweep.values().back() < f1.materials.lo_phonon_energy);

  const ExperimentConfig f3 = parse_config_json({{"experiment", "fig3-fidelity"}});
  CHECK(f3.fig3.spacing_factors.at("C") == 1.0);
  CHECK(f3.integrator.method == EvolutionMethod::spectral);
  CHECK(f3.fig3.t_max >= 1e6);
  CHECK(parse_config_json({{"experiment", "evolve"}}).integrator.method == EvolutionMethod::adaptive_step);
}

TEST_CASE("validation errors name the field") {
  CHECK(field_of({{"experiment", "fig2-rate-vs-a"}, {"geometry", {{"a", -1.0}}}}) == "geometry.a");
  CHECK(field_of({{"experiment", "fig2-rate-vs-a"}, {"geometry", {{"bogus", 1}}}}) == "geometry.bogus");
  CHECK(field_of({{"experiment", "fig2-rate-vs-a"}, {"colour", "red"}}) == "colour");
  CHECK(field_of({{"experiment", "fig9"}}) == "experiment");
  CHECK(field_of(json::object()) == "experiment");
  CHECK(field_of({{"experiment", "fig1-rate-vs-E"}, {"sweep", {{"start", 5.0}, {"stop", 1.0}, {"step", 1.0}}}}) != "<accepted>");
  CHECK(field_of({{"experiment", "fig1-rate-vs-E"}, {"sweep", {{"start", 1.0}, {"stop", 40.0}, {"step", 1.0}}}}) != "<accepted>");
  CHECK(field_of({{"experiment", "fig2-rate-vs-a"}, {"initial_state", {{"partition", {{1, 2}, {2, 3}}}}}}) ==
        "initial_state.partition");
  CHECK(field_of({{"experiment", "fig1-rate-vs-E"}, {"fig3", json::object()}}) == "fig3");
  CHECK(field_of({{"experiment", "fig2-rate-vs-a"}, {"temperature", "hot"}}) == "temperature");
  CHECK(field_of({{"experiment", "fig2-rate-vs-a"}, {"geometry", {{"N", 3}}}}) != "<accepted>");
}

TEST_CASE("materialised config round-trips") {
  const json doc = {{"experiment", "fig3-fidelity"},
                    {"geometry", {{"N", 4}, {"E", 4.5}}},
                    {"initial_state", {{"partition", {{1, 4}, {2, 3}}}}},
                    {"fig3", {{"spacing_factors", {{"B", 0.5}, {"C", 1.0}}}, {"t_max", 1e5}}},
                    {"seed", 99}};
  const ExperimentConfig c = parse_config_json(doc);
  CHECK(c.partition().pairs() == std::vector<std::pair<int, int>>{{0, 3}, {1, 2}});
  const json once = config_to_json(c);
  const json twice = config_to_json(parse_config_json(once));
  CHECK(once == twice);
  CHECK(config_to_json(c, true).contains("output_dir") == false);
}

TEST_CASE("explicit amplitudes") {
  const json amp = {{"rows", 4}, {"cols", 1}, {"data", {{0.0, 0.0}, {0.6, 0.0}, {0.0, 0.8}, {0.0, 0.0}}}};
  const ExperimentConfig c =
      parse_config_json({{"experiment", "evolve"}, {"geometry", {{"N", 2}}}, {"initial_state", {{"amplitudes", amp}}}});
  CHECK(std::abs(c.initial_register_state().amplitudes()(2) - Complex(0.0, 0.8)) < 1e-15);
  CHECK_THROWS_AS(c.partition(), ConfigError);
}

TEST_CASE("output directory default from the environment") {
  ::setenv(kOutputDirEnv, "/tmp/phonodec-env-out", 1);
  CHECK(parse_config_json({{"experiment", "fig1-rate-vs-E"}}).output_dir == "/tmp/phonodec-env-out");
  ::unsetenv(kOutputDirEnv);
  CHECK(parse_config_json({{"experiment", "fig1-rate-vs-E"}}).output_dir == ".");
}

TEST_CASE("CSV formatting") {
  CHECK(csv::format_double(0.1) == "0.1");
  CHECK(csv::format_double(1e-300) == "1e-300");
  CHECK(csv::format_double(std::nan("")) == "nan");
  CHECK(csv::quote("plain") == "plain");
  CHECK(csv::quote("a,b") == "\"a,b\"");
  CHECK(csv::quote("say \"hi\"") == "\"say \"\"hi\"\"\"");
  const auto path = scratch("t.csv");
  {
    csv::Writer w(path.string(), {"note: x"}, {"a", "b"});
    w.row({1.5, std::string("x,y")});
    CHECK_THROWS_AS(w.row({1.0}), Error);
    w.close();
  }
  CHECK(slurp(path) == "# note: x\na,b\n1.5,\"x,y\"\n");
}

TEST_CASE("correlation set JSON round-trip") {
  const ArrayGeometry geom(2, 4.0, 5.0, 3.0);
  CorrelationSet set;
  set.gamma_plus = Eigen::MatrixXcd::Random(2, 2);
  set.gamma_minus = Eigen::MatrixXcd::Random(2, 2);
  set.delta_plus = Eigen::MatrixXcd::Random(2, 2);
  set.delta_minus = Eigen::MatrixXcd::Random(2, 2);
  set.geometry = geom;
  set.temperature = 7.0;
  const auto path = scratch("c.json");
  io::write_json_file(path.string(), io::correlations_to_json(set));
  const CorrelationSet back = io::correlations_from_json(io::read_json_file(path.string()));
  CHECK(back.gamma_plus == set.gamma_plus);
  CHECK(back.delta_minus == set.delta_minus);
  CHECK(back.geometry.spacing() == 3.0);
  CHECK(back.temperature == 7.0);
  const json m = io::matrix_to_json(set.gamma_plus);
  CHECK(m["data"][1][0].get<double>() == set.gamma_plus(0, 1).real());

  std::ofstream(scratch("broken.json")) << "{ not json";
  CHECK_THROWS_AS(io::read_json_file(scratch("broken.json").string()), ConfigError);
  CHECK_THROWS_AS(io::read_json_file(scratch("missing.json").string() + ".nope"), IoError);
}

}
