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

#include "phonodec/matrix_io.hpp"

#include <fstream>
#include <sstream>

#include "phonodec/error.hpp"

namespace phonodec::io {
namespace {

const json& require(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) {
    throw ConfigError(where.empty() ? key : where + "." + key, "missing required field");
  }
  return j.at(key);
}

double number(const json& j, const char* key, const std::string& where) {
  const json& v = require(j, key, where);
  if (!v.is_number()) throw ConfigError(where + "." + key, "expected a number");
  return v.get<double>();
}

}  // namespace

json matrix_to_json(const Eigen::MatrixXcd& m) {
  json data = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back({m(r, c).real(), m(r, c).imag()});
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", std::move(data)}};
}

Eigen::MatrixXcd matrix_from_json(const json& j, const std::string& where) {
  const auto rows = require(j, "rows", where).get<Eigen::Index>();
  const auto cols = require(j, "cols", where).get<Eigen::Index>();
  const json& data = require(j, "data", where);
  if (rows < 0 || cols < 0 || !data.is_array() ||
      data.size() != static_cast<std::size_t>(rows * cols)) {
    throw ConfigError(where + ".data", "expected rows*cols [re, im] pairs");
  }
  Eigen::MatrixXcd m(rows, cols);
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c, ++k) {
      const json& e = data[k];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
        throw ConfigError(where + ".data[" + std::to_string(k) + "]", "expected [re, im]");
      }
      m(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return m;
}

json materials_to_json(const MaterialParams& m) {
  return {{"sound_speed", m.sound_speed},
          {"mass_density", m.mass_density},
          {"deformation_potential", m.deformation_potential},
          {"effective_mass", m.effective_mass},
          {"lo_phonon_energy", m.lo_phonon_energy}};
}

MaterialParams materials_from_json(const json& j, const std::string& where) {
  MaterialParams m;
  m.sound_speed = number(j, "sound_speed", where);
  m.mass_density = number(j, "mass_density", where);
  m.deformation_potential = number(j, "deformation_potential", where);
  m.effective_mass = number(j, "effective_mass", where);
  m.lo_phonon_energy = number(j, "lo_phonon_energy", where);
  return m;
}

json correlations_to_json(const CorrelationSet& set) {
  const ArrayGeometry& g = set.geometry;
  return {{"format", kCorrelationFormat},
          {"temperature", set.temperature},
          {"geometry", {{"N", g.n_dots()}, {"d", g.well_width()}, {"E", g.splitting()}, {"a", g.spacing()}}},
          {"materials", materials_to_json(set.materials)},
          {"gamma_plus", matrix_to_json(set.gamma_plus)},
          {"gamma_minus", matrix_to_json(set.gamma_minus)},
          {"delta_plus", matrix_to_json(set.delta_plus)},
          {"delta_minus", matrix_to_json(set.delta_minus)}};
}

CorrelationSet correlations_from_json(const json& j) {
  const json& format = require(j, "format", "");
  if (format != kCorrelationFormat) {
    throw ConfigError("format", std::string("expected \"") + kCorrelationFormat + "\"");
  }
  CorrelationSet set;
  set.materials = materials_from_json(require(j, "materials", ""), "materials");
  const json& g = require(j, "geometry", "");
  try {
    set.geometry = ArrayGeometry(require(g, "N", "geometry").get<int>(), number(g, "d", "geometry"),
                                 number(g, "E", "geometry"), number(g, "a", "geometry"),
                                 set.materials);
  } catch (const DomainError& e) {
    throw ConfigError("geometry", e.what());
  }
  set.temperature = number(j, "temperature", "");
  set.gamma_plus = matrix_from_json(require(j, "gamma_plus", ""), "gamma_plus");
  set.gamma_minus = matrix_from_json(require(j, "gamma_minus", ""), "gamma_minus");
  set.delta_plus = matrix_from_json(require(j, "delta_plus", ""), "delta_plus");
  set.delta_minus = matrix_from_json(require(j, "delta_minus", ""), "delta_minus");
  const auto n = static_cast<Eigen::Index>(set.geometry.n_dots());
  for (const auto* m : {&set.gamma_plus, &set.gamma_minus, &set.delta_plus, &set.delta_minus}) {
    if (m->rows() != n || m->cols() != n) {
      throw ConfigError("geometry.N", "matrix size does not match the number of dots");
    }
  }
  return set;
}

json state_to_json(const RegisterState& state) { return matrix_to_json(state.amplitudes()); }

RegisterState state_from_json(const json& j, const std::string& where) {
  const Eigen::MatrixXcd m = matrix_from_json(j, where);
  if (m.cols() != 1) throw ConfigError(where + ".cols", "state must be a column vector");
  try {
    return RegisterState(m.col(0));
  } catch (const DomainError& e) {
    throw ConfigError(where, e.what());
  }
}

void write_json_file(const std::string& path, const json& j) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path + " for writing");
  out << j.dump(2) << '\n';
  if (!out) throw IoError("failed writing " + path);
}

json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("", path + ": malformed JSON: " + e.what());
  }
}

}  // namespace phonodec::io
