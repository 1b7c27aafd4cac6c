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

#include "phonodec/core_model.hpp"

#include <cmath>
#include <sstream>
#include <string>

#include "phonodec/error.hpp"
#include "phonodec/units.hpp"

namespace phonodec {
namespace {

void require_positive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    std::ostringstream msg;
    msg << name << " must be finite and > 0 (got " << value << ")";
    throw DomainError(msg.str());
  }
}

}  // namespace

void MaterialParams::validate() const {
  require_positive(sound_speed, "sound_speed");
  require_positive(mass_density, "mass_density");
  require_positive(deformation_potential, "deformation_potential");
  require_positive(effective_mass, "effective_mass");
  require_positive(lo_phonon_energy, "lo_phonon_energy");
}

double MaterialParams::density_internal() const { return mass_density * units::kKgPerCubicMetre; }

double MaterialParams::mass_internal() const { return effective_mass * units::kElectronMass; }

ArrayGeometry::ArrayGeometry(int n_dots, double well_width, double splitting, double spacing,
                             const MaterialParams& materials)
    : n_dots_(n_dots), well_width_(well_width), splitting_(splitting), spacing_(spacing) {
  if (n_dots < 1) throw DomainError("n_dots must be >= 1 (got " + std::to_string(n_dots) + ")");
  require_positive(well_width, "well_width");
  require_positive(splitting, "splitting");
  if (!(spacing >= 0.0) || !std::isfinite(spacing)) {
    throw DomainError("spacing must be finite and >= 0 (got " + std::to_string(spacing) + ")");
  }
  materials.validate();
  if (splitting >= materials.lo_phonon_energy) {
    std::ostringstream msg;
    msg << "splitting " << splitting << " meV is not below the LO phonon energy "
        << materials.lo_phonon_energy << " meV; only acoustic scattering is modelled";
    throw DomainError(msg.str());
  }
}

double ArrayGeometry::position(int i) const {
  if (i < 0 || i >= n_dots_) throw DomainError("dot index out of range");
  return i * spacing_;
}

std::vector<double> ArrayGeometry::positions() const {
  std::vector<double> z(static_cast<std::size_t>(n_dots_));
  for (int i = 0; i < n_dots_; ++i) z[static_cast<std::size_t>(i)] = i * spacing_;
  return z;
}

ArrayGeometry ArrayGeometry::with_spacing(double spacing, const MaterialParams& materials) const {
  return ArrayGeometry(n_dots_, well_width_, splitting_, spacing, materials);
}

ArrayGeometry ArrayGeometry::with_splitting(double splitting, const MaterialParams& materials) const {
  return ArrayGeometry(n_dots_, well_width_, splitting, spacing_, materials);
}

ArrayGeometry ArrayGeometry::with_dots(int n_dots, const MaterialParams& materials) const {
  return ArrayGeometry(n_dots, well_width_, splitting_, spacing_, materials);
}

double Wavevector::norm() const { return std::sqrt(x * x + y * y + z * z); }

double oscillator_length(double splitting, double mass_ratio) {
  require_positive(splitting, "splitting");
  require_positive(mass_ratio, "mass_ratio");
  return units::kHbar / std::sqrt(mass_ratio * units::kElectronMass * splitting);
}

double shell_wavevector(double splitting, double sound_speed) {
  require_positive(splitting, "splitting");
  require_positive(sound_speed, "sound_speed");
  return splitting / (units::kHbar * sound_speed);
}

double bose_occupation(double energy, double temperature) {
  require_positive(energy, "energy");
  if (!(temperature >= 0.0)) throw DomainError("temperature must be >= 0");
  if (temperature == 0.0) return 0.0;
  return 1.0 / std::expm1(energy / (units::kBoltzmann * temperature));
}

Complex inplane_form_factor(double qx, double qy, double length) {
  require_positive(length, "length");
  const double envelope = std::exp(-(qx * qx + qy * qy) * length * length / 4.0);
  return {0.0, qx * length / std::sqrt(2.0) * envelope};
}

double inplane_form_factor_sq(double qx, double qy, double length) {
  require_positive(length, "length");
  return 0.5 * qx * qx * length * length * std::exp(-(qx * qx + qy * qy) * length * length / 2.0);
}

double well_form_factor(double qz, double well_width) {
  require_positive(well_width, "well_width");
  const double pi = units::kPi;
  const double u = std::abs(qz) * well_width / 2.0;
  // sin(u)/u and pi^2/(pi^2 - u^2) both have removable points; expand near them.
  if (u < 1e-4) {
    const double u2 = u * u;
    // sinc(u) * (1 + u^2/pi^2 + ...) to O(u^4)
    return (1.0 - u2 / 6.0) * (1.0 + u2 / (pi * pi));
  }
  const double e = u - pi;
  if (std::abs(e) < 1.0) {
    // sin(u) = -sin(e) and pi^2 - u^2 = -e (2 pi + e), so the pole at u = pi
    // cancels exactly: M = sinc(e) pi^2 / (u (2 pi + e)), M(pi) = 1/2.
    const double sinc_e = std::abs(e) < 1e-4 ? 1.0 - e * e / 6.0 : std::sin(e) / e;
    return sinc_e * pi * pi / (u * (2.0 * pi + e));
  }
  return std::sin(u) / u * (pi * pi) / (pi * pi - u * u);
}

double deformation_coupling_sq(double q, const MaterialParams& materials) {
  const double d = materials.deformation_potential;
  return d * d * units::kHbar * q / (2.0 * materials.density_internal() * materials.sound_speed);
}

Complex coupling_g(int dot, const Wavevector& q, const ArrayGeometry& geometry,
                   const MaterialParams& materials) {
  const double z = geometry.position(dot);
  const double length = oscillator_length(geometry.splitting(), materials.effective_mass);
  const double amplitude = std::sqrt(deformation_coupling_sq(q.norm(), materials));
  const Complex inplane = inplane_form_factor(q.x, q.y, length);
  const double well = well_form_factor(q.z, geometry.well_width());
  return amplitude * inplane * well * std::polar(1.0, q.z * z);
}

}  // namespace phonodec
