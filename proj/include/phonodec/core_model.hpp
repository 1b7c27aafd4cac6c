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

#include <complex>
#include <vector>

namespace phonodec {

using Complex = std::complex<double>;

/// Bulk material constants of the host crystal. Defaults are GaAs.
struct MaterialParams {
  double sound_speed = 5.11;             // nm/ps, longitudinal acoustic
  double mass_density = 5317.0;          // kg/m^3
  double deformation_potential = 8600.0; // meV
  double effective_mass = 0.067;         // in units of the free-electron mass
  double lo_phonon_energy = 36.0;        // meV

  /// Throws DomainError unless every field is strictly positive.
  void validate() const;

  /// Mass density in meV ps^2 / nm^5.
  double density_internal() const;
  /// Effective mass in meV ps^2 / nm^2.
  double mass_internal() const;
};

/// Linear array of identical dots stacked along the growth (z) axis.
///
/// Dot i (zero based) sits at z = i * spacing. The qubit splitting is the
/// in-plane confinement energy; the growth direction is an infinite square
/// well of width `well_width` centred on each dot.
class ArrayGeometry {
 public:
  ArrayGeometry(int n_dots, double well_width, double splitting, double spacing,
                const MaterialParams& materials = {});

  int n_dots() const noexcept { return n_dots_; }
  double well_width() const noexcept { return well_width_; }
  double splitting() const noexcept { return splitting_; }
  double spacing() const noexcept { return spacing_; }

  double position(int i) const;
  std::vector<double> positions() const;

  ArrayGeometry with_spacing(double spacing, const MaterialParams& materials = {}) const;
  ArrayGeometry with_splitting(double splitting, const MaterialParams& materials = {}) const;
  ArrayGeometry with_dots(int n_dots, const MaterialParams& materials = {}) const;

 private:
  int n_dots_;
  double well_width_;
  double splitting_;
  double spacing_;
};

struct Wavevector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
};

/// In-plane harmonic-oscillator length hbar / sqrt(m* E), nm.
double oscillator_length(double splitting, double mass_ratio);

/// Radius of the resonant shell |q| = E / (hbar c_s), 1/nm.
double shell_wavevector(double splitting, double sound_speed);

/// Bose-Einstein occupation; zero at T = 0.
double bose_occupation(double energy, double temperature);

/// <p_x| exp(i q.r) |s> for the 2D oscillator with length `length`.
Complex inplane_form_factor(double qx, double qy, double length);

/// Squared modulus of inplane_form_factor.
double inplane_form_factor_sq(double qx, double qy, double length);

/// <chi| exp(i q_z z) |chi> for the infinite-well ground state centred at z = 0.
double well_form_factor(double qz, double well_width);

/// Deformation-potential prefactor |g~(q)|^2 * V, i.e. D^2 hbar q / (2 rho c_s), meV^2 nm^3.
double deformation_coupling_sq(double q, const MaterialParams& materials);

/// Carrier-phonon amplitude g_{i,q} for the 0 -> 1 transition of dot `dot`,
/// in meV for a unit quantisation volume (1 nm^3). Observables scale |g|^2 by
/// 1/V and the mode sum by V, so V never appears in derived quantities.
Complex coupling_g(int dot, const Wavevector& q, const ArrayGeometry& geometry,
                   const MaterialParams& materials);

}  // namespace phonodec
