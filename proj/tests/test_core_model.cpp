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

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "phonodec/core_model.hpp"
#include "phonodec/error.hpp"
#include "phonodec/units.hpp"

using namespace phonodec;
namespace o = phonodec::oracle;

TEST_SUITE("core-model") {

TEST_CASE("oscillator length") {
  auto ref = [](long double e, long double m) {
    return static_cast<double>(o::kHbar / std::sqrt(m * o::kElectronMass * e));
  };
  CHECK(oscillator_length(5.0, 0.067) == doctest::Approx(ref(5.0L, 0.067L)).epsilon(1e-12));
  CHECK(oscillator_length(5.0, 0.067) == doctest::Approx(15.08).epsilon(1e-3));
  CHECK(oscillator_length(20.0, 0.067) == doctest::Approx(0.5 * oscillator_length(5.0, 0.067)));
  CHECK(oscillator_length(5.0, 0.268) == doctest::Approx(7.54).epsilon(1e-3));
  CHECK_THROWS_AS(oscillator_length(0.0, 0.067), DomainError);
  CHECK_THROWS_AS(oscillator_length(5.0, -1.0), DomainError);
}

TEST_CASE("shell wavevector") {
  const double q = shell_wavevector(5.0, 5.11);
  CHECK(q == doctest::Approx(static_cast<double>(5.0L / (o::kHbar * 5.11L))).epsilon(1e-13));
  CHECK(q == doctest::Approx(1.4866).epsilon(1e-4));
  CHECK(2.0 * units::kPi / q == doctest::Approx(4.226).epsilon(2e-4));
  CHECK(shell_wavevector(10.0, 5.11) == doctest::Approx(2.0 * q));
  CHECK(shell_wavevector(1e-9, 5.11) < 1e-9);
  CHECK_THROWS_AS(shell_wavevector(5.0, 0.0), DomainError);
}

TEST_CASE("reference configuration is deep in the suppressed regime") {
  CHECK(shell_wavevector(5.0, 5.11) * oscillator_length(5.0, 0.067) > 10.0);
}

TEST_CASE("bose occupation") {
  CHECK(bose_occupation(5.0, 10.0) == doctest::Approx(o::bose(5.0L, 10.0L)).epsilon(1e-12));
  CHECK(bose_occupation(5.0, 10.0) == doctest::Approx(3.03e-3).epsilon(2e-3));
  CHECK(bose_occupation(5.0, 0.0) == 0.0);
  CHECK(bose_occupation(units::kBoltzmann * 7.0 * std::log(2.0), 7.0) == doctest::Approx(1.0));
  CHECK_THROWS_AS(bose_occupation(0.0, 10.0), DomainError);
  CHECK_THROWS_AS(bose_occupation(5.0, -1.0), DomainError);
}

TEST_CASE("in-plane form factor matches 2D quadrature") {
  CHECK(std::abs(inplane_form_factor(0.0, 0.3, 15.0)) == 0.0);
  CHECK(std::abs(inplane_form_factor(0.0, 0.0, 15.0)) == 0.0);
  const double l = 15.08;
  CHECK(std::abs(inplane_form_factor(std::sqrt(2.0) / l, 0.0, l)) ==
        doctest::Approx(std::exp(-0.5)).epsilon(1e-12));

  // 20-point sample of (qx, qy, l)
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> len(3.0, 20.0), unit(-1.0, 1.0);
  for (int k = 0; k < 20; ++k) {
    const double lk = len(rng);
    const double qx = 3.0 * unit(rng) / lk, qy = 3.0 * unit(rng) / lk;
    const Complex got = inplane_form_factor(qx, qy, lk);
    const Complex ref = o::inplane_overlap_2d(qx, qy, lk);
    CAPTURE(qx);
    CAPTURE(qy);
    CAPTURE(lk);
    CHECK(std::abs(got - ref) <= 1e-8 * std::abs(ref));
    CHECK(inplane_form_factor_sq(qx, qy, lk) == doctest::Approx(std::norm(got)).epsilon(1e-13));
  }
}

TEST_CASE("well form factor matches 1D quadrature including removable points") {
  const double d = 4.0;
  CHECK(well_form_factor(0.0, d) == 1.0);
  CHECK(well_form_factor(2.0 * units::kPi / d, d) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(well_form_factor(1.4866, d) == doctest::Approx(0.53).epsilon(0.01));
  for (double u : {0.0, 1e-9, 1e-5, 1e-4, 0.3, 1.0, 2.1, 3.0, units::kPi - 1e-7, units::kPi,
                   units::kPi + 1e-5, 4.2, 6.0, 9.0, 17.0}) {
    const double qz = 2.0 * u / d;
    const double ref = o::well_overlap_1d(qz, d);
    CAPTURE(u);
    CHECK(std::abs(well_form_factor(qz, d) - ref) <= 1e-8 * std::max(std::abs(ref), 1e-3));
    CHECK(well_form_factor(-qz, d) == well_form_factor(qz, d));
  }
}

TEST_CASE("coupling amplitude") {
  const MaterialParams gaas;
  const ArrayGeometry geom(3, 4.0, 5.0, 4.2, gaas);
  const Wavevector q{0.3, -0.2, 1.1};
  const Complex g0 = coupling_g(0, q, geom, gaas);
  const Complex g1 = coupling_g(1, q, geom, gaas);
  const Complex phase(std::cos(q.z * 4.2), std::sin(q.z * 4.2));
  CHECK(std::abs(g1 / g0 - phase) < 1e-12);
  CHECK(std::abs(coupling_g(0, Wavevector{0.0, 0.0, 1.0}, geom, gaas)) == 0.0);
  const Wavevector flipped{q.x, q.y, -q.z};
  CHECK(std::abs(coupling_g(0, flipped, geom, gaas)) == doctest::Approx(std::abs(g0)));

  // |g|^2 V = D^2 hbar q / (2 rho c_s) with rho in meV ps^2 / nm^5
  const long double rho = 5317.0L * 6.241509L;
  const long double ref = 8600.0L * 8600.0L * o::kHbar * 1.5L / (2.0L * rho * 5.11L);
  CHECK(deformation_coupling_sq(1.5, gaas) == doctest::Approx(static_cast<double>(ref)).epsilon(1e-6));
}

TEST_CASE("parameter validation") {
  MaterialParams bad;
  bad.sound_speed = 0.0;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  CHECK_THROWS_AS(ArrayGeometry(0, 4.0, 5.0, 1.0), DomainError);
  CHECK_THROWS_AS(ArrayGeometry(2, -4.0, 5.0, 1.0), DomainError);
  CHECK_THROWS_AS(ArrayGeometry(2, 4.0, 5.0, -1.0), DomainError);
  CHECK_THROWS_AS(ArrayGeometry(2, 4.0, 40.0, 1.0), DomainError);
  const ArrayGeometry g(4, 4.0, 5.0, 2.0);
  CHECK(g.position(3) == doctest::Approx(6.0));
  CHECK(g.with_spacing(3.0).position(2) == doctest::Approx(6.0));
}

}
