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
#include "phonodec/error.hpp"
#include "phonodec/quadrature.hpp"

using namespace phonodec;

TEST_SUITE("quadrature") {

TEST_CASE("smooth and cancelling integrands") {
  const quad::Options opt{1e-12, 20};
  CHECK(quad::integrate([](double x) { return std::exp(x); }, 0.0, 1.0, opt, "exp").value ==
        doctest::Approx(std::exp(1.0) - 1.0).epsilon(1e-13));
  // nearly cancelling: integral of sin over a full period plus a small offset
  const auto r = quad::integrate([](double x) { return std::sin(x) + 1e-6; }, 0.0, 2.0 * M_PI, opt, "sin");
  CHECK(r.value == doctest::Approx(2.0 * M_PI * 1e-6).epsilon(1e-5));
  // l1 is itself a Kronrod estimate of the integral of |f|; the kinks at the
  // sign changes limit it to a coarse scale
  CHECK(r.l1 == doctest::Approx(4.0).epsilon(1e-2));
  // sharp peak resolved with breakpoints
  auto peak = [](double x) { return std::exp(-1e6 * (x - 0.7) * (x - 0.7)); };
  CHECK(quad::integrate(peak, 0.0, 1.0, opt, "peak", {0.69, 0.71}).value ==
        doctest::Approx(std::sqrt(M_PI / 1e6)).epsilon(1e-11));
}

TEST_CASE("non-convergence is reported") {
  const quad::Options opt{1e-12, 3};
  CHECK_THROWS_AS(quad::integrate([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, opt, "sing"),
                  NumericalError);
}

TEST_CASE("principal values with known closed forms") {
  const quad::Options opt{1e-12, 20};
  // PV int_0^2 1/(x-1) dx = 0
  CHECK(std::abs(quad::principal_value([](double) { return 1.0; }, 0.0, 2.0, 1.0, 0.5, opt, "c").value) < 1e-12);
  // PV int_0^3 x/(x-1) dx = 3 + ln 2
  CHECK(quad::principal_value([](double x) { return x; }, 0.0, 3.0, 1.0, 0.5, opt, "x").value ==
        doctest::Approx(3.0 + std::log(2.0)).epsilon(1e-12));
  // clipped window: PV int_0^4 e^x/(x-0.2) dx, reference from the subtraction identity
  auto f = [](double x) { return std::exp(x); };
  const double pole = 0.2;
  const double regular =
      quad::integrate([&](double x) { return (f(x) - f(pole)) / (x - pole); }, 0.0, 4.0, opt, "r").value;
  const double ref = regular + f(pole) * std::log((4.0 - pole) / pole);
  for (double w : {0.1, 0.5, 1.0}) {
    CHECK(quad::principal_value(f, 0.0, 4.0, pole, w, opt, "e").value == doctest::Approx(ref).epsilon(1e-11));
  }
  CHECK_THROWS_AS(quad::principal_value(f, 0.0, 1.0, 2.0, 0.5, opt, "bad"), DomainError);
}

}
