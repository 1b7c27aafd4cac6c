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

#include <functional>
#include <string>
#include <vector>

namespace phonodec::quad {

using Integrand = std::function<double(double)>;

struct Options {
  double rel_tol = 1e-10;
  unsigned max_depth = 18;
};

struct Result {
  double value = 0.0;
  double error = 0.0;   // estimated absolute error
  double l1 = 0.0;      // integral of |f|, the scale the tolerance is measured against
};

/// Adaptive Gauss-Kronrod on [a, b], optionally split at interior breakpoints.
/// Throws NumericalError naming `what` when error > rel_tol * L1.
Result integrate(const Integrand& f, double a, double b, const Options& options,
                 const std::string& what, const std::vector<double>& breakpoints = {});

/// Cauchy principal value of  int_a^b f(x) / (x - pole) dx.
///
/// Inside [pole - w, pole + w] the odd part is folded,
///   int_0^w (f(pole + s) - f(pole - s)) / s ds,
/// and when the window is clipped by an endpoint the leftover one-sided piece
/// is integrated with f(pole) subtracted and f(pole) ln(w_r / w_l) added back.
Result principal_value(const Integrand& f, double a, double b, double pole, double window,
                       const Options& options, const std::string& what,
                       const std::vector<double>& breakpoints = {});

}  // namespace phonodec::quad
