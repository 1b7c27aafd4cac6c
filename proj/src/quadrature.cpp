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

#include "phonodec/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "phonodec/error.hpp"

namespace phonodec::quad {
namespace {

using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;

struct Panel {
  double a, b, value, error, l1;
  unsigned depth;
  bool operator<(const Panel& o) const { return error < o.error; }
};

Panel evaluate(const Integrand& f, double a, double b, unsigned depth) {
  Panel p{a, b, 0.0, 0.0, 0.0, depth};
  p.value = Rule::integrate(f, a, b, 0, 0.0, &p.error, &p.l1);
  // Boost 1.74 reports the single-panel error on the reference interval
  // [-1, 1]; the L1 norm is already scaled.
  p.error *= 0.5 * (b - a);
  return p;
}

// Globally adaptive: bisect the panel with the largest error estimate until
// the summed error meets rel_tol against the summed L1 norm. Panels at
// max_depth are frozen.
Result integrate_piece(const Integrand& f, double a, double b, const Options& options) {
  Result r;
  if (b <= a) return r;
  constexpr std::size_t kMaxPanels = 20000;
  std::priority_queue<Panel> open;
  std::vector<Panel> frozen;
  open.push(evaluate(f, a, b, 0));
  double err = open.top().error, l1 = open.top().l1;
  const double eps_floor = 16.0 * std::numeric_limits<double>::epsilon();
  while (!open.empty() && err > std::max(options.rel_tol, eps_floor) * l1 &&
         open.size() + frozen.size() < kMaxPanels) {
    Panel worst = open.top();
    open.pop();
    if (worst.depth >= options.max_depth) {
      frozen.push_back(worst);
      continue;
    }
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = evaluate(f, worst.a, mid, worst.depth + 1);
    const Panel right = evaluate(f, mid, worst.b, worst.depth + 1);
    err += left.error + right.error - worst.error;
    l1 += left.l1 + right.l1 - worst.l1;
    open.push(left);
    open.push(right);
  }
  for (; !open.empty(); open.pop()) frozen.push_back(open.top());
  for (const Panel& p : frozen) {
    r.value += p.value;
    r.error += p.error;
    r.l1 += p.l1;
  }
  return r;
}

void check(const Result& r, const Options& options, const std::string& what, double a, double b) {
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * r.l1;
  if (!std::isfinite(r.value) || r.error > std::max(options.rel_tol * r.l1, floor)) {
    std::ostringstream msg;
    msg.precision(6);
    msg << "quadrature did not converge for " << what << " on [" << a << ", " << b
        << "]: value=" << r.value << " est.error=" << r.error << " L1=" << r.l1
        << " rel_tol=" << options.rel_tol << " max_depth=" << options.max_depth;
    throw NumericalError(msg.str());
  }
}

void accumulate(Result& total, const Result& part) {
  total.value += part.value;
  total.error += part.error;
  total.l1 += part.l1;
}

}  // namespace

Result integrate(const Integrand& f, double a, double b, const Options& options,
                 const std::string& what, const std::vector<double>& breakpoints) {
  std::vector<double> cuts{a};
  for (double x : breakpoints) {
    if (x > a && x < b) cuts.push_back(x);
  }
  std::sort(cuts.begin() + 1, cuts.end());
  cuts.push_back(b);

  Result total;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    accumulate(total, integrate_piece(f, cuts[k], cuts[k + 1], options));
  }
  check(total, options, what, a, b);
  return total;
}

Result principal_value(const Integrand& f, double a, double b, double pole, double window,
                       const Options& options, const std::string& what,
                       const std::vector<double>& breakpoints) {
  if (!(pole > a && pole < b)) {
    throw DomainError("principal_value: pole must lie strictly inside (a, b)");
  }
  if (!(window > 0.0)) throw DomainError("principal_value: window must be > 0");

  const double w_left = std::min(window, pole - a);
  const double w_right = std::min(window, b - pole);
  const double w_sym = std::min(w_left, w_right);
  const double f_pole = f(pole);

  Result total;

  auto folded = [&](double s) { return (f(pole + s) - f(pole - s)) / s; };
  accumulate(total, integrate(folded, 0.0, w_sym, options, what + " (folded window)"));

  // One-sided remainder of a clipped window, regularised by subtracting f(pole).
  auto subtracted = [&](double x) { return (f(x) - f_pole) / (x - pole); };
  if (w_right > w_sym) {
    accumulate(total, integrate(subtracted, pole + w_sym, pole + w_right, options,
                                what + " (window remainder)"));
  } else if (w_left > w_sym) {
    accumulate(total, integrate(subtracted, pole - w_left, pole - w_sym, options,
                                what + " (window remainder)"));
  }
  total.value += f_pole * std::log(w_right / w_left);

  auto plain = [&](double x) { return f(x) / (x - pole); };
  if (pole - w_left > a) {
    accumulate(total, integrate(plain, a, pole - w_left, options, what + " (below window)",
                                breakpoints));
  }
  if (pole + w_right < b) {
    accumulate(total, integrate(plain, pole + w_right, b, options, what + " (above window)",
                                breakpoints));
  }
  return total;
}

}  // namespace phonodec::quad
