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

#include "phonodec/bath_correlations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>
#include <thread>
#include <vector>

#include "phonodec/error.hpp"
#include "phonodec/units.hpp"

namespace phonodec {
namespace {

constexpr double kPi = units::kPi;

// Distinct |z_i - z_j| of a uniform array are k * spacing; fill a Toeplitz matrix.
Eigen::MatrixXcd toeplitz(const std::vector<double>& by_separation) {
  const auto n = static_cast<Eigen::Index>(by_separation.size());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = by_separation[static_cast<std::size_t>(std::abs(i - j))];
    }
  }
  return m;
}

// 2^-53 * top 53 bits.
inline double to_unit(std::uint64_t x) { return static_cast<double>(x >> 11) * 0x1.0p-53; }

// SplitMix64 evaluated at an arbitrary stream position.
inline std::uint64_t splitmix_at(std::uint64_t key, std::uint64_t counter) {
  std::uint64_t z = key + (counter + 1) * 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

double thermal_weight(Process process, double energy, double temperature) {
  const double n = bose_occupation(energy, temperature);
  return process == Process::emission ? n + 1.0 : n;
}

double shell_angular_integral(double q, double dz, double oscillator_len, double well_width,
                              const quad::Options& options) {
  if (q == 0.0) return 0.0;
  const double x = q * q * oscillator_len * oscillator_len;
  auto integrand = [=](double mu) {
    const double s = (1.0 - mu) * (1.0 + mu);
    const double mz = well_form_factor(q * mu, well_width);
    // azimuthal average of cos^2(phi) contributes the factor pi
    return kPi * 0.5 * x * s * std::exp(-0.5 * x * s) * mz * mz * std::cos(q * mu * dz);
  };
  // The in-plane Gaussian confines the weight to 1 - mu ~ 1/x for large x.
  std::vector<double> breaks;
  for (double c : {0.5, 2.0, 8.0, 32.0}) {
    if (x > c) breaks.push_back(1.0 - c / x);
  }
  std::ostringstream what;
  what << "shell angular integral (q=" << q << ", dz=" << dz << ")";
  // integrand is even in mu
  return 2.0 * quad::integrate(integrand, 0.0, 1.0, options, what.str(), breaks).value;
}

Eigen::MatrixXcd gamma_matrix(Process process, const ArrayGeometry& geometry,
                              const MaterialParams& materials, double temperature,
                              const BathSettings& settings) {
  materials.validate();
  const int n = geometry.n_dots();
  const double e = geometry.splitting();
  const double weight = thermal_weight(process, e, temperature);
  if (weight == 0.0) return Eigen::MatrixXcd::Zero(n, n);

  const double q_shell = shell_wavevector(e, materials.sound_speed);
  const double len = oscillator_length(e, materials.effective_mass);
  const double prefactor = weight * deformation_coupling_sq(q_shell, materials) * q_shell *
                           q_shell / (8.0 * kPi * kPi * units::kHbar * materials.sound_speed);

  std::vector<double> by_sep(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    by_sep[static_cast<std::size_t>(k)] =
        prefactor * shell_angular_integral(q_shell, k * geometry.spacing(), len,
                                           geometry.well_width(), settings.angular);
  }
  return toeplitz(by_sep);
}

Eigen::MatrixXcd delta_matrix(Process process, const ArrayGeometry& geometry,
                              const MaterialParams& materials, double temperature,
                              const BathSettings& settings) {
  materials.validate();
  if (!(settings.cutoff_multiplier >= 5.0)) {
    throw DomainError("cutoff_multiplier must be >= 5");
  }
  const int n = geometry.n_dots();
  const double e = geometry.splitting();
  const double theta = process == Process::emission ? 1.0 : 0.0;
  if (theta == 0.0 && temperature == 0.0) return Eigen::MatrixXcd::Zero(n, n);

  const double cs = materials.sound_speed;
  const double q_shell = shell_wavevector(e, cs);
  const double len = oscillator_length(e, materials.effective_mass);
  const double q_max = settings.cutoff_multiplier * q_shell;

  std::vector<double> by_sep(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double dz = k * geometry.spacing();
    // Occupation is evaluated at each mode's own energy hbar c_s q.
    auto f = [&](double q) {
      if (q <= 0.0) return 0.0;
      const double occupation =
          temperature > 0.0 ? bose_occupation(units::kHbar * cs * q, temperature) : 0.0;
      return q * q * deformation_coupling_sq(q, materials) *
             shell_angular_integral(q, dz, len, geometry.well_width(), settings.angular) *
             (occupation + theta);
    };
    std::ostringstream what;
    what << "Lamb-shift radial PV integral (dz=" << dz << ")";
    const auto pv = quad::principal_value(f, 0.0, q_max, q_shell,
                                          settings.pv_window_fraction * q_shell, settings.radial,
                                          what.str());
    // 1/(E - hbar c q) = -1/(hbar c (q - q_shell))
    by_sep[static_cast<std::size_t>(k)] = -pv.value / (8.0 * kPi * kPi * kPi * units::kHbar * cs);
  }
  return toeplitz(by_sep);
}

CorrelationSet compute_correlations(const ArrayGeometry& geometry, const MaterialParams& materials,
                                    double temperature, const BathSettings& settings,
                                    bool include_lamb_shift) {
  CorrelationSet set;
  set.geometry = geometry;
  set.materials = materials;
  set.temperature = temperature;
  set.gamma_plus = gamma_matrix(Process::absorption, geometry, materials, temperature, settings);
  set.gamma_minus = gamma_matrix(Process::emission, geometry, materials, temperature, settings);
  const int n = geometry.n_dots();
  if (include_lamb_shift) {
    set.delta_plus = delta_matrix(Process::absorption, geometry, materials, temperature, settings);
    set.delta_minus = delta_matrix(Process::emission, geometry, materials, temperature, settings);
  } else {
    set.delta_plus = Eigen::MatrixXcd::Zero(n, n);
    set.delta_minus = Eigen::MatrixXcd::Zero(n, n);
  }
  return set;
}

double single_dot_rate(double splitting, double well_width, const MaterialParams& materials,
                       double temperature, const BathSettings& settings) {
  if (!(splitting > 0.0 && splitting < materials.lo_phonon_energy)) {
    throw DomainError("single_dot_rate: splitting must lie in (0, lo_phonon_energy)");
  }
  const ArrayGeometry dot(1, well_width, splitting, 0.0, materials);
  const double plus = gamma_matrix(Process::absorption, dot, materials, temperature, settings)(0, 0).real();
  const double minus = gamma_matrix(Process::emission, dot, materials, temperature, settings)(0, 0).real();
  return 2.0 * (plus + minus) / units::kHbar;
}

OracleResult gamma_bruteforce_oracle(Process process, const ArrayGeometry& geometry,
                                     const MaterialParams& materials, double temperature,
                                     std::uint64_t samples, std::uint64_t seed, unsigned threads) {
  if (samples < 100000) throw DomainError("gamma_bruteforce_oracle needs at least 1e5 samples");
  materials.validate();
  const int n = geometry.n_dots();
  const auto nn = static_cast<std::size_t>(n) * static_cast<std::size_t>(n);
  const double e = geometry.splitting();
  const double weight = thermal_weight(process, e, temperature);
  const double q_shell = shell_wavevector(e, materials.sound_speed);

  // Per-chunk sums of g_i conj(g_j) and of the squared real/imaginary parts.
  struct Partial {
    std::vector<Complex> sum;
    std::vector<double> sq_re;
    std::vector<double> sq_im;
  };
  constexpr std::uint64_t kChunk = 1u << 16;
  const std::uint64_t n_chunks = (samples + kChunk - 1) / kChunk;
  std::vector<Partial> partials(n_chunks);

  const std::uint64_t key = splitmix_at(seed, 0);
  auto run_chunk = [&](std::uint64_t c) {
    Partial p{std::vector<Complex>(nn), std::vector<double>(nn), std::vector<double>(nn)};
    std::vector<Complex> g(static_cast<std::size_t>(n));
    const std::uint64_t begin = c * kChunk;
    const std::uint64_t end = std::min(samples, begin + kChunk);
    for (std::uint64_t k = begin; k < end; ++k) {
      const double mu = 2.0 * to_unit(splitmix_at(key, 2 * k)) - 1.0;
      const double phi = 2.0 * kPi * to_unit(splitmix_at(key, 2 * k + 1));
      const double sin_theta = std::sqrt(std::max(0.0, 1.0 - mu * mu));
      const Wavevector q{q_shell * sin_theta * std::cos(phi), q_shell * sin_theta * std::sin(phi),
                         q_shell * mu};
      for (int i = 0; i < n; ++i) g[static_cast<std::size_t>(i)] = coupling_g(i, q, geometry, materials);
      for (std::size_t i = 0; i < static_cast<std::size_t>(n); ++i) {
        for (std::size_t j = 0; j < static_cast<std::size_t>(n); ++j) {
          const Complex v = g[i] * std::conj(g[j]);
          const std::size_t idx = i * static_cast<std::size_t>(n) + j;
          p.sum[idx] += v;
          p.sq_re[idx] += v.real() * v.real();
          p.sq_im[idx] += v.imag() * v.imag();
        }
      }
    }
    partials[c] = std::move(p);
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n_chunks)));
  if (workers == 1) {
    for (std::uint64_t c = 0; c < n_chunks; ++c) run_chunk(c);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t c = w; c < n_chunks; c += workers) run_chunk(c);
      });
    }
    for (auto& t : pool) t.join();
  }

  std::vector<Complex> sum(nn);
  std::vector<double> sq_re(nn), sq_im(nn);
  for (const auto& p : partials) {
    for (std::size_t idx = 0; idx < nn; ++idx) {
      sum[idx] += p.sum[idx];
      sq_re[idx] += p.sq_re[idx];
      sq_im[idx] += p.sq_im[idx];
    }
  }

  // pi/(2pi)^3 * q^2/(hbar c) * 4 pi <g g*> = q^2/(2 pi hbar c) <g g*>
  const double scale =
      weight * q_shell * q_shell / (2.0 * kPi * units::kHbar * materials.sound_speed);
  const auto ns = static_cast<double>(samples);
  OracleResult out;
  out.samples = samples;
  out.value.resize(n, n);
  out.standard_error.resize(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::size_t idx = static_cast<std::size_t>(i * n + j);
      const Complex mean = sum[idx] / ns;
      const double var_re = std::max(0.0, sq_re[idx] / ns - mean.real() * mean.real());
      const double var_im = std::max(0.0, sq_im[idx] / ns - mean.imag() * mean.imag());
      out.value(i, j) = scale * mean;
      out.standard_error(i, j) = scale * std::sqrt((var_re + var_im) / (ns - 1.0));
    }
  }
  return out;
}

}  // namespace phonodec
