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
#include <random>

#include <Eigen/Eigenvalues>

#include "doctest.h"
#include "oracles.hpp"
#include "phonodec/error.hpp"
#include "phonodec/lindblad.hpp"
#include "phonodec/units.hpp"

using namespace phonodec;
using Eigen::MatrixXcd;

namespace {

MatrixXcd random_hermitian(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  MatrixXcd a(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) a(i, j) = {g(rng), g(rng)};
  return 0.5 * (a + a.adjoint());
}

DensityMatrix random_density(Eigen::Index dim, std::mt19937_64& rng) {
  const MatrixXcd a = random_hermitian(dim, rng);
  DensityMatrix rho = a * a.adjoint();
  return rho / rho.trace();
}

Eigen::VectorXcd vec(const MatrixXcd& m) { return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size()); }

MatrixXcd constant(int n, double v) { return MatrixXcd::Constant(n, n, Complex(v, 0.0)); }

// A generic N = 3 test generator with all terms switched on.
struct Setup {
  MatrixXcd carrier, lamb, gp, gm;
};

Setup generic(std::mt19937_64& rng, int n = 3) {
  Setup s;
  s.carrier = carrier_hamiltonian(n, 5.0).matrix;
  s.lamb = lamb_shift_hamiltonian(0.01 * random_hermitian(n, rng), 0.02 * random_hermitian(n, rng)).matrix;
  s.gp = oracle::random_psd_equal_diagonal(n, 2e-4, rng);
  s.gm = oracle::random_psd_equal_diagonal(n, 7e-3, rng);
  return s;
}

CorrelationSet synthetic_set(int n, const MatrixXcd& gp, const MatrixXcd& gm, const MatrixXcd& dp,
                             const MatrixXcd& dm) {
  CorrelationSet set;
  set.gamma_plus = gp;
  set.gamma_minus = gm;
  set.delta_plus = dp;
  set.delta_minus = dm;
  set.geometry = ArrayGeometry(n, 4.0, 5.0, 2.0);
  set.temperature = 10.0;
  return set;
}

}  // namespace

TEST_SUITE("lindblad-engine") {

TEST_CASE("optimised generator equals the term-by-term form") {
  std::mt19937_64 rng(1);
  const Setup s = generic(rng);
  const Liouvillian gen(s.carrier + s.lamb, s.gp, s.gm);
  for (int k = 0; k < 5; ++k) {
    const DensityMatrix rho = random_density(8, rng);
    const DensityMatrix ref = liouvillian_apply(rho, s.carrier, s.lamb, s.gp, s.gm);
    CHECK((gen.apply(rho) - ref).norm() <= 1e-12 * ref.norm());
    CHECK(std::abs(ref.trace()) < 1e-15 * ref.norm() * 100);
  }
}

TEST_CASE("superoperator consistency, dissipativity, trace preservation") {
  std::mt19937_64 rng(2);
  const Setup s = generic(rng);
  const MatrixXcd sup = build_superoperator(s.carrier, s.lamb, s.gp, s.gm);
  CHECK(sup.rows() == 64);
  for (int k = 0; k < 3; ++k) {
    const DensityMatrix rho = random_density(8, rng);
    const Eigen::VectorXcd ref = vec(liouvillian_apply(rho, s.carrier, s.lamb, s.gp, s.gm));
    CHECK((sup * vec(rho) - ref).norm() <= 1e-12 * ref.norm());
  }
  const Eigen::VectorXcd ev = Eigen::ComplexEigenSolver<MatrixXcd>(sup).eigenvalues();
  CHECK(ev.real().maxCoeff() <= 1e-10);
  const Eigen::VectorXcd id = vec(MatrixXcd::Identity(8, 8));
  CHECK((id.adjoint() * sup).norm() <= 1e-13 * sup.norm());
  CHECK_THROWS_AS(Liouvillian(carrier_hamiltonian(6, 5.0).matrix, constant(6, 0.0), constant(6, 0.0)).superoperator(),
                  DomainError);
}

TEST_CASE("stationarity without coupling and the rate-convention anchor") {
  const MatrixXcd hc = carrier_hamiltonian(2, 5.0).matrix;
  const MatrixXcd zero = MatrixXcd::Zero(2, 2);
  for (std::size_t b = 0; b < 4; ++b) {
    const DensityMatrix p = RegisterState::basis(2, b).projector();
    CHECK(liouvillian_apply(p, hc, MatrixXcd::Zero(4, 4), zero, zero).norm() == 0.0);
  }
  // N = 1, T = 0: d rho_11 / dt = -2 Gamma-_11 / hbar
  const double gamma = 6.6e-3;
  const MatrixXcd gm = MatrixXcd::Constant(1, 1, gamma);
  const DensityMatrix excited = RegisterState::basis(1, 1).projector();
  const DensityMatrix d = liouvillian_apply(excited, carrier_hamiltonian(1, 5.0).matrix, MatrixXcd::Zero(2, 2),
                                            MatrixXcd::Zero(1, 1), gm);
  CHECK(d(1, 1).real() == doctest::Approx(-2.0 * gamma / units::kHbar).epsilon(1e-14));
}

TEST_CASE("thermal steady state of one qubit") {
  const double n = bose_occupation(5.0, 10.0);
  const double g0 = 3e-3;
  const Liouvillian gen(carrier_hamiltonian(1, 5.0).matrix, MatrixXcd::Constant(1, 1, g0 * n),
                        MatrixXcd::Constant(1, 1, g0 * (n + 1.0)));
  const DensityMatrix ss = steady_state(gen);
  CHECK(ss(1, 1).real() == doctest::Approx(n / (2 * n + 1)).epsilon(1e-6));
  CHECK(ss(1, 1).real() / ss(0, 0).real() ==
        doctest::Approx(std::exp(-5.0 / (units::kBoltzmann * 10.0))).epsilon(1e-6));
}

TEST_CASE("noiseless subspace for constant correlations") {
  const int n = 4;
  const CorrelationSet set = synthetic_set(n, constant(n, 1e-4), constant(n, 6e-3), constant(n, 4e-4),
                                           constant(n, 4e-3));
  const MatrixXcd sup = Liouvillian::lab_frame(set).superoperator();
  const RegisterState s = singlet_dimer_state(DimerPartition::adjacent(n));
  CHECK((sup * vec(s.projector())).norm() <= 1e-9);
}

TEST_CASE("spectral evolution keeps a noiseless state over long horizons") {
  const int n = 4;
  const CorrelationSet set = synthetic_set(n, constant(n, 1e-4), constant(n, 6e-3), constant(n, 4e-4),
                                           constant(n, 4e-3));
  const RegisterState s = singlet_dimer_state(DimerPartition::adjacent(n));
  const SpectralPropagator p(Liouvillian::rotating_frame(set));
  const Eigen::VectorXcd c = p.expand(s.projector());
  for (double t : {1e3, 1e6, 1e9}) {
    CAPTURE(t);
    const DensityMatrix rho = p.at(c, t);
    CHECK(std::abs(rho.trace() - 1.0) <= 1e-12);
    CHECK(std::abs(s.amplitudes().dot(rho * s.amplitudes()).real() - 1.0) <= 1e-12);
  }
}

TEST_CASE("evolution without coupling keeps S^z eigenstates") {
  const int n = 2;
  const CorrelationSet set = synthetic_set(n, MatrixXcd::Zero(n, n), MatrixXcd::Zero(n, n),
                                           MatrixXcd::Zero(n, n), MatrixXcd::Zero(n, n));
  const RegisterState psi = RegisterState::basis(n, 0b01);
  const std::vector<double> times{0.0, 0.1, 1.0, 10.0, 100.0};
  for (EvolutionMethod m : {EvolutionMethod::adaptive_step, EvolutionMethod::spectral}) {
    EvolveOptions opt;
    opt.method = m;
    const TrajectoryRecord r = evolve(Liouvillian::rotating_frame(set), psi.projector(), psi, times, 5.0, opt);
    REQUIRE(r.rows.size() == times.size());
    for (const auto& row : r.rows) CHECK(row.fidelity == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("rotating-frame evolution agrees with the lab frame") {
  std::mt19937_64 rng(5);
  const int n = 2;
  const CorrelationSet set = synthetic_set(n, oracle::random_psd_equal_diagonal(n, 1e-3, rng),
                                           oracle::random_psd_equal_diagonal(n, 2e-2, rng),
                                           0.01 * random_hermitian(n, rng), 0.02 * random_hermitian(n, rng));
  Eigen::VectorXcd amp(4);
  amp << 0.3, Complex(0.5, 0.2), -0.6, Complex(0.1, -0.4);
  const RegisterState psi = RegisterState::normalized(amp);
  const std::vector<double> times{0.0, 0.05, 0.5, 3.0};
  EvolveOptions opt;
  opt.rel_tol = 1e-11;
  opt.abs_tol = 1e-15;
  const auto rot = evolve(Liouvillian::rotating_frame(set), psi.projector(), psi, times, 5.0, opt);
  const auto lab = evolve(Liouvillian::lab_frame(set), psi.projector(), psi, times, 0.0, opt);
  for (std::size_t k = 0; k < times.size(); ++k) CHECK(rot.rows[k].fidelity == doctest::Approx(lab.rows[k].fidelity).epsilon(1e-8));
}

TEST_CASE("early-time slope of the singlet fidelity") {
  const int n = 4;
  std::mt19937_64 rng(8);
  const MatrixXcd gp = oracle::random_psd_equal_diagonal(n, 2e-5, rng);
  const MatrixXcd gm = oracle::random_psd_equal_diagonal(n, 6.6e-3, rng);
  const CorrelationSet set = synthetic_set(n, gp, gm, 1e-3 * random_hermitian(n, rng), 3e-3 * random_hermitian(n, rng));
  const RegisterState psi = singlet_dimer_state(DimerPartition::adjacent(n));
  const double rate = tau1_inverse(psi, gp, gm);
  const Liouvillian gen = Liouvillian::rotating_frame(set);

  // the generator as written gives F = 1 - 2 t / tau1 + O(t^2)
  CHECK(fidelity_initial_slope(gen, psi) == doctest::Approx(-2.0 * rate).epsilon(1e-10));

  const double t_end = 1e-3 / rate;
  std::vector<double> times;
  for (int k = 0; k <= 20; ++k) times.push_back(t_end * k / 20.0);
  EvolveOptions opt;
  opt.rel_tol = 1e-12;
  opt.abs_tol = 1e-16;
  const TrajectoryRecord r = evolve(gen, psi.projector(), psi, times, 5.0, opt);
  // least-squares fit F - 1 = b t + c t^2
  Eigen::MatrixXd a(times.size(), 2);
  Eigen::VectorXd y(times.size());
  for (std::size_t k = 0; k < times.size(); ++k) {
    a(k, 0) = times[k];
    a(k, 1) = times[k] * times[k];
    y(k) = r.rows[k].fidelity - 1.0;
  }
  const Eigen::Vector2d coef = a.colPivHouseholderQr().solve(y);
  CHECK(-coef(0) == doctest::Approx(2.0 * rate).epsilon(0.02));
}

TEST_CASE("spectral and adaptive backends agree") {
  const int n = 4;
  const ArrayGeometry geom(n, 4.0, 5.0, 0.5 * 2.0 * units::kPi / shell_wavevector(5.0, 5.11));
  const CorrelationSet set = compute_correlations(geom, MaterialParams{}, 10.0);
  const RegisterState psi = singlet_dimer_state(DimerPartition::adjacent(n));
  std::vector<double> times{0.0};
  for (double t : log_time_grid(1e-2, 1e2, 5)) times.push_back(t);
  EvolveOptions adaptive;
  EvolveOptions spectral;
  spectral.method = EvolutionMethod::spectral;
  const Liouvillian gen = Liouvillian::rotating_frame(set);
  const auto a = evolve(gen, psi.projector(), psi, times, 5.0, adaptive);
  const auto s = evolve(gen, psi.projector(), psi, times, 5.0, spectral);
  double worst = 0.0;
  for (std::size_t k = 0; k < times.size(); ++k) worst = std::max(worst, std::abs(a.rows[k].fidelity - s.rows[k].fidelity));
  CHECK(worst <= 1e-6);
  CHECK(s.rows.back().fidelity < 0.5);
}

TEST_CASE("fidelity crossing time") {
  const int n = 2;
  const CorrelationSet set = synthetic_set(n, MatrixXcd::Zero(n, n), 0.01 * MatrixXcd::Identity(n, n),
                                           MatrixXcd::Zero(n, n), MatrixXcd::Zero(n, n));
  const RegisterState psi = RegisterState::basis(n, 0b11);
  const SpectralPropagator prop(Liouvillian::rotating_frame(set));
  // both qubits decay independently at 2 Gamma / hbar: F = exp(-4 Gamma t / hbar)
  const double t = fidelity_crossing_time(prop, psi.projector(), psi, 5.0, 0.9, 1e-3, 1e4);
  CHECK(t == doctest::Approx(-std::log(0.9) * units::kHbar / (4.0 * 0.01)).epsilon(1e-9));
  CHECK(std::isnan(fidelity_crossing_time(prop, psi.projector(), psi, 5.0, 1e-30, 1e-3, 1.0)));
}

TEST_CASE("input validation and the positivity monitor") {
  const int n = 2;
  const CorrelationSet ok = synthetic_set(n, MatrixXcd::Zero(n, n), 0.01 * MatrixXcd::Identity(n, n),
                                          MatrixXcd::Zero(n, n), MatrixXcd::Zero(n, n));
  const RegisterState psi = RegisterState::basis(n, 0);
  const Liouvillian gen = Liouvillian::rotating_frame(ok);
  CHECK_THROWS_AS(evolve(gen, psi.projector(), psi, {0.0, 2.0, 1.0}, 5.0), DomainError);
  CHECK_THROWS_AS(evolve(gen, 2.0 * psi.projector(), psi, {0.0, 1.0}, 5.0), DomainError);

  // an indefinite Gamma is not a valid bath; positivity must be flagged, not repaired
  MatrixXcd bad(2, 2);
  bad << 0.01, 0.03, 0.03, 0.01;
  const CorrelationSet broken = synthetic_set(n, MatrixXcd::Zero(n, n), bad, MatrixXcd::Zero(n, n), MatrixXcd::Zero(n, n));
  const RegisterState up = RegisterState::basis(n, 0b11);
  CHECK_THROWS_AS(evolve(Liouvillian::rotating_frame(broken), up.projector(), up, log_time_grid(1e-2, 1e3, 5), 5.0),
                  NumericalError);
}

}
