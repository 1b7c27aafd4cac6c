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

#include "phonodec/lindblad.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Eigenvalues>

#include "phonodec/error.hpp"
#include "phonodec/units.hpp"

namespace phonodec {
namespace {

constexpr Complex kI{0.0, 1.0};

int qubits_of(Eigen::Index dim) {
  int n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim) throw DomainError("operator dimension is not a power of two");
  return n;
}

// vec(B^T (x) A) accumulation into a dense superoperator, column stacking.
void add_kron(Eigen::MatrixXcd& out, const SparseOp& left_t, const SparseOp& right, Complex scale) {
  const Eigen::Index d = right.rows();
  for (Eigen::Index cb = 0; cb < left_t.outerSize(); ++cb) {
    for (SparseOp::InnerIterator itb(left_t, cb); itb; ++itb) {
      for (Eigen::Index ca = 0; ca < right.outerSize(); ++ca) {
        for (SparseOp::InnerIterator ita(right, ca); ita; ++ita) {
          out(itb.row() * d + ita.row(), cb * d + ca) += scale * itb.value() * ita.value();
        }
      }
    }
  }
}

SparseOp identity(Eigen::Index dim) {
  SparseOp id(dim, dim);
  id.setIdentity();
  return id;
}

Eigen::VectorXcd vec(const DensityMatrix& rho) {
  return Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
}

DensityMatrix unvec(const Eigen::VectorXcd& v, Eigen::Index dim) {
  return Eigen::Map<const Eigen::MatrixXcd>(v.data(), dim, dim);
}

}  // namespace

Liouvillian::Liouvillian(const Eigen::MatrixXcd& hamiltonian, const Eigen::MatrixXcd& gamma_plus,
                         const Eigen::MatrixXcd& gamma_minus) {
  require_hermitian(hamiltonian, "Hamiltonian", 1e-12);
  require_hermitian(gamma_plus, "Gamma+");
  require_hermitian(gamma_minus, "Gamma-");
  n_qubits_ = qubits_of(hamiltonian.rows());
  dim_ = hamiltonian.rows();
  if (gamma_plus.rows() != n_qubits_ || gamma_minus.rows() != n_qubits_) {
    throw DomainError("Gamma matrices do not match the Hamiltonian dimension");
  }

  // K = sum_ij Gamma^eta_ij s_j^{-eta} s_i^{eta}: the bilinear form with transposed matrices.
  const SparseOp k = bilinear_sparse(gamma_plus.transpose(), gamma_minus.transpose());
  const SparseOp h = hamiltonian.sparseView(0.0, 0.0);
  h_nh_ = (-kI / units::kHbar) * SparseOp(h - kI * k);
  h_nh_adj_ = h_nh_.adjoint();

  for (Pauli kind : {Pauli::plus, Pauli::minus}) {
    const Eigen::MatrixXcd& gamma = kind == Pauli::plus ? gamma_plus : gamma_minus;
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(gamma);
    for (int c = 0; c < n_qubits_; ++c) {
      const double lambda = eig.eigenvalues()(c);
      if (lambda == 0.0) continue;
      SparseOp a(dim_, dim_);
      for (int i = 0; i < n_qubits_; ++i) {
        const Complex u = eig.eigenvectors()(i, c);
        if (u != 0.0) a += u * ladder_sparse(i, kind, n_qubits_);
      }
      jumps_.push_back({2.0 * lambda / units::kHbar, a, SparseOp(a.adjoint())});
    }
  }
}

Liouvillian Liouvillian::rotating_frame(const CorrelationSet& set, bool include_lamb_shift) {
  const int n = set.n_dots();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(Eigen::Index{1} << n, Eigen::Index{1} << n);
  if (include_lamb_shift) h = lamb_shift_hamiltonian(set.delta_plus, set.delta_minus).matrix;
  return Liouvillian(h, set.gamma_plus, set.gamma_minus);
}

Liouvillian Liouvillian::lab_frame(const CorrelationSet& set, bool include_lamb_shift) {
  const int n = set.n_dots();
  Eigen::MatrixXcd h = carrier_hamiltonian(n, set.geometry.splitting()).matrix;
  if (include_lamb_shift) h += lamb_shift_hamiltonian(set.delta_plus, set.delta_minus).matrix;
  return Liouvillian(h, set.gamma_plus, set.gamma_minus);
}

DensityMatrix Liouvillian::apply(const DensityMatrix& rho) const {
  if (rho.rows() != dim_ || rho.cols() != dim_) {
    throw DomainError("density matrix dimension does not match the generator");
  }
  DensityMatrix out = h_nh_ * rho;
  out += rho * h_nh_adj_;
  for (const Jump& j : jumps_) {
    out += j.weight * (j.op * (rho * j.op_adj));
  }
  return out;
}

Eigen::MatrixXcd Liouvillian::superoperator() const {
  if (n_qubits_ > kMaxSpectralQubits) {
    std::ostringstream msg;
    msg << "dense superoperator limited to N <= " << kMaxSpectralQubits << " (got N=" << n_qubits_
        << "); use the adaptive-step evolution path";
    throw DomainError(msg.str());
  }
  const Eigen::Index d2 = dim_ * dim_;
  Eigen::MatrixXcd s = Eigen::MatrixXcd::Zero(d2, d2);
  const SparseOp id = identity(dim_);
  add_kron(s, id, h_nh_, 1.0);                                   // G rho
  add_kron(s, SparseOp(h_nh_adj_.transpose()), id, 1.0);        // rho G^dagger
  for (const Jump& j : jumps_) {
    add_kron(s, SparseOp(j.op_adj.transpose()), j.op, j.weight);  // A rho A^dagger
  }
  return s;
}

DensityMatrix liouvillian_apply(const DensityMatrix& rho, const Eigen::MatrixXcd& carrier,
                                const Eigen::MatrixXcd& lamb_shift,
                                const Eigen::MatrixXcd& gamma_plus,
                                const Eigen::MatrixXcd& gamma_minus) {
  const Eigen::Index dim = rho.rows();
  if (rho.cols() != dim || carrier.rows() != dim || lamb_shift.rows() != dim) {
    throw DomainError("liouvillian_apply: dimension mismatch");
  }
  const int n = qubits_of(dim);
  if (gamma_plus.rows() != n || gamma_minus.rows() != n) {
    throw DomainError("liouvillian_apply: Gamma size does not match the register");
  }
  const Eigen::MatrixXcd h = carrier + lamb_shift;
  DensityMatrix out = (kI / units::kHbar) * (rho * h - h * rho);
  for (Pauli eta : {Pauli::plus, Pauli::minus}) {
    const Eigen::MatrixXcd& gamma = eta == Pauli::plus ? gamma_plus : gamma_minus;
    for (int i = 0; i < n; ++i) {
      const Eigen::MatrixXcd si = pauli_local(i, eta, n).matrix;
      for (int j = 0; j < n; ++j) {
        if (gamma(i, j) == 0.0) continue;
        const Eigen::MatrixXcd sj = pauli_local(j, conjugate(eta), n).matrix;
        const Eigen::MatrixXcd a = si * rho;
        const Eigen::MatrixXcd b = rho * sj;
        out += gamma(i, j) / units::kHbar * ((a * sj - sj * a) + (si * b - b * si));
      }
    }
  }
  return out;
}

Eigen::MatrixXcd build_superoperator(const Eigen::MatrixXcd& carrier,
                                     const Eigen::MatrixXcd& lamb_shift,
                                     const Eigen::MatrixXcd& gamma_plus,
                                     const Eigen::MatrixXcd& gamma_minus) {
  return Liouvillian(carrier + lamb_shift, gamma_plus, gamma_minus).superoperator();
}

double fidelity_initial_slope(const Liouvillian& generator, const RegisterState& psi) {
  const Eigen::VectorXcd& v = psi.amplitudes();
  const DensityMatrix drho = generator.apply(psi.projector());
  return v.dot(drho * v).real();
}

DensityMatrix steady_state(const Liouvillian& generator) {
  Eigen::MatrixXcd s = generator.superoperator();
  const Eigen::Index d = generator.dimension();
  // Replace the (0,0) population equation by the trace condition.
  s.row(0).setZero();
  for (Eigen::Index i = 0; i < d; ++i) s(0, i * d + i) = 1.0;
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(d * d);
  rhs(0) = 1.0;
  const Eigen::VectorXcd v = s.fullPivLu().solve(rhs);
  return unvec(v, d);
}

std::vector<double> log_time_grid(double t_min, double t_max, int points_per_decade) {
  if (!(t_min > 0.0 && t_max > t_min) || points_per_decade < 1) {
    throw DomainError("log_time_grid needs 0 < t_min < t_max and points_per_decade >= 1");
  }
  const double decades = std::log10(t_max / t_min);
  const int n = std::max(1, static_cast<int>(std::ceil(decades * points_per_decade - 1e-9)));
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) grid.push_back(t_min * std::pow(10.0, decades * k / n));
  grid.back() = t_max;
  return grid;
}

namespace {

Eigen::VectorXd carrier_energies(int n_qubits, double splitting) {
  const Eigen::Index dim = Eigen::Index{1} << n_qubits;
  Eigen::VectorXd energies(dim);
  for (Eigen::Index b = 0; b < dim; ++b) {
    const int ups = __builtin_popcountll(static_cast<unsigned long long>(b));
    energies(b) = 0.5 * splitting * (2.0 * ups - n_qubits);
  }
  return energies;
}

}  // namespace

DensityMatrix to_lab_frame(const DensityMatrix& rotating, double splitting, double t) {
  const Eigen::Index d = rotating.rows();
  if (splitting == 0.0 || t == 0.0) return rotating;
  const Eigen::VectorXd energies = carrier_energies(qubits_of(d), splitting);
  DensityMatrix rho(d, d);
  for (Eigen::Index c = 0; c < d; ++c) {
    for (Eigen::Index r = 0; r < d; ++r) {
      rho(r, c) = rotating(r, c) * std::polar(1.0, -(energies(r) - energies(c)) * t / units::kHbar);
    }
  }
  return rho;
}

SpectralPropagator::SpectralPropagator(const Liouvillian& generator) : dim_(generator.dimension()) {
  const Eigen::MatrixXcd s = generator.superoperator();
  const Eigen::ComplexEigenSolver<Eigen::MatrixXcd> eig(s, true);
  if (eig.info() != Eigen::Success) throw NumericalError("superoperator eigendecomposition failed");
  vectors_ = eig.eigenvectors();
  values_ = eig.eigenvalues();
  const double scale = std::max(1e-300, s.cwiseAbs().maxCoeff());
  const double residual = (s * vectors_ - vectors_ * values_.asDiagonal()).cwiseAbs().maxCoeff();
  if (residual > 1e-9 * scale) {
    std::ostringstream msg;
    msg << "superoperator eigendecomposition residual " << residual << " too large";
    throw NumericalError(msg.str());
  }
  // A physical generator has Re(lambda) <= 0. Eigenvalues below the solver
  // resolution are set to exactly zero and roundoff-level positive real parts
  // are cleared; otherwise degenerate stationary clusters drift linearly in t.
  const double roundoff = 1e-12 * scale;
  for (Eigen::Index k = 0; k < values_.size(); ++k) {
    const double re = values_(k).real();
    if (re > roundoff) {
      std::ostringstream msg;
      msg << "superoperator has an eigenvalue with positive real part " << re
          << "; the bath matrices are not positive semidefinite";
      throw NumericalError(msg.str());
    }
    if (std::abs(values_(k)) <= roundoff) {
      values_(k) = 0.0;
    } else if (re > 0.0) {
      values_(k) = Complex(0.0, values_(k).imag());
    }
  }
  lu_.compute(vectors_);
}

Eigen::VectorXcd SpectralPropagator::expand(const DensityMatrix& rho0) const {
  const Eigen::VectorXcd v0 = vec(rho0);
  const Eigen::VectorXcd coeff = lu_.solve(v0);
  const double recon = (vectors_ * coeff - v0).cwiseAbs().maxCoeff();
  if (!(recon <= 1e-10)) {
    std::ostringstream msg;
    msg << "initial state expansion in the Liouvillian eigenbasis is ill-conditioned (residual "
        << recon << "); use the adaptive-step method";
    throw NumericalError(msg.str());
  }
  return coeff;
}

DensityMatrix SpectralPropagator::at(const Eigen::VectorXcd& coefficients, double t) const {
  const Eigen::VectorXcd growth = (values_ * t).array().exp();
  return unvec(vectors_ * coefficients.cwiseProduct(growth), dim_);
}

double fidelity_crossing_time(const SpectralPropagator& propagator, const DensityMatrix& rho0,
                              const RegisterState& reference, double splitting, double threshold,
                              double t_min, double t_max) {
  const Eigen::VectorXcd coeff = propagator.expand(rho0);
  const Eigen::VectorXcd& psi = reference.amplitudes();
  auto fidelity = [&](double t) {
    return psi.dot(to_lab_frame(propagator.at(coeff, t), splitting, t) * psi).real();
  };
  double lo = 0.0;
  double hi = std::numeric_limits<double>::quiet_NaN();
  for (double t : log_time_grid(t_min, t_max, 40)) {
    if (fidelity(t) < threshold) {
      hi = t;
      break;
    }
    lo = t;
  }
  if (std::isnan(hi)) return hi;
  while (hi - lo > 1e-10 * hi) {
    const double mid = 0.5 * (lo + hi);
    (fidelity(mid) < threshold ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

namespace {

class Recorder {
 public:
  Recorder(const RegisterState& reference, double splitting, const EvolveOptions& opts)
      : reference_(reference.amplitudes()), splitting_(splitting), opts_(opts) {}

  TrajectoryRow record(double t, const DensityMatrix& rotating) const {
    const DensityMatrix rho = to_lab_frame(rotating, splitting_, t);
    TrajectoryRow row;
    row.t = t;
    row.trace_dev = std::abs(rho.trace() - 1.0);
    const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    const DensityMatrix hermitian = 0.5 * (rho + rho.adjoint());
    const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> eig(hermitian, Eigen::EigenvaluesOnly);
    row.min_eig = eig.eigenvalues().minCoeff();
    row.purity = hermitian.squaredNorm();
    row.fidelity = reference_.dot(rho * reference_).real();

    std::ostringstream msg;
    msg.precision(6);
    if (row.trace_dev > opts_.trace_tol) {
      msg << "trace deviation " << row.trace_dev << " exceeds " << opts_.trace_tol;
    } else if (herm > opts_.hermiticity_tol) {
      msg << "hermiticity deviation " << herm << " exceeds " << opts_.hermiticity_tol;
    } else if (row.min_eig < -opts_.min_eigenvalue_tol) {
      msg << "minimum eigenvalue " << row.min_eig << " below -" << opts_.min_eigenvalue_tol;
    } else if (row.fidelity < -opts_.min_eigenvalue_tol || row.fidelity > 1.0 + opts_.min_eigenvalue_tol) {
      msg << "fidelity " << row.fidelity << " outside [0, 1]";
    }
    if (!msg.str().empty()) {
      std::ostringstream full;
      full.precision(10);
      full << "monitor breach at t=" << t << " ps: " << msg.str();
      throw NumericalError(full.str());
    }
    return row;
  }

 private:
  Eigen::VectorXcd reference_;
  double splitting_;
  const EvolveOptions& opts_;
};

void evolve_adaptive(const Liouvillian& gen, const DensityMatrix& rho0,
                     const std::vector<double>& times, const Recorder& recorder,
                     const EvolveOptions& opts, TrajectoryRecord& out) {
  // Dormand-Prince 5(4), FSAL.
  constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
  constexpr double a21 = 1.0 / 5;
  constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
  constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
  constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                   a54 = -212.0 / 729;
  constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                   a64 = 49.0 / 176, a65 = -5103.0 / 18656;
  constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                   b6 = 11.0 / 84;
  constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                   e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;
  (void)c2; (void)c3; (void)c4; (void)c5;  // autonomous system

  DensityMatrix y = rho0;
  DensityMatrix k1 = gen.apply(y);
  double t = 0.0;
  double h = opts.initial_step;
  if (!(h > 0.0)) {
    const double rate = k1.cwiseAbs().maxCoeff() / std::max(1e-300, y.cwiseAbs().maxCoeff());
    h = rate > 0.0 ? 1e-3 / rate : 1.0;
  }

  std::size_t next = 0;
  while (next < times.size() && times[next] == 0.0) out.rows.push_back(recorder.record(0.0, y)), ++next;

  std::size_t steps = 0;
  while (next < times.size()) {
    const double target = times[next];
    bool hit = false;
    double step = h;
    if (t + step >= target) {
      step = target - t;
      hit = true;
    }
    if (step < 1e-14 * std::max(1.0, std::abs(t))) {
      std::ostringstream msg;
      msg << "step size underflow at t=" << t << " ps (h=" << step << ")";
      throw NumericalError(msg.str());
    }
    if (++steps > opts.max_steps) throw NumericalError("adaptive integrator exceeded max_steps");

    const DensityMatrix k2 = gen.apply(y + step * (a21 * k1));
    const DensityMatrix k3 = gen.apply(y + step * (a31 * k1 + a32 * k2));
    const DensityMatrix k4 = gen.apply(y + step * (a41 * k1 + a42 * k2 + a43 * k3));
    const DensityMatrix k5 = gen.apply(y + step * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const DensityMatrix k6 =
        gen.apply(y + step * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    DensityMatrix y_new = y + step * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const DensityMatrix k7 = gen.apply(y_new);
    const DensityMatrix err = step * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);

    double err_norm = 0.0;
    for (Eigen::Index idx = 0; idx < y.size(); ++idx) {
      const double scale = opts.abs_tol + opts.rel_tol * std::max(std::abs(y.data()[idx]),
                                                                  std::abs(y_new.data()[idx]));
      err_norm = std::max(err_norm, std::abs(err.data()[idx]) / scale);
    }

    const double factor =
        err_norm == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err_norm, -0.2), 0.2, 5.0);
    if (err_norm <= 1.0) {
      t = hit ? target : t + step;
      y = std::move(y_new);
      k1 = k7;
      ++out.steps_accepted;
      if (hit) {
        out.rows.push_back(recorder.record(t, y));
        ++next;
        // keep the controller's step rather than the truncated one
        h = std::max(h, step * factor);
      } else {
        h = step * factor;
      }
    } else {
      ++out.steps_rejected;
      h = step * std::max(0.2, factor);
    }
  }
}

void evolve_spectral(const Liouvillian& gen, const DensityMatrix& rho0,
                     const std::vector<double>& times, const Recorder& recorder,
                     TrajectoryRecord& out) {
  const SpectralPropagator propagator(gen);
  const Eigen::VectorXcd coeff = propagator.expand(rho0);
  for (double t : times) out.rows.push_back(recorder.record(t, propagator.at(coeff, t)));
}

}  // namespace

TrajectoryRecord evolve(const Liouvillian& generator, const DensityMatrix& rho0,
                        const RegisterState& reference, const std::vector<double>& times,
                        double splitting, const EvolveOptions& options) {
  const Eigen::Index d = generator.dimension();
  if (rho0.rows() != d || rho0.cols() != d) throw DomainError("rho0 dimension mismatch");
  if (reference.amplitudes().size() != d) throw DomainError("reference state dimension mismatch");
  if (std::abs(rho0.trace() - 1.0) > 1e-10) throw DomainError("rho0 must have unit trace");
  if ((rho0 - rho0.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw DomainError("rho0 must be Hermitian");
  }
  if (times.empty()) throw DomainError("time grid is empty");
  if (times.front() < 0.0) throw DomainError("time grid must start at t >= 0");
  for (std::size_t k = 1; k < times.size(); ++k) {
    if (!(times[k] > times[k - 1])) throw DomainError("time grid must be strictly increasing");
  }

  const Recorder recorder(reference, splitting, options);
  TrajectoryRecord out;
  out.rows.reserve(times.size());
  if (options.method == EvolutionMethod::spectral) {
    evolve_spectral(generator, rho0, times, recorder, out);
  } else {
    evolve_adaptive(generator, rho0, times, recorder, options, out);
  }
  return out;
}

}  // namespace phonodec
