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

#include "phonodec/experiments.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <limits>
#include <thread>

#include <boost/math/tools/minima.hpp>

#include "phonodec/csv.hpp"
#include "phonodec/error.hpp"
#include "phonodec/matrix_io.hpp"
#include "phonodec/units.hpp"
#include "phonodec/version.hpp"

namespace phonodec {
namespace {

// Results land at their index, so output order never depends on scheduling.
template <class T, class F>
std::vector<T> parallel_map(std::size_t n, unsigned threads, F&& f) {
  std::vector<T> out(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < n; k = next++) {
      try {
        out[k] = f(k);
      } catch (...) {
        errors[k] = std::current_exception();
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(n)));
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

std::string output_path(const ExperimentConfig& config, const std::string& name) {
  std::filesystem::path dir(config.output_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());
  return (dir / name).string();
}

}  // namespace

double noiseless_spacing(const ExperimentConfig& config) {
  return 2.0 * units::kPi /
         shell_wavevector(config.geometry.splitting, config.materials.sound_speed);
}

std::vector<std::string> metadata_lines(const ExperimentConfig& config) {
  return {std::string("phonodec version: ") + kVersion,
          std::string("experiment: ") + experiment_id(config.experiment),
          "config: " + config_to_json(config, true).dump(),
          "seed: " + std::to_string(config.seed),
          "units: energy meV, length nm, time ps, temperature K"};
}

std::vector<Fig1Row> fig1_rates(const ExperimentConfig& config) {
  const std::vector<double> energies = config.sweep.values();
  const BathSettings settings = config.bath_settings();
  return parallel_map<Fig1Row>(energies.size(), config.threads, [&](std::size_t k) {
    return Fig1Row{energies[k], single_dot_rate(energies[k], config.geometry.well_width,
                                                config.materials, config.temperature, settings)};
  });
}

Fig2Row fig2_point(const ExperimentConfig& config, double spacing) {
  const ArrayGeometry geometry = config.array_geometry().with_spacing(spacing, config.materials);
  const BathSettings settings = config.bath_settings();
  const Eigen::MatrixXcd gp =
      gamma_matrix(Process::absorption, geometry, config.materials, config.temperature, settings);
  const Eigen::MatrixXcd gm =
      gamma_matrix(Process::emission, geometry, config.materials, config.temperature, settings);
  const DimerPartition partition = config.partition();
  const RegisterState singlet = singlet_dimer_state(partition);

  Fig2Row row{};
  row.spacing = spacing;
  row.tau1_inverse = tau1_inverse(singlet, gp, gm);
  row.uncorrelated_rate = 0.5 * (uncorrelated_rate(gp) + uncorrelated_rate(gm));
  row.fd_minus = correlation_factor_fD(gm, partition);
  row.fd_plus = gp(0, 0) == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                : correlation_factor_fD(gp, partition);
  return row;
}

std::vector<Fig2Row> fig2_rates(const ExperimentConfig& config) {
  const std::vector<double> spacings = config.sweep.values();
  return parallel_map<Fig2Row>(spacings.size(), config.threads,
                               [&](std::size_t k) { return fig2_point(config, spacings[k]); });
}

std::vector<double> locate_rate_minima(const ExperimentConfig& config, double a_lo, double a_hi,
                                       double grid_step) {
  const SweepRange range{a_lo, a_hi, grid_step};
  const std::vector<double> grid = range.values();
  std::vector<double> values(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) values[k] = fig2_point(config, grid[k]).tau1_inverse;

  std::vector<double> minima;
  for (std::size_t k = 1; k + 1 < grid.size(); ++k) {
    if (values[k] < values[k - 1] && values[k] <= values[k + 1]) {
      auto f = [&](double a) { return fig2_point(config, a).tau1_inverse; };
      const auto [a_min, v_min] =
          boost::math::tools::brent_find_minima(f, grid[k - 1], grid[k + 1], 40);
      (void)v_min;
      minima.push_back(a_min);
    }
  }
  return minima;
}

std::vector<Fig3Case> fig3_cases(const ExperimentConfig& config) {
  const double a_bar = noiseless_spacing(config);
  const BathSettings settings = config.bath_settings();
  const RegisterState psi = config.initial_register_state();
  const DensityMatrix rho0 = psi.projector();

  std::vector<std::pair<std::string, double>> cases(config.fig3.spacing_factors.begin(),
                                                    config.fig3.spacing_factors.end());
  std::vector<double> times{0.0};
  for (double t : log_time_grid(config.fig3.t_min, config.fig3.t_max, config.fig3.points_per_decade)) {
    times.push_back(t);
  }

  return parallel_map<Fig3Case>(cases.size(), config.threads, [&](std::size_t k) {
    Fig3Case out;
    out.label = cases[k].first;
    out.spacing = cases[k].second * a_bar;
    out.crossing_time = std::numeric_limits<double>::quiet_NaN();
    try {
      const ArrayGeometry geometry = config.array_geometry().with_spacing(out.spacing, config.materials);
      const CorrelationSet set = compute_correlations(geometry, config.materials, config.temperature,
                                                      settings, config.bath.lamb_shift);
      const Liouvillian generator = Liouvillian::rotating_frame(set, config.bath.lamb_shift);
      out.trajectory = evolve(generator, rho0, psi, times, geometry.splitting(), config.evolve_options());
      if (config.integrator.method == EvolutionMethod::spectral) {
        const SpectralPropagator propagator(generator);
        out.crossing_time = fidelity_crossing_time(propagator, rho0, psi, geometry.splitting(),
                                                   config.fig3.threshold, config.fig3.t_min,
                                                   config.fig3.t_max);
      } else {
        // linear interpolation on the recorded grid
        const auto& rows = out.trajectory.rows;
        for (std::size_t r = 1; r < rows.size(); ++r) {
          if (rows[r].fidelity < config.fig3.threshold) {
            const double f0 = rows[r - 1].fidelity, f1 = rows[r].fidelity;
            out.crossing_time = rows[r - 1].t + (f0 - config.fig3.threshold) / (f0 - f1) *
                                                    (rows[r].t - rows[r - 1].t);
            break;
          }
        }
      }
    } catch (const Error& e) {
      out.error = e.what();
    }
    return out;
  });
}

namespace {

void write_trajectory(const std::string& path, std::vector<std::string> metadata,
                      const TrajectoryRecord& record) {
  csv::Writer w(path, metadata, {"t_ps", "fidelity", "trace_dev", "min_eig", "purity"});
  for (const auto& r : record.rows) w.row({r.t, r.fidelity, r.trace_dev, r.min_eig, r.purity});
  w.close();
}

}  // namespace

RunReport run_fig1(const ExperimentConfig& config) {
  RunReport report;
  const auto rows = fig1_rates(config);
  const std::string path = output_path(config, "fig1_rate_vs_E.csv");
  csv::Writer w(path, metadata_lines(config), {"E_meV", "rate_per_ps"});
  for (const auto& r : rows) w.row({r.splitting, r.rate});
  w.close();
  report.files.push_back(path);
  return report;
}

RunReport run_fig2(const ExperimentConfig& config) {
  RunReport report;
  const auto rows = fig2_rates(config);
  const std::string path = output_path(config, "fig2_rate_vs_a.csv");
  auto metadata = metadata_lines(config);
  metadata.push_back("noiseless_spacing_nm: " + csv::format_double(noiseless_spacing(config)));
  csv::Writer w(path, metadata,
                {"a_nm", "tau1_inv_per_ps", "uncorrelated_rate_per_ps", "fD_minus", "fD_plus"});
  for (const auto& r : rows) {
    w.row({r.spacing, r.tau1_inverse, r.uncorrelated_rate, r.fd_minus, r.fd_plus});
  }
  w.close();
  report.files.push_back(path);
  return report;
}

RunReport run_fig3(const ExperimentConfig& config) {
  RunReport report;
  const auto cases = fig3_cases(config);
  const std::string summary_path = output_path(config, "fig3_summary.csv");
  csv::Writer summary(summary_path, metadata_lines(config),
                      {"case", "a_nm", "t_below_threshold_ps", "status"});
  for (const auto& c : cases) {
    summary.row({c.label, c.spacing, c.crossing_time, c.error.empty() ? std::string("ok") : c.error});
    if (!c.error.empty()) {
      report.failures.push_back("case " + c.label + ": " + c.error);
      continue;
    }
    auto metadata = metadata_lines(config);
    metadata.push_back("case: " + c.label);
    metadata.push_back("a_nm: " + csv::format_double(c.spacing));
    metadata.push_back("t_below_threshold_ps: " + csv::format_double(c.crossing_time));
    const std::string path = output_path(config, "fig3_fidelity_" + c.label + ".csv");
    write_trajectory(path, metadata, c.trajectory);
    report.files.push_back(path);
  }
  summary.close();
  report.files.push_back(summary_path);
  return report;
}

RunReport run_gamma_dump(const ExperimentConfig& config) {
  RunReport report;
  const ArrayGeometry geometry = config.array_geometry();
  const CorrelationSet set = compute_correlations(geometry, config.materials, config.temperature,
                                                  config.bath_settings(), config.bath.lamb_shift);
  io::json doc = io::correlations_to_json(set);
  if (config.oracle_samples > 0) {
    io::json oracle = io::json::object();
    for (Process p : {Process::absorption, Process::emission}) {
      const OracleResult r = gamma_bruteforce_oracle(p, geometry, config.materials, config.temperature,
                                                     config.oracle_samples, config.seed, config.threads);
      const Eigen::MatrixXcd se = r.standard_error.cast<Complex>();
      const char* key = p == Process::absorption ? "gamma_plus" : "gamma_minus";
      oracle[key] = io::matrix_to_json(r.value);
      oracle[std::string(key) + "_stderr"] = io::matrix_to_json(se);
    }
    oracle["samples"] = config.oracle_samples;
    oracle["seed"] = config.seed;
    doc["oracle"] = oracle;
  }
  doc["config"] = config_to_json(config, true);
  doc["version"] = kVersion;
  const std::string path = output_path(config, "correlations.json");
  io::write_json_file(path, doc);
  report.files.push_back(path);
  return report;
}

RunReport run_evolve(const ExperimentConfig& config) {
  RunReport report;
  CorrelationSet set;
  if (!config.evolve.correlations.empty()) {
    set = io::correlations_from_json(io::read_json_file(config.evolve.correlations));
    if (set.n_dots() != config.geometry.n_dots) {
      throw ConfigError("evolve.correlations", "matrix size does not match geometry.N");
    }
  } else {
    set = compute_correlations(config.array_geometry(), config.materials, config.temperature,
                               config.bath_settings(), config.bath.lamb_shift);
  }
  const RegisterState psi = config.initial_register_state();
  std::vector<double> times{0.0};
  for (double t : log_time_grid(config.evolve.t_min, config.evolve.t_max, config.evolve.points_per_decade)) {
    times.push_back(t);
  }
  const Liouvillian generator = Liouvillian::rotating_frame(set, config.bath.lamb_shift);
  const TrajectoryRecord record = evolve(generator, psi.projector(), psi, times,
                                         set.geometry.splitting(), config.evolve_options());
  const std::string path = output_path(config, "trajectory.csv");
  write_trajectory(path, metadata_lines(config), record);
  report.files.push_back(path);
  return report;
}

RunReport run_experiment(const ExperimentConfig& config) {
  switch (config.experiment) {
    case Experiment::fig1: return run_fig1(config);
    case Experiment::fig2: return run_fig2(config);
    case Experiment::fig3: return run_fig3(config);
    case Experiment::gamma_dump: return run_gamma_dump(config);
    case Experiment::evolve: return run_evolve(config);
  }
  throw Error("unknown experiment");
}

}  // namespace phonodec
