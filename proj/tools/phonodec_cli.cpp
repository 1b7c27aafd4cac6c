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

// phonodec command-line driver. Links only the C interface.

#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "phonodec/phonodec.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

int exit_code(pdc_status status) {
  switch (status) {
    case PDC_OK: return kExitOk;
    case PDC_ERR_CONFIG:
    case PDC_ERR_ARGUMENT:
    case PDC_ERR_PRECONDITION: return kExitConfig;
    case PDC_ERR_NUMERICAL: return kExitNumerical;
    default: return kExitUsage;
  }
}

struct Options {
  std::string config;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> threads;
  std::optional<double> tol;
};

int run(const std::string& experiment, const Options& opt) {
  pdc_config* cfg = nullptr;
  pdc_status st = opt.config.empty() ? pdc_config_default(experiment.c_str(), &cfg)
                                     : pdc_config_load(opt.config.c_str(), experiment.c_str(), &cfg);
  if (st == PDC_ERR_IO) st = PDC_ERR_CONFIG;   // unreadable config file
  if (st == PDC_OK && opt.out) st = pdc_config_set_output_dir(cfg, opt.out->c_str());
  if (st == PDC_OK && opt.seed) st = pdc_config_set_seed(cfg, *opt.seed);
  if (st == PDC_OK && opt.threads) st = pdc_config_set_threads(cfg, *opt.threads);
  if (st == PDC_OK && opt.tol) st = pdc_config_set_tolerance(cfg, *opt.tol);
  if (st != PDC_OK) {
    std::fprintf(stderr, "phonodec: config error: %s\n", pdc_last_error());
    pdc_config_free(cfg);
    return exit_code(st);
  }
  st = pdc_run(cfg);
  pdc_config_free(cfg);
  if (st != PDC_OK) {
    const char* kind = st == PDC_ERR_NUMERICAL ? "numerical failure" : "error";
    std::fprintf(stderr, "phonodec: %s: %s\n", kind, pdc_last_error());
  }
  return exit_code(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Phonon-induced decoherence of quantum-dot qubit registers"};
  app.set_version_flag("--version", std::string(pdc_version()));
  app.require_subcommand(1);

  Options opt;
  const char* commands[][2] = {
      {"fig1", "single-dot relaxation rate versus energy splitting"},
      {"fig2", "singlet-encoded decoherence rate versus inter-dot spacing"},
      {"fig3", "fidelity trajectories for spacing cases A, B, C"},
      {"gamma-dump", "write the correlation matrices as JSON"},
      {"evolve", "fidelity trajectory for one register"},
  };
  const char* ids[] = {"fig1-rate-vs-E", "fig2-rate-vs-a", "fig3-fidelity", "gamma-dump", "evolve"};
  std::string chosen;
  for (int k = 0; k < 5; ++k) {
    CLI::App* sub = app.add_subcommand(commands[k][0], commands[k][1]);
    sub->add_option("--config", opt.config, "JSON configuration file")->check(CLI::ExistingFile);
    sub->add_option("--out", opt.out, "output directory");
    sub->add_option("--seed", opt.seed, "random seed");
    sub->add_option("--threads", opt.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--tol", opt.tol, "integrator relative tolerance")->check(CLI::PositiveNumber);
    sub->callback([&chosen, id = ids[k]] { chosen = id; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    // bad option values are config errors; --help and --version exit 0
    return code == 0 ? kExitOk : kExitConfig;
  }
  return run(chosen, opt);
}
