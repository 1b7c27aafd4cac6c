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

#include "phonodec/phonodec.h"

#include <cstring>
#include <exception>
#include <memory>
#include <new>
#include <string>

#include "phonodec/config.hpp"
#include "phonodec/error.hpp"
#include "phonodec/experiments.hpp"
#include "phonodec/matrix_io.hpp"
#include "phonodec/version.hpp"

struct pdc_config {
  phonodec::ExperimentConfig config;
};

struct pdc_correlations {
  phonodec::CorrelationSet set;
};

namespace {

thread_local std::string g_last_error;

pdc_status fail(pdc_status status, const std::string& message) {
  g_last_error = message;
  return status;
}

// Maps the C++ exception hierarchy onto status codes.
template <class F>
pdc_status guarded(F&& body) {
  try {
    g_last_error.clear();
    body();
    return PDC_OK;
  } catch (const phonodec::ConfigError& e) {
    return fail(PDC_ERR_CONFIG, e.what());
  } catch (const phonodec::IoError& e) {
    return fail(PDC_ERR_IO, e.what());
  } catch (const phonodec::NumericalError& e) {
    return fail(PDC_ERR_NUMERICAL, e.what());
  } catch (const phonodec::PreconditionError& e) {
    return fail(PDC_ERR_PRECONDITION, e.what());
  } catch (const phonodec::DomainError& e) {
    return fail(PDC_ERR_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(PDC_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(PDC_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(PDC_ERR_INTERNAL, "unknown error");
  }
}

#define PDC_REQUIRE(cond, what) \
  if (!(cond)) return fail(PDC_ERR_ARGUMENT, what)

phonodec::ExperimentConfig parse_with(nlohmann::json doc, const char* experiment) {
  if (!doc.is_object()) throw phonodec::ConfigError("", "config must be a JSON object");
  if (experiment != nullptr) {
    if (!phonodec::experiment_from_id(experiment)) {
      throw phonodec::ConfigError("experiment", std::string("unknown experiment id \"") + experiment + "\"");
    }
    if (!doc.contains("experiment")) {
      doc["experiment"] = experiment;
    } else if (!doc["experiment"].is_string() || doc["experiment"].get<std::string>() != experiment) {
      throw phonodec::ConfigError("experiment", std::string("config describes a different experiment than ") +
                                                    experiment);
    }
  }
  return phonodec::parse_config_json(doc);
}

}  // namespace

extern "C" {

const char* pdc_version(void) { return phonodec::kVersion; }

const char* pdc_last_error(void) { return g_last_error.c_str(); }

pdc_status pdc_config_load(const char* path, const char* experiment, pdc_config** out) {
  PDC_REQUIRE(path != nullptr && out != nullptr, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto cfg = std::make_unique<pdc_config>();
    cfg->config = parse_with(phonodec::io::read_json_file(path), experiment);
    *out = cfg.release();
  });
}

pdc_status pdc_config_parse(const char* json_text, const char* experiment, pdc_config** out) {
  PDC_REQUIRE(json_text != nullptr && out != nullptr, "null argument");
  *out = nullptr;
  return guarded([&] {
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
      throw phonodec::ConfigError("", std::string("malformed JSON: ") + e.what());
    }
    auto cfg = std::make_unique<pdc_config>();
    cfg->config = parse_with(std::move(doc), experiment);
    *out = cfg.release();
  });
}

pdc_status pdc_config_default(const char* experiment, pdc_config** out) {
  PDC_REQUIRE(experiment != nullptr && out != nullptr, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto cfg = std::make_unique<pdc_config>();
    cfg->config = parse_with(nlohmann::json::object(), experiment);
    *out = cfg.release();
  });
}

void pdc_config_free(pdc_config* cfg) { delete cfg; }

pdc_status pdc_config_set_output_dir(pdc_config* cfg, const char* dir) {
  PDC_REQUIRE(cfg != nullptr && dir != nullptr, "null argument");
  PDC_REQUIRE(*dir != '\0', "output directory must not be empty");
  return guarded([&] { cfg->config.output_dir = dir; });
}

pdc_status pdc_config_set_seed(pdc_config* cfg, uint64_t seed) {
  PDC_REQUIRE(cfg != nullptr, "null argument");
  cfg->config.seed = seed;
  return PDC_OK;
}

pdc_status pdc_config_set_threads(pdc_config* cfg, unsigned threads) {
  PDC_REQUIRE(cfg != nullptr, "null argument");
  return guarded([&] {
    phonodec::ExperimentConfig next = cfg->config;
    next.threads = threads;
    phonodec::validate_config(next);
    cfg->config = next;
  });
}

pdc_status pdc_config_set_tolerance(pdc_config* cfg, double rel_tol) {
  PDC_REQUIRE(cfg != nullptr, "null argument");
  return guarded([&] {
    phonodec::ExperimentConfig next = cfg->config;
    next.integrator.rel_tol = rel_tol;
    phonodec::validate_config(next);
    cfg->config = next;
  });
}

pdc_status pdc_config_to_json(const pdc_config* cfg, char* buf, size_t size, size_t* needed) {
  PDC_REQUIRE(cfg != nullptr, "null argument");
  return guarded([&] {
    const std::string text = phonodec::config_to_json(cfg->config).dump(2);
    if (needed != nullptr) *needed = text.size() + 1;
    if (buf == nullptr) return;
    if (size < text.size() + 1) throw phonodec::DomainError("buffer too small");
    std::memcpy(buf, text.c_str(), text.size() + 1);
  });
}

pdc_status pdc_run(const pdc_config* cfg) {
  PDC_REQUIRE(cfg != nullptr, "null argument");
  return guarded([&] {
    const phonodec::RunReport report = phonodec::run_experiment(cfg->config);
    if (!report.failures.empty()) {
      std::string message;
      for (const auto& f : report.failures) message += (message.empty() ? "" : "; ") + f;
      throw phonodec::NumericalError(message);
    }
  });
}

pdc_status pdc_correlations_compute(const pdc_config* cfg, pdc_correlations** out) {
  PDC_REQUIRE(cfg != nullptr && out != nullptr, "null argument");
  *out = nullptr;
  return guarded([&] {
    const auto& c = cfg->config;
    auto result = std::make_unique<pdc_correlations>();
    result->set = phonodec::compute_correlations(c.array_geometry(), c.materials, c.temperature,
                                                 c.bath_settings(), c.bath.lamb_shift);
    *out = result.release();
  });
}

pdc_status pdc_correlations_load(const char* path, pdc_correlations** out) {
  PDC_REQUIRE(path != nullptr && out != nullptr, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto result = std::make_unique<pdc_correlations>();
    result->set = phonodec::io::correlations_from_json(phonodec::io::read_json_file(path));
    *out = result.release();
  });
}

pdc_status pdc_correlations_save(const pdc_correlations* c, const char* path) {
  PDC_REQUIRE(c != nullptr && path != nullptr, "null argument");
  return guarded([&] { phonodec::io::write_json_file(path, phonodec::io::correlations_to_json(c->set)); });
}

void pdc_correlations_free(pdc_correlations* c) { delete c; }

pdc_status pdc_correlations_size(const pdc_correlations* c, int* n_dots) {
  PDC_REQUIRE(c != nullptr && n_dots != nullptr, "null argument");
  *n_dots = c->set.n_dots();
  return PDC_OK;
}

pdc_status pdc_correlations_get(const pdc_correlations* c, char which, pdc_process process, int i,
                                int j, double* re, double* im) {
  PDC_REQUIRE(c != nullptr && re != nullptr && im != nullptr, "null argument");
  PDC_REQUIRE(which == 'G' || which == 'D', "which must be 'G' or 'D'");
  PDC_REQUIRE(process == PDC_ABSORPTION || process == PDC_EMISSION, "invalid process");
  const int n = c->set.n_dots();
  PDC_REQUIRE(i >= 0 && i < n && j >= 0 && j < n, "index out of range");
  const auto p = process == PDC_ABSORPTION ? phonodec::Process::absorption : phonodec::Process::emission;
  const auto& m = which == 'G' ? c->set.gamma(p) : c->set.delta(p);
  *re = m(i, j).real();
  *im = m(i, j).imag();
  return PDC_OK;
}

pdc_status pdc_single_dot_rate(double splitting, double well_width, double temperature,
                               double* rate_per_ps) {
  PDC_REQUIRE(rate_per_ps != nullptr, "null argument");
  return guarded([&] {
    *rate_per_ps = phonodec::single_dot_rate(splitting, well_width, phonodec::MaterialParams{}, temperature);
  });
}

pdc_status pdc_singlet_tau1_inverse(const pdc_correlations* c, double* rate_per_ps) {
  PDC_REQUIRE(c != nullptr && rate_per_ps != nullptr, "null argument");
  return guarded([&] {
    const auto partition = phonodec::DimerPartition::adjacent(c->set.n_dots());
    *rate_per_ps = phonodec::tau1_inverse(phonodec::singlet_dimer_state(partition), c->set.gamma_plus,
                                          c->set.gamma_minus);
  });
}

pdc_status pdc_correlation_factor(const pdc_correlations* c, pdc_process process, double* fd) {
  PDC_REQUIRE(c != nullptr && fd != nullptr, "null argument");
  PDC_REQUIRE(process == PDC_ABSORPTION || process == PDC_EMISSION, "invalid process");
  return guarded([&] {
    const auto partition = phonodec::DimerPartition::adjacent(c->set.n_dots());
    const auto p = process == PDC_ABSORPTION ? phonodec::Process::absorption : phonodec::Process::emission;
    *fd = phonodec::correlation_factor_fD(c->set.gamma(p), partition);
  });
}

}  // extern "C"
