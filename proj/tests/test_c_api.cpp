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

// Exercises the shared library through its C header only.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <string>
#include <thread>
#include <vector>

#include <unistd.h>

#include "doctest.h"
#include "phonodec/phonodec.h"

TEST_SUITE("c-api") {

TEST_CASE("version and errors") {
  CHECK(std::strlen(pdc_version()) > 0);
  pdc_config* cfg = nullptr;
  CHECK(pdc_config_default("no-such-experiment", &cfg) == PDC_ERR_CONFIG);
  CHECK(cfg == nullptr);
  CHECK(std::string(pdc_last_error()).find("experiment") != std::string::npos);
  CHECK(pdc_config_default(nullptr, &cfg) == PDC_ERR_ARGUMENT);
  CHECK(pdc_config_parse("{ nope", nullptr, &cfg) == PDC_ERR_CONFIG);
  CHECK(pdc_config_parse("{\"experiment\":\"fig2-rate-vs-a\",\"geometry\":{\"a\":-1}}", nullptr, &cfg) ==
        PDC_ERR_CONFIG);
  CHECK(std::string(pdc_last_error()).find("geometry.a") != std::string::npos);
  CHECK(pdc_config_parse("{\"experiment\":\"fig1-rate-vs-E\"}", "fig2-rate-vs-a", &cfg) == PDC_ERR_CONFIG);
  CHECK(pdc_config_load("/nonexistent/config.json", "fig1-rate-vs-E", &cfg) == PDC_ERR_IO);
  pdc_config_free(nullptr);
  pdc_correlations_free(nullptr);
}

TEST_CASE("error messages are per thread") {
  pdc_config* cfg = nullptr;
  CHECK(pdc_config_default("bogus", &cfg) == PDC_ERR_CONFIG);
  std::string other = "unset";
  std::thread([&] { other = pdc_last_error(); }).join();
  CHECK(other.empty());
  CHECK(std::strlen(pdc_last_error()) > 0);
}

TEST_CASE("config setters and JSON echo") {
  pdc_config* cfg = nullptr;
  REQUIRE(pdc_config_parse("{\"geometry\":{\"N\":2}}", "gamma-dump", &cfg) == PDC_OK);
  CHECK(pdc_config_set_seed(cfg, 77) == PDC_OK);
  CHECK(pdc_config_set_threads(cfg, 0) == PDC_ERR_CONFIG);
  CHECK(pdc_config_set_tolerance(cfg, -1.0) == PDC_ERR_CONFIG);
  CHECK(pdc_config_set_tolerance(cfg, 1e-8) == PDC_OK);
  size_t needed = 0;
  REQUIRE(pdc_config_to_json(cfg, nullptr, 0, &needed) == PDC_OK);
  std::vector<char> buf(needed);
  CHECK(pdc_config_to_json(cfg, buf.data(), 3, nullptr) == PDC_ERR_ARGUMENT);
  REQUIRE(pdc_config_to_json(cfg, buf.data(), buf.size(), nullptr) == PDC_OK);
  const std::string text(buf.data());
  CHECK(text.find("\"seed\": 77") != std::string::npos);
  CHECK(text.find("gamma-dump") != std::string::npos);
  pdc_config_free(cfg);
}

TEST_CASE("correlations and scalar observables") {
  pdc_config* cfg = nullptr;
  REQUIRE(pdc_config_default("fig2-rate-vs-a", &cfg) == PDC_OK);
  pdc_correlations* c = nullptr;
  REQUIRE(pdc_correlations_compute(cfg, &c) == PDC_OK);
  int n = 0;
  CHECK(pdc_correlations_size(c, &n) == PDC_OK);
  CHECK(n == 4);
  double re = 0, im = 0, re2 = 0, im2 = 0;
  CHECK(pdc_correlations_get(c, 'G', PDC_EMISSION, 0, 1, &re, &im) == PDC_OK);
  CHECK(pdc_correlations_get(c, 'G', PDC_EMISSION, 1, 0, &re2, &im2) == PDC_OK);
  CHECK(re == re2);
  CHECK(im == -im2);
  CHECK(pdc_correlations_get(c, 'G', PDC_EMISSION, 0, 4, &re, &im) == PDC_ERR_ARGUMENT);
  CHECK(pdc_correlations_get(c, 'X', PDC_EMISSION, 0, 0, &re, &im) == PDC_ERR_ARGUMENT);

  double fd = 0;
  CHECK(pdc_correlation_factor(c, PDC_EMISSION, &fd) == PDC_OK);
  CHECK(fd < 0.05);
  double tau = 0, g11 = 0, gp11 = 0;
  CHECK(pdc_singlet_tau1_inverse(c, &tau) == PDC_OK);
  pdc_correlations_get(c, 'G', PDC_EMISSION, 0, 0, &g11, &im);
  pdc_correlations_get(c, 'G', PDC_ABSORPTION, 0, 0, &gp11, &im);
  CHECK(tau > 0.0);
  CHECK(tau < 0.05 * 4.0 * (g11 + gp11) / (2.0 * 0.6582119));

  const std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") + "/pdc_corr.json";
  CHECK(pdc_correlations_save(c, path.c_str()) == PDC_OK);
  pdc_correlations* back = nullptr;
  REQUIRE(pdc_correlations_load(path.c_str(), &back) == PDC_OK);
  CHECK(pdc_correlations_get(back, 'D', PDC_EMISSION, 0, 3, &re, &im) == PDC_OK);
  pdc_correlations_get(c, 'D', PDC_EMISSION, 0, 3, &re2, &im2);
  CHECK(re == re2);
  pdc_correlations_free(back);
  pdc_correlations_free(c);
  pdc_config_free(cfg);

  double rate = 0;
  CHECK(pdc_single_dot_rate(5.0, 4.0, 10.0, &rate) == PDC_OK);
  CHECK(rate == doctest::Approx(0.0201).epsilon(0.01));
  CHECK(pdc_single_dot_rate(40.0, 4.0, 10.0, &rate) == PDC_ERR_ARGUMENT);
}

TEST_CASE("run writes outputs") {
  pdc_config* cfg = nullptr;
  REQUIRE(pdc_config_parse("{\"sweep\":{\"start\":2,\"stop\":3,\"step\":0.5}}", "fig1-rate-vs-E", &cfg) == PDC_OK);
  const std::string dir = std::string("/tmp/pdc_run_") + std::to_string(::getpid());
  CHECK(pdc_config_set_output_dir(cfg, dir.c_str()) == PDC_OK);
  CHECK(pdc_run(cfg) == PDC_OK);
  std::FILE* f = std::fopen((dir + "/fig1_rate_vs_E.csv").c_str(), "r");
  CHECK(f != nullptr);
  if (f) std::fclose(f);
  pdc_config_free(cfg);
}

}
