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

#include <string>

#include <Eigen/Dense>

#include "json.hpp"
#include "phonodec/bath_correlations.hpp"
#include "phonodec/register_algebra.hpp"

namespace phonodec::io {

using nlohmann::json;

inline constexpr const char* kCorrelationFormat = "phonodec.correlations/1";

/// {"rows": r, "cols": c, "data": [[re, im], ...]} in row-major order.
json matrix_to_json(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd matrix_from_json(const json& j, const std::string& where);

json materials_to_json(const MaterialParams& m);
MaterialParams materials_from_json(const json& j, const std::string& where);

json correlations_to_json(const CorrelationSet& set);
CorrelationSet correlations_from_json(const json& j);

json state_to_json(const RegisterState& state);
RegisterState state_from_json(const json& j, const std::string& where);

void write_json_file(const std::string& path, const json& j);
json read_json_file(const std::string& path);

}  // namespace phonodec::io
