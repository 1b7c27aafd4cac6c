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

#include <fstream>
#include <string>
#include <variant>
#include <vector>

namespace phonodec::csv {

/// Shortest round-trip decimal representation ('.' separator, locale free).
std::string format_double(double value);

/// RFC 4180 quoting: fields containing ',', '"', CR or LF are quoted.
std::string quote(const std::string& field);

using Cell = std::variant<double, std::string>;

/// Writes '#'-prefixed metadata lines, one header row, then data rows.
class Writer {
 public:
  Writer(const std::string& path, const std::vector<std::string>& metadata,
         const std::vector<std::string>& columns);

  void row(const std::vector<Cell>& cells);
  void close();

 private:
  std::ofstream out_;
  std::string path_;
  std::size_t n_columns_;
};

}  // namespace phonodec::csv
