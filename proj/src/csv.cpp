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

#include "phonodec/csv.hpp"

#include <array>
#include <charconv>
#include <cmath>

#include "phonodec/error.hpp"

namespace phonodec::csv {

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  const auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc{}) throw Error("format_double: to_chars failed");
  return std::string(buf.data(), end);
}

std::string quote(const std::string& field) {
  if (field.find_first_of(",\"\r\n") == std::string::npos) return field;
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

Writer::Writer(const std::string& path, const std::vector<std::string>& metadata,
               const std::vector<std::string>& columns)
    : out_(path, std::ios::binary), path_(path), n_columns_(columns.size()) {
  if (!out_) throw IoError("cannot open " + path + " for writing");
  for (const auto& line : metadata) {
    // metadata values may not span lines
    std::string clean = line;
    for (char& c : clean) {
      if (c == '\n' || c == '\r') c = ' ';
    }
    out_ << "# " << clean << '\n';
  }
  for (std::size_t k = 0; k < columns.size(); ++k) {
    if (k) out_ << ',';
    out_ << quote(columns[k]);
  }
  out_ << '\n';
}

void Writer::row(const std::vector<Cell>& cells) {
  if (cells.size() != n_columns_) throw Error("csv row has wrong number of cells for " + path_);
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (k) out_ << ',';
    if (const double* d = std::get_if<double>(&cells[k])) {
      out_ << format_double(*d);
    } else {
      out_ << quote(std::get<std::string>(cells[k]));
    }
  }
  out_ << '\n';
}

void Writer::close() {
  out_.flush();
  if (!out_) throw IoError("failed writing " + path_);
  out_.close();
}

}  // namespace phonodec::csv
