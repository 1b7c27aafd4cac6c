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

#include <stdexcept>
#include <string>

namespace phonodec {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Physically or mathematically invalid input (non-positive energy, bad index).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Quadrature non-convergence, integrator failure, monitor breach.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// A documented precondition of an analytic formula does not hold.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  ConfigError(std::string field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace phonodec
