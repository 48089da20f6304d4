// Copyright 2026 the povmsim authors
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

namespace povmsim {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct BudgetExceeded : Error {
  using Error::Error;
};

struct ConvergenceFailure : Error {
  using Error::Error;
};

struct NotPositive : Error {
  using Error::Error;
};

struct DimensionMismatch : Error {
  using Error::Error;
};

struct NotIsometry : Error {
  using Error::Error;
};

struct LabelMismatch : Error {
  using Error::Error;
};

struct AverageMismatch : Error {
  using Error::Error;
};

struct DivisionByZero : Error {
  using Error::Error;
};

struct DegenerateCodeword : Error {
  using Error::Error;
};

struct SchemaError : Error {
  SchemaError(const std::string& path, const std::string& what)
      : Error(path + ": " + what), json_path(path) {}
  std::string json_path;
};

struct ConfigError : Error {
  using Error::Error;
};

}  // namespace povmsim
