// Copyright 2026 The Authors.
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

#ifndef AGNOSTIC_FAIR_ERRORS_H_
#define AGNOSTIC_FAIR_ERRORS_H_

#include <stdexcept>
#include <string>

namespace agnostic_fair {

// Root of every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad configuration: out-of-range hyperparameters, empty shards, bad specs.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// CSV header does not match the declared schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

// A data row could not be parsed. Carries the 1-based file line number.
class DataError : public Error {
 public:
  DataError(const std::string& message, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + message), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

// Non-finite objective, gradient or protocol payload.
class NumericalError : public Error {
 public:
  using Error::Error;
};

// A fairness metric is undefined, e.g. one sensitive group is empty.
class UndefinedMetricError : public Error {
 public:
  using Error::Error;
};

// Client/server protocol violated: missing bundle, round mismatch.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

}  // namespace agnostic_fair

#endif  // AGNOSTIC_FAIR_ERRORS_H_
