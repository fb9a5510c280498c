/*
  Copyright 2026 The sensorco Authors

  Licensed under the Apache License, Version 2.0 (the "License");
  you may not use this file except in compliance with the License.
  You may obtain a copy of the License at

  http://www.apache.org/licenses/LICENSE-2.0

  Unless required by applicable law or agreed to in writing, software
  distributed under the License is distributed on an "AS IS" BASIS,
  WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
  See the License for the specific language governing permissions and
  limitations under the License.
*/

#ifndef SENSORCO_ERROR_HPP
#define SENSORCO_ERROR_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace sensorco {

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Bad input. Carries every problem found, each prefixed by the field path
/// it refers to (e.g. "costs.maintenance_hourly_rate: must be >= 0").
class ValidationError : public Error {
public:
  explicit ValidationError(std::vector<std::string> issues)
      : Error(join(issues)), issues_(std::move(issues)) {}
  explicit ValidationError(const std::string& issue)
      : ValidationError(std::vector<std::string>{issue}) {}

  const std::vector<std::string>& issues() const noexcept { return issues_; }

private:
  static std::string join(const std::vector<std::string>& issues) {
    std::string out;
    for (const auto& i : issues) {
      if (!out.empty()) out += "; ";
      out += i;
    }
    return out.empty() ? std::string("validation failed") : out;
  }

  std::vector<std::string> issues_;
};

/// Operation not allowed in the current lifecycle state.
class StateError : public Error {
public:
  using Error::Error;
};

/// Result is not a real number (e.g. fractional power of a negative base).
class DomainError : public Error {
public:
  using Error::Error;
};

class InfeasibleError : public Error {
public:
  using Error::Error;
};

class IoError : public Error {
public:
  using Error::Error;
};

} // namespace sensorco

#endif
