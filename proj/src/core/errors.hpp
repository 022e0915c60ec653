// Copyright 2026 The dpgoldstein Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef DPGOLDSTEIN_CORE_ERRORS_HPP_
#define DPGOLDSTEIN_CORE_ERRORS_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dpg {

// Invalid runtime argument (dimension mismatch, out-of-range index, ...).
class InvalidArgumentError : public std::runtime_error {
 public:
  explicit InvalidArgumentError(const std::string& what)
      : std::runtime_error(what) {}
};

// Bad configuration: unknown tags, inconsistent or non-positive parameters,
// config-file parse failures.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Requested operation not supported by the object (e.g. gradient queries on
// a value-only loss).
class UnsupportedError : public std::runtime_error {
 public:
  explicit UnsupportedError(const std::string& what)
      : std::runtime_error(what) {}
};

// Single-pass oracle ran out of unused samples.
class BudgetExhaustedError : public std::runtime_error {
 public:
  BudgetExhaustedError(std::int64_t requested, std::int64_t remaining)
      : std::runtime_error("sample budget exhausted: requested " +
                           std::to_string(requested) + " samples but only " +
                           std::to_string(remaining) + " remain unused"),
        requested_(requested),
        remaining_(remaining) {}

  std::int64_t requested() const { return requested_; }
  std::int64_t remaining() const { return remaining_; }

 private:
  std::int64_t requested_;
  std::int64_t remaining_;
};

}  // namespace dpg

#endif  // DPGOLDSTEIN_CORE_ERRORS_HPP_
