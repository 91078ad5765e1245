// Copyright 2026 The quasikp Authors
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

#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qkp {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of a function.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Energy too close to (just below) a transverse channel threshold.
class ThresholdError : public Error {
 public:
  ThresholdError(const std::string& what, int threshold_index)
      : Error(what), threshold_index_(threshold_index) {}
  int threshold_index() const noexcept { return threshold_index_; }

 private:
  int threshold_index_;
};

/// cos(theta) coincides with cos(k_n L) for an open channel n.
class PoleError : public Error {
 public:
  PoleError(const std::string& what, int channel) : Error(what), channel_(channel) {}
  int channel() const noexcept { return channel_; }

 private:
  int channel_;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Radial grid too coarse for the requested phase-shift accuracy.
class GridError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Query inside an interval excluded around a pole of a(E).
class ResonanceError : public Error {
 public:
  using Error::Error;
};

/// A brute-force oracle failed its own convergence check.
class OracleError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<std::string> problems);
  const std::vector<std::string>& problems() const noexcept { return problems_; }

 private:
  std::vector<std::string> problems_;
};

using WarningHandler = std::function<void(std::string_view)>;

/// Installs a sink for non-fatal diagnostics; returns the previous one.
/// The default handler writes to std::clog.
WarningHandler set_warning_handler(WarningHandler handler);

void warn(std::string_view message);

}  // namespace qkp
