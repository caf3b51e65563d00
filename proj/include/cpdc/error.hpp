// Copyright 2026 The cpdc Authors
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
#include <string_view>

namespace cpdc {

enum class ErrorKind {
  NonSquare,
  DimensionCap,
  NonFinite,
  DimensionMismatch,
  Singular,
  InvalidDevice,
  UndefinedCoherence,
  NonRealCorrelation,
  TanhDomain,
  ResidualTooLarge,
  AllZero,
  DegenerateGeometry,
  CutoffTooSmall,
  LeakageTooLarge,
  InvalidConfig,
};

constexpr std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::NonSquare: return "non_square";
    case ErrorKind::DimensionCap: return "dimension_cap";
    case ErrorKind::NonFinite: return "non_finite";
    case ErrorKind::DimensionMismatch: return "dimension_mismatch";
    case ErrorKind::Singular: return "singular";
    case ErrorKind::InvalidDevice: return "invalid_device";
    case ErrorKind::UndefinedCoherence: return "undefined_coherence";
    case ErrorKind::NonRealCorrelation: return "non_real_correlation";
    case ErrorKind::TanhDomain: return "tanh_domain";
    case ErrorKind::ResidualTooLarge: return "residual_too_large";
    case ErrorKind::AllZero: return "all_zero";
    case ErrorKind::DegenerateGeometry: return "degenerate_geometry";
    case ErrorKind::CutoffTooSmall: return "cutoff_too_small";
    case ErrorKind::LeakageTooLarge: return "leakage_too_large";
    case ErrorKind::InvalidConfig: return "invalid_config";
  }
  return "unknown";
}

/// Every failure raised by the library carries a machine-readable kind so
/// that callers (sweeps, the CLI) can report it per row instead of aborting.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace cpdc
