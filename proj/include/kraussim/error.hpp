// Copyright 2026 The kraussim Authors
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

#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kraussim {

enum class Errc {
  NotHermitian,
  NotPSD,
  OutsideBall,
  WrongDim,
  DimMismatch,
  OutOfRange,
  IncompleteKraus,
  NotTracePreserving,
  Unsatisfiable,
  NotCompilable,
  FullyBlocked,
  DegenerateSystem,
  NotNormalized,
  InvalidFormat,
};

inline std::string_view errc_name(Errc c) {
  switch (c) {
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::NotPSD: return "NotPSD";
    case Errc::OutsideBall: return "OutsideBall";
    case Errc::WrongDim: return "WrongDim";
    case Errc::DimMismatch: return "DimMismatch";
    case Errc::OutOfRange: return "OutOfRange";
    case Errc::IncompleteKraus: return "IncompleteKraus";
    case Errc::NotTracePreserving: return "NotTracePreserving";
    case Errc::Unsatisfiable: return "Unsatisfiable";
    case Errc::NotCompilable: return "NotCompilable";
    case Errc::FullyBlocked: return "FullyBlocked";
    case Errc::DegenerateSystem: return "DegenerateSystem";
    case Errc::NotNormalized: return "NotNormalized";
    case Errc::InvalidFormat: return "InvalidFormat";
  }
  return "Unknown";
}

/// Every library failure is reported through this exception. `code()` tells
/// the kind; `value()` carries the offending quantity (defect, eigenvalue,
/// parameter) when one exists, NaN otherwise.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, double value = std::numeric_limits<double>::quiet_NaN())
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code), value_(value) {}

  Errc code() const noexcept { return code_; }
  double value() const noexcept { return value_; }

 private:
  Errc code_;
  double value_;
};

namespace detail {

inline void require_range(double x, double lo, double hi, const char* name) {
  if (!(x >= lo && x <= hi)) {
    std::ostringstream os;
    os << name << " = " << x << " outside [" << lo << ", " << hi << "]";
    throw Error(Errc::OutOfRange, os.str(), x);
  }
}

}  // namespace detail
}  // namespace kraussim
