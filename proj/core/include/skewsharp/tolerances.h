// Copyright 2026 The SkewSharp Authors
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

#ifndef SKEWSHARP_TOLERANCES_H_
#define SKEWSHARP_TOLERANCES_H_

#include <algorithm>
#include <cmath>

namespace skewsharp {

// All tolerances are relative to max(1, magnitude of the quantity involved).
inline constexpr double kTolHerm = 1e-10;
inline constexpr double kTolEig = 1e-10;
inline constexpr double kTolPsd = 1e-9;
inline constexpr double kTolTrace = 1e-9;
inline constexpr double kTolIneq = 1e-8;
inline constexpr double kSatTol = 1e-7;

/// Signed slack of an inequality `lhs >= rhs`, together with the magnitude
/// the tolerance is measured against.
struct Margin {
  double value = 0.0;
  double scale = 1.0;
  bool vacuous = false;  // relation holds trivially (division by a zero diagonal)

  double normalized() const { return vacuous ? INFINITY : value / scale; }
  bool violated(double tol = kTolIneq) const { return !vacuous && value < -tol * scale; }
  bool saturated(double sat_tol = kSatTol) const {
    return !vacuous && std::abs(value) <= sat_tol * scale;
  }

  static Margin of(double value, double magnitude) {
    return Margin{value, std::max(1.0, std::abs(magnitude)), false};
  }
  static Margin vacuous_true() { return Margin{INFINITY, 1.0, true}; }
};

}  // namespace skewsharp

#endif  // SKEWSHARP_TOLERANCES_H_
