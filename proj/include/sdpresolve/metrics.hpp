// Copyright 2026 The sdpresolve Authors
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

#ifndef SDPRESOLVE_METRICS_HPP
#define SDPRESOLVE_METRICS_HPP

#include <optional>
#include <stdexcept>
#include <string>

#include "sdpresolve/core.hpp"
#include "sdpresolve/io_sdpa.hpp"

namespace sdpresolve {

/// The six DIMACS error measures. A measure that needs a solution part the
/// file does not carry (y for err3/err5, S for err3/err4/err6) is absent.
///   err1 = |A(X) - b|_2 / (1 + |b|_inf)
///   err2 = max(0, -lambda_min(X)) / (1 + |b|_inf)
///   err3 = |sum_i y_i A_i + S - C|_F / (1 + |C|_inf)
///   err4 = max(0, -lambda_min(S)) / (1 + |C|_inf)
///   err5 = (C.X - b'y) / (1 + |C.X| + |b'y|)
///   err6 = X.S / (1 + |C.X| + |b'y|), with b'y = 0 when y is absent
struct DimacsErrors {
  std::optional<double> err1;
  std::optional<double> err2;
  std::optional<double> err3;
  std::optional<double> err4;
  std::optional<double> err5;
  std::optional<double> err6;

  bool operator==(const DimacsErrors&) const = default;
};

/// Minimum-eigenvalue bisection tolerance used for err2/err4.
inline constexpr double kDefaultEigTol = 1e-10;

/// Evaluates the measures for a candidate solution of inst. Throws
/// std::invalid_argument when the solution does not fit the instance
/// (y length, entry coordinates).
DimacsErrors dimacs_errors(const SdpInstance& inst, const SolutionFile& sol,
                           double tol_eig = kDefaultEigTol);

class NotApplicableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Largest defined measure; throws NotApplicableError when all six are
/// absent.
double worst_error(const DimacsErrors& e);

/// Thresholds of the "helped" classifier.
inline constexpr double kHelpedErrThreshold = 1e-6;
inline constexpr double kHelpedRatio = 0.1;
inline constexpr double kHelpedObjTol = 1e-6;

enum class HelpedReason {
  None = 0,
  InfeasibilityDetected = 1,
  ErrorImproved = 2,
  ObjectiveChanged = 3,
};

struct HelpedResult {
  bool helped = false;
  HelpedReason reason = HelpedReason::None;
};

const char* helped_reason_name(HelpedReason reason);

/// Preprocessing "helped" iff (1) infeasibility was detected, or (2)
/// err_before > 1e-6 and the errors improved at least tenfold, or (3) both
/// objective values are given and differ by at least 1e-6. The first clause
/// that fires is the reason. With ratio_as_printed the second clause
/// instead tests err_before/err_after < 1/10, i.e. a tenfold worsening.
HelpedResult helped(double err_before, double err_after, bool infeasibility_detected,
                    std::optional<double> obj_before = std::nullopt,
                    std::optional<double> obj_after = std::nullopt,
                    bool ratio_as_printed = false);

}  // namespace sdpresolve

#endif  // SDPRESOLVE_METRICS_HPP
