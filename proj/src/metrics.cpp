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

#include "sdpresolve/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>

#include "sdpresolve/linalg.hpp"

namespace sdpresolve {

namespace {

double inf_norm(const std::vector<double>& v) {
  double mx = 0.0;
  for (const double x : v) mx = std::max(mx, std::abs(x));
  return mx;
}

double max_abs_entry(const SymBlockMatrix& a) {
  double mx = 0.0;
  for (int b = 1; b <= a.structure().block_count(); ++b) {
    for (const SymBlockMatrix::Entry& e : a.block_entries(b)) {
      mx = std::max(mx, std::abs(e.value));
    }
  }
  return mx;
}

// Diagonal blocks have their exact minimum entry; dense blocks use the
// bisection bound.
double lambda_min_blocks(const DenseBlockSym& x, double tol_eig) {
  double mn = std::numeric_limits<double>::infinity();
  const BlockStructure& s = x.structure();
  for (int b = 1; b <= s.block_count(); ++b) {
    if (s.diagonal_block(b)) {
      for (int i = 1; i <= s.block_dim(b); ++i) mn = std::min(mn, x.at(b, i, i));
    } else {
      mn = std::min(mn, lambda_min_lower(x.block(b), tol_eig));
    }
  }
  return mn;
}

void add_scaled(DenseBlockSym& acc, const SymBlockMatrix& a, double scale) {
  for (int b = 1; b <= a.structure().block_count(); ++b) {
    for (const SymBlockMatrix::Entry& e : a.block_entries(b)) {
      acc.set(b, e.i, e.j, acc.at(b, e.i, e.j) + scale * e.value);
    }
  }
}

double frobenius_norm(const DenseBlockSym& x) {
  double sum = 0.0;
  const BlockStructure& s = x.structure();
  for (int b = 1; b <= s.block_count(); ++b) {
    const DenseSym& blk = x.block(b);
    for (const double v : blk.a) sum += v * v;
  }
  return std::sqrt(sum);
}

double dense_dot(const DenseBlockSym& x, const DenseBlockSym& y) {
  double sum = 0.0;
  const BlockStructure& s = x.structure();
  for (int b = 1; b <= s.block_count(); ++b) {
    const DenseSym& xb = x.block(b);
    const DenseSym& yb = y.block(b);
    for (std::size_t k = 0; k < xb.a.size(); ++k) sum += xb.a[k] * yb.a[k];
  }
  return sum;
}

}  // namespace

DimacsErrors dimacs_errors(const SdpInstance& inst, const SolutionFile& sol, double tol_eig) {
  inst.validate();
  if (sol.y && static_cast<int>(sol.y->size()) != inst.m()) {
    throw std::invalid_argument("solution y length does not match the constraint count");
  }
  const DenseBlockSym x = to_dense(inst.structure, sol.x_entries);
  const double b_inf = inf_norm(inst.rhs);
  const double c_inf = max_abs_entry(inst.objective);

  DimacsErrors out;

  double residual_sq = 0.0;
  for (int i = 0; i < inst.m(); ++i) {
    const double r = dot(inst.constraints[i], x) - inst.rhs[i];
    residual_sq += r * r;
  }
  out.err1 = std::sqrt(residual_sq) / (1.0 + b_inf);
  out.err2 = std::max(0.0, -lambda_min_blocks(x, tol_eig)) / (1.0 + b_inf);

  std::optional<DenseBlockSym> s_dense;
  if (sol.s_entries) s_dense = to_dense(inst.structure, *sol.s_entries);

  if (sol.y && s_dense) {
    DenseBlockSym acc = *s_dense;
    for (int i = 0; i < inst.m(); ++i) add_scaled(acc, inst.constraints[i], (*sol.y)[i]);
    add_scaled(acc, inst.objective, -1.0);
    out.err3 = frobenius_norm(acc) / (1.0 + c_inf);
  }
  if (s_dense) {
    out.err4 = std::max(0.0, -lambda_min_blocks(*s_dense, tol_eig)) / (1.0 + c_inf);
  }

  const double cx = dot(inst.objective, x);
  double by = 0.0;
  if (sol.y) {
    for (int i = 0; i < inst.m(); ++i) by += inst.rhs[i] * (*sol.y)[i];
  }
  const double gap_denom = 1.0 + std::abs(cx) + std::abs(by);
  if (sol.y) out.err5 = (cx - by) / gap_denom;
  if (s_dense) out.err6 = dense_dot(x, *s_dense) / gap_denom;
  return out;
}

double worst_error(const DimacsErrors& e) {
  double mx = -std::numeric_limits<double>::infinity();
  bool any = false;
  for (const std::optional<double>& v : {e.err1, e.err2, e.err3, e.err4, e.err5, e.err6}) {
    if (!v) continue;
    mx = std::max(mx, *v);
    any = true;
  }
  if (!any) throw NotApplicableError("no DIMACS measure is applicable");
  return mx;
}

const char* helped_reason_name(HelpedReason reason) {
  switch (reason) {
    case HelpedReason::None:
      return "none";
    case HelpedReason::InfeasibilityDetected:
      return "infeasibility-detected";
    case HelpedReason::ErrorImproved:
      return "error-improved";
    case HelpedReason::ObjectiveChanged:
      return "objective-changed";
  }
  return "none";
}

HelpedResult helped(double err_before, double err_after, bool infeasibility_detected,
                    std::optional<double> obj_before, std::optional<double> obj_after,
                    bool ratio_as_printed) {
  if (infeasibility_detected) {
    return HelpedResult{true, HelpedReason::InfeasibilityDetected};
  }
  if (err_before > kHelpedErrThreshold) {
    const double ratio = ratio_as_printed ? err_before / err_after : err_after / err_before;
    if (ratio < kHelpedRatio) return HelpedResult{true, HelpedReason::ErrorImproved};
  }
  if (obj_before && obj_after && std::abs(*obj_before - *obj_after) >= kHelpedObjTol) {
    return HelpedResult{true, HelpedReason::ObjectiveChanged};
  }
  return HelpedResult{false, HelpedReason::None};
}

}  // namespace sdpresolve
