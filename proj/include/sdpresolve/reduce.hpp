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

#ifndef SDPRESOLVE_REDUCE_HPP
#define SDPRESOLVE_REDUCE_HPP

#include <optional>
#include <vector>

#include "sdpresolve/core.hpp"

namespace sdpresolve {

struct Tolerances {
  double eps_support = 0.0;  // entry counts toward the support iff |value| > eps_support
  double eps_rhs = 1e-9;     // |b| <= eps_rhs is "zero", b < -eps_rhs is negative
  double eps_pivot = 0.0;    // Cholesky pivot floor, relative to max(1, max diagonal)

  static Tolerances strict() { return Tolerances{0.0, 0.0, 0.0}; }

  bool operator==(const Tolerances&) const = default;
};

enum class Classification {
  NotReducible,
  Reducible,          // support submatrix is PD (up to sign) and |b| <= eps_rhs
  InfeasibleWitness,  // support submatrix is PD (up to sign) and sign*b < -eps_rhs
};

struct ClassifyResult {
  Classification kind = Classification::NotReducible;
  int sign = +1;  // the sign that made the support submatrix PD
  Support support;
};

/// Tests whether the constraint a . X = b is, after restriction to its
/// support and an optional global sign flip, of the form D . X_S = b with
/// D positive definite. An empty support counts as PD, so a zero matrix
/// yields Reducible when b is zero and InfeasibleWitness otherwise.
/// Sign +1 is tried before -1.
ClassifyResult classify_constraint(const SymBlockMatrix& a, double b, const Tolerances& tol);

/// True iff every dense piece is PD and every diagonal piece is entrywise
/// > eps_pivot, after multiplying by sign.
bool restriction_is_pd(const std::vector<RestrictedBlock>& blocks, int sign, double eps_pivot);

struct DeletionResult {
  SdpInstance instance;
  IndexRemap remap;
};

/// Removes constraint constraint_id (1-based) and deletes the rows and
/// columns of s from the objective and every remaining constraint.
/// Right-hand sides of remaining constraints are unchanged.
DeletionResult apply_deletion(const SdpInstance& inst, int constraint_id, const Support& s);

enum class StepAction { DeleteConstraint, DeclareInfeasible };

/// One executed reduction step, recorded in both the coordinates current
/// at the time of the step and the original coordinates.
struct BasicStepRecord {
  int constraint_id = 0;  // original 1-based constraint index
  int sign = +1;
  Support support;           // coordinates current at the time of the step
  Support support_original;  // the same set in original coordinates
  double rhs_at_step = 0.0;
  StepAction action = StepAction::DeleteConstraint;

  bool operator==(const BasicStepRecord&) const = default;
};

/// Replayable record of a full preprocessing run. Supports of deletion
/// steps are pairwise disjoint in original coordinates and their union is
/// the complement of kept_indices.
struct ReductionCertificate {
  int original_n = 0;
  int original_m = 0;
  BlockStructure original_blocks;
  std::vector<BasicStepRecord> steps;
  std::vector<GlobalIndex> kept_indices;  // original coordinates, sorted by flat
  std::vector<int> kept_constraints;      // surviving original ids, ascending
  Tolerances tolerances;

  bool infeasible() const {
    return !steps.empty() && steps.back().action == StepAction::DeclareInfeasible;
  }
  int deleted_index_count() const { return original_n - static_cast<int>(kept_indices.size()); }

  bool operator==(const ReductionCertificate&) const = default;
};

enum class VerdictKind { Unchanged, Reduced, Infeasible };

struct Verdict {
  VerdictKind kind = VerdictKind::Unchanged;
  std::optional<SdpInstance> reduced;  // present iff kind == Reduced
  ReductionCertificate certificate;
};

const char* verdict_name(VerdictKind kind);

/// Runs the reduction loop: scan constraints in ascending current order;
/// the first InfeasibleWitness stops the run, the first Reducible is
/// deleted and the scan restarts from the first constraint. A full clean
/// scan ends the run with Reduced (or Unchanged when nothing happened).
/// Terminates after at most m deletions.
Verdict preprocess(const SdpInstance& inst, const Tolerances& tol = Tolerances{},
                   std::optional<int> max_steps = std::nullopt);

}  // namespace sdpresolve

#endif  // SDPRESOLVE_REDUCE_HPP
