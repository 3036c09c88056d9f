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

#include "sdpresolve/reduce.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace sdpresolve {

bool restriction_is_pd(const std::vector<RestrictedBlock>& blocks, int sign, double eps_pivot) {
  for (const auto& rb : blocks) {
    if (rb.diagonal) {
      for (double d : rb.diag) {
        if (!(sign * d > eps_pivot)) return false;
      }
    } else {
      const DenseSym m = sign > 0 ? rb.dense : rb.dense.negated();
      if (!is_pd(m, eps_pivot)) return false;
    }
  }
  return true;
}

ClassifyResult classify_constraint(const SymBlockMatrix& a, double b, const Tolerances& tol) {
  ClassifyResult result;
  result.support = support_of(a, tol.eps_support);
  const auto blocks = restrict_to(a, result.support);
  for (int sign : {+1, -1}) {
    if (!restriction_is_pd(blocks, sign, tol.eps_pivot)) continue;
    result.sign = sign;
    if (sign * b < -tol.eps_rhs) {
      result.kind = Classification::InfeasibleWitness;
      return result;
    }
    if (std::abs(b) <= tol.eps_rhs) {
      result.kind = Classification::Reducible;
      return result;
    }
  }
  result.kind = Classification::NotReducible;
  result.sign = +1;
  return result;
}

DeletionResult apply_deletion(const SdpInstance& inst, int constraint_id, const Support& s) {
  if (constraint_id < 1 || constraint_id > inst.m()) {
    throw std::invalid_argument("apply_deletion: constraint id out of range");
  }
  DeletionResult out;
  out.remap = make_deletion_remap(inst.structure, s);
  out.instance.structure = out.remap.new_structure;
  out.instance.objective = apply_remap(inst.objective, out.remap);
  out.instance.label = inst.label;
  out.instance.constraints.reserve(inst.m() - 1);
  out.instance.rhs.reserve(inst.m() - 1);
  for (int k = 0; k < inst.m(); ++k) {
    if (k == constraint_id - 1) continue;
    out.instance.constraints.push_back(apply_remap(inst.constraints[k], out.remap));
    out.instance.rhs.push_back(inst.rhs[k]);
  }
  return out;
}

const char* verdict_name(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Unchanged: return "unchanged";
    case VerdictKind::Reduced: return "reduced";
    case VerdictKind::Infeasible: return "infeasible";
  }
  return "?";
}

Verdict preprocess(const SdpInstance& inst, const Tolerances& tol,
                   std::optional<int> max_steps) {
  inst.validate();

  SdpInstance current = inst;
  // Bookkeeping from current coordinates back to the original ones.
  std::vector<GlobalIndex> current_to_original(inst.n());
  for (int f = 0; f < inst.n(); ++f) current_to_original[f] = index_at(inst.structure, f);
  std::vector<int> original_ids(inst.m());
  for (int k = 0; k < inst.m(); ++k) original_ids[k] = k + 1;

  std::vector<BasicStepRecord> steps;
  bool infeasible = false;

  auto to_original = [&](const Support& s) {
    std::vector<GlobalIndex> mapped;
    mapped.reserve(s.size());
    for (const auto& idx : s.indices()) mapped.push_back(current_to_original[idx.flat]);
    return Support(std::move(mapped));
  };

  bool progressed = true;
  while (progressed && !infeasible) {
    progressed = false;
    if (max_steps && static_cast<int>(steps.size()) >= *max_steps) break;
    for (int k = 0; k < current.m(); ++k) {
      const ClassifyResult cls = classify_constraint(current.constraints[k], current.rhs[k], tol);
      if (cls.kind == Classification::NotReducible) continue;

      BasicStepRecord rec;
      rec.constraint_id = original_ids[k];
      rec.sign = cls.sign;
      rec.support = cls.support;
      rec.support_original = to_original(cls.support);
      rec.rhs_at_step = current.rhs[k];

      if (cls.kind == Classification::InfeasibleWitness) {
        rec.action = StepAction::DeclareInfeasible;
        steps.push_back(std::move(rec));
        infeasible = true;
        break;
      }

      rec.action = StepAction::DeleteConstraint;
      steps.push_back(std::move(rec));

      DeletionResult del = apply_deletion(current, k + 1, cls.support);
      std::vector<GlobalIndex> next_map(del.instance.n());
      for (int f = 0; f < current.n(); ++f) {
        const int nf = del.remap.old_to_new_flat[f];
        if (nf >= 0) next_map[nf] = current_to_original[f];
      }
      current_to_original = std::move(next_map);
      original_ids.erase(original_ids.begin() + k);
      current = std::move(del.instance);
      progressed = true;
      break;  // restart the scan from the first constraint
    }
  }

  Verdict verdict;
  verdict.certificate.original_n = inst.n();
  verdict.certificate.original_m = inst.m();
  verdict.certificate.original_blocks = inst.structure;
  verdict.certificate.steps = std::move(steps);
  verdict.certificate.kept_indices = current_to_original;
  verdict.certificate.kept_constraints = original_ids;
  verdict.certificate.tolerances = tol;

  if (infeasible) {
    verdict.kind = VerdictKind::Infeasible;
  } else if (verdict.certificate.steps.empty()) {
    verdict.kind = VerdictKind::Unchanged;
  } else {
    verdict.kind = VerdictKind::Reduced;
    verdict.reduced = std::move(current);
  }
  return verdict;
}

}  // namespace sdpresolve
