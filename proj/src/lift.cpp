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

#include "sdpresolve/lift.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <stdexcept>
#include <utility>

#include "json.hpp"

namespace sdpresolve {

namespace {

using json = nlohmann::ordered_json;

// Reduced flat position r corresponds to cert.kept_indices[r]; kept indices
// are sorted by original flat and blocks never merge, so the grouping by
// original block is contiguous and in block order.
std::vector<int> kept_per_block(const ReductionCertificate& cert) {
  std::vector<int> count(cert.original_blocks.block_count() + 1, 0);
  for (const GlobalIndex& gi : cert.kept_indices) {
    if (gi.block < 1 || gi.block > cert.original_blocks.block_count()) {
      throw std::invalid_argument("certificate kept index names a block outside the structure");
    }
    ++count[gi.block];
  }
  return count;
}

}  // namespace

BlockStructure reduced_structure(const ReductionCertificate& cert) {
  const std::vector<int> count = kept_per_block(cert);
  std::vector<int> sizes;
  for (int b = 1; b <= cert.original_blocks.block_count(); ++b) {
    if (count[b] == 0) continue;
    sizes.push_back(cert.original_blocks.diagonal_block(b) ? -count[b] : count[b]);
  }
  return BlockStructure(std::move(sizes));
}

DenseBlockSym lift_solution(const DenseBlockSym& x_reduced, const ReductionCertificate& cert) {
  if (cert.infeasible()) {
    throw std::invalid_argument("cannot lift a solution through an infeasibility certificate");
  }
  const BlockStructure red = reduced_structure(cert);
  if (!(x_reduced.structure() == red)) {
    throw std::invalid_argument("solution block structure does not match the certificate");
  }
  DenseBlockSym out(cert.original_blocks);
  for (int rb = 1; rb <= red.block_count(); ++rb) {
    const int d = red.block_dim(rb);
    for (int i = 1; i <= d; ++i) {
      const GlobalIndex oi = cert.kept_indices[red.flat_of(rb, i)];
      if (red.diagonal_block(rb)) {
        out.set(oi.block, oi.local, oi.local, x_reduced.at(rb, i, i));
        continue;
      }
      for (int j = i; j <= d; ++j) {
        const GlobalIndex oj = cert.kept_indices[red.flat_of(rb, j)];
        out.set(oi.block, oi.local, oj.local, x_reduced.at(rb, i, j));
      }
    }
  }
  return out;
}

DenseBlockSym restrict_solution(const DenseBlockSym& x_original, const ReductionCertificate& cert) {
  if (!(x_original.structure() == cert.original_blocks)) {
    throw std::invalid_argument("solution block structure does not match the certificate");
  }
  const BlockStructure red = reduced_structure(cert);
  DenseBlockSym out(red);
  for (int rb = 1; rb <= red.block_count(); ++rb) {
    const int d = red.block_dim(rb);
    for (int i = 1; i <= d; ++i) {
      const GlobalIndex oi = cert.kept_indices[red.flat_of(rb, i)];
      if (red.diagonal_block(rb)) {
        out.set(rb, i, i, x_original.at(oi.block, oi.local, oi.local));
        continue;
      }
      for (int j = i; j <= d; ++j) {
        const GlobalIndex oj = cert.kept_indices[red.flat_of(rb, j)];
        out.set(rb, i, j, x_original.at(oi.block, oi.local, oj.local));
      }
    }
  }
  return out;
}

SolutionFile lift_solution_file(const SolutionFile& sol, const ReductionCertificate& cert) {
  if (cert.infeasible()) {
    throw std::invalid_argument("cannot lift a solution through an infeasibility certificate");
  }
  const BlockStructure red = reduced_structure(cert);
  // The per-block local map is monotone, so i <= j is preserved.
  auto lift_entries = [&](const std::vector<SolutionEntry>& in) {
    std::vector<SolutionEntry> out;
    out.reserve(in.size());
    for (const SolutionEntry& e : in) {
      const GlobalIndex oi = cert.kept_indices[red.flat_of(e.block, e.i)];
      const GlobalIndex oj = cert.kept_indices[red.flat_of(e.block, e.j)];
      out.push_back(SolutionEntry{oi.block, oi.local, oj.local, e.value});
    }
    return out;
  };
  SolutionFile out;
  out.y = sol.y;
  out.x_entries = lift_entries(sol.x_entries);
  if (sol.s_entries) out.s_entries = lift_entries(*sol.s_entries);
  return out;
}

namespace {

bool index_consistent(const BlockStructure& structure, const GlobalIndex& gi) {
  if (gi.block < 1 || gi.block > structure.block_count()) return false;
  if (gi.local < 1 || gi.local > structure.block_dim(gi.block)) return false;
  return structure.flat_of(gi.block, gi.local) == gi.flat;
}

}  // namespace

VerifyResult verify_certificate(const SdpInstance& original, const ReductionCertificate& cert,
                                const Tolerances& tol) {
  VerifyResult res;
  auto fail = [&res](std::string msg) {
    res.ok = false;
    res.diagnostics.push_back(std::move(msg));
  };

  if (cert.original_n != original.n() || cert.original_m != original.m() ||
      !(cert.original_blocks == original.structure)) {
    fail("certificate describes a different instance (n, m, or block sizes differ)");
    return res;
  }
  const int n = original.n();
  const int m = original.m();

  // Bookkeeping in original coordinates, independent of the replay.
  std::vector<char> deleted_index(n, 0);
  std::vector<char> deleted_constraint(m + 1, 0);
  for (std::size_t s = 0; s < cert.steps.size(); ++s) {
    const BasicStepRecord& step = cert.steps[s];
    const std::string where = "step " + std::to_string(s + 1);
    if (step.constraint_id < 1 || step.constraint_id > m) {
      fail(where + ": constraint id out of range");
      continue;
    }
    if (step.action == StepAction::DeclareInfeasible) {
      if (s + 1 != cert.steps.size()) fail(where + ": infeasibility declared before the last step");
      continue;
    }
    if (deleted_constraint[step.constraint_id]) {
      fail(where + ": constraint deleted twice");
    }
    deleted_constraint[step.constraint_id] = 1;
    for (const GlobalIndex& gi : step.support_original.indices()) {
      if (!index_consistent(cert.original_blocks, gi)) {
        fail(where + ": support_original index inconsistent with the block structure");
        continue;
      }
      if (deleted_index[gi.flat]) fail(where + ": deletion supports overlap");
      deleted_index[gi.flat] = 1;
    }
  }

  int last_flat = -1;
  for (const GlobalIndex& gi : cert.kept_indices) {
    if (!index_consistent(cert.original_blocks, gi)) {
      fail("kept index inconsistent with the block structure");
      continue;
    }
    if (gi.flat <= last_flat) fail("kept indices out of order or duplicated");
    last_flat = gi.flat;
    if (deleted_index[gi.flat]) fail("kept index also appears in a deletion support");
  }
  const int deleted_count =
      static_cast<int>(std::count(deleted_index.begin(), deleted_index.end(), char(1)));
  if (deleted_count + static_cast<int>(cert.kept_indices.size()) != n) {
    fail("kept indices and deletion supports do not partition the index set");
  }

  int last_id = 0;
  for (const int id : cert.kept_constraints) {
    if (id < 1 || id > m) {
      fail("kept constraint id out of range");
      continue;
    }
    if (id <= last_id) fail("kept constraint ids out of order or duplicated");
    last_id = id;
    if (deleted_constraint[id]) fail("kept constraint was also deleted by a step");
  }
  const int deleted_constraints =
      static_cast<int>(std::count(deleted_constraint.begin(), deleted_constraint.end(), char(1)));
  if (deleted_constraints + static_cast<int>(cert.kept_constraints.size()) != m) {
    fail("kept constraints and deletion steps do not partition the constraint set");
  }

  // Replay against the instance; stops at the first failing step.
  SdpInstance cur = original;
  std::vector<GlobalIndex> cur_to_orig(n);
  for (int f = 0; f < n; ++f) cur_to_orig[f] = index_at(original.structure, f);
  std::vector<int> ids(m);
  std::iota(ids.begin(), ids.end(), 1);
  bool replay_ok = true;
  for (std::size_t s = 0; s < cert.steps.size() && replay_ok; ++s) {
    const BasicStepRecord& step = cert.steps[s];
    const std::string where = "step " + std::to_string(s + 1);
    if (step.sign != 1 && step.sign != -1) {
      fail(where + ": sign must be +1 or -1");
      replay_ok = false;
      break;
    }
    const auto it = std::find(ids.begin(), ids.end(), step.constraint_id);
    if (it == ids.end()) {
      fail(where + ": constraint is not live at this point of the replay");
      replay_ok = false;
      break;
    }
    const int k = static_cast<int>(it - ids.begin());
    const Support sup = support_of(cur.constraints[k], tol.eps_support);
    if (!(sup == step.support)) {
      fail(where + ": recorded support does not match the recomputed support");
      replay_ok = false;
      break;
    }
    std::vector<GlobalIndex> mapped;
    mapped.reserve(sup.indices().size());
    for (const GlobalIndex& gi : sup.indices()) mapped.push_back(cur_to_orig[gi.flat]);
    if (!(Support(std::move(mapped)) == step.support_original)) {
      fail(where + ": recorded original-coordinate support does not match");
      replay_ok = false;
      break;
    }
    const double b = cur.rhs[k];
    if (b != step.rhs_at_step) {
      fail(where + ": recorded right-hand side does not match the instance");
      replay_ok = false;
      break;
    }
    const std::vector<RestrictedBlock> blocks = restrict_to(cur.constraints[k], sup);
    if (!restriction_is_pd(blocks, step.sign, tol.eps_pivot)) {
      fail(where + ": support submatrix is not positive definite with the recorded sign");
      replay_ok = false;
      break;
    }
    if (step.action == StepAction::DeleteConstraint) {
      if (!(std::abs(b) <= tol.eps_rhs)) {
        fail(where + ": right-hand side is not zero within tolerance");
        replay_ok = false;
        break;
      }
      DeletionResult del = apply_deletion(cur, k + 1, sup);
      std::vector<GlobalIndex> next(del.instance.n());
      for (int f = 0; f < cur.n(); ++f) {
        const int nf = del.remap.old_to_new_flat[f];
        if (nf >= 0) next[nf] = cur_to_orig[f];
      }
      cur_to_orig = std::move(next);
      ids.erase(ids.begin() + k);
      cur = std::move(del.instance);
    } else {
      if (!(step.sign * b < -tol.eps_rhs)) {
        fail(where + ": right-hand side does not witness infeasibility");
        replay_ok = false;
      }
      break;
    }
  }
  if (replay_ok) {
    if (!(cur_to_orig == cert.kept_indices)) {
      fail("kept indices do not match the replayed final state");
    }
    if (!(ids == cert.kept_constraints)) {
      fail("kept constraints do not match the replayed final state");
    }
  }
  return res;
}

namespace {

const char* verdict_string(const ReductionCertificate& cert) {
  if (cert.infeasible()) return "infeasible";
  return cert.steps.empty() ? "unchanged" : "reduced";
}

json support_to_json(const Support& s, bool with_flat) {
  json arr = json::array();
  for (const GlobalIndex& gi : s.indices()) {
    if (with_flat) {
      arr.push_back(json::array({gi.block, gi.local, gi.flat}));
    } else {
      arr.push_back(json::array({gi.block, gi.local}));
    }
  }
  return arr;
}

GlobalIndex index_from_pair(const BlockStructure& structure, int block, int local) {
  if (block < 1 || block > structure.block_count() || local < 1 ||
      local > structure.block_dim(block)) {
    throw std::invalid_argument("certificate index lies outside the block structure");
  }
  return GlobalIndex{block, local, structure.flat_of(block, local)};
}

Support support_from_json(const json& arr, bool with_flat, const BlockStructure& structure) {
  if (!arr.is_array()) throw std::invalid_argument("certificate support must be an array");
  std::vector<GlobalIndex> v;
  v.reserve(arr.size());
  for (const json& e : arr) {
    if (!e.is_array() || e.size() != (with_flat ? 3u : 2u)) {
      throw std::invalid_argument("certificate support index is malformed");
    }
    if (with_flat) {
      v.push_back(GlobalIndex{e[0].get<int>(), e[1].get<int>(), e[2].get<int>()});
    } else {
      v.push_back(index_from_pair(structure, e[0].get<int>(), e[1].get<int>()));
    }
  }
  return Support(std::move(v));
}

}  // namespace

std::string certificate_to_json(const ReductionCertificate& cert) {
  json j;
  j["format"] = "sdpresolve-certificate";
  j["schema_version"] = 1;
  j["original"] = {{"n", cert.original_n},
                   {"m", cert.original_m},
                   {"block_sizes", cert.original_blocks.sizes()}};
  j["tolerances"] = {{"eps_support", cert.tolerances.eps_support},
                     {"eps_rhs", cert.tolerances.eps_rhs},
                     {"eps_pivot", cert.tolerances.eps_pivot}};
  j["verdict"] = verdict_string(cert);
  json steps = json::array();
  for (const BasicStepRecord& st : cert.steps) {
    json s;
    s["constraint_id"] = st.constraint_id;
    s["sign"] = st.sign;
    s["action"] = st.action == StepAction::DeleteConstraint ? "delete" : "infeasible";
    s["rhs_at_step"] = st.rhs_at_step;
    s["support"] = support_to_json(st.support, /*with_flat=*/true);
    s["support_original"] = support_to_json(st.support_original, /*with_flat=*/false);
    steps.push_back(std::move(s));
  }
  j["steps"] = std::move(steps);
  json kept = json::array();
  for (const GlobalIndex& gi : cert.kept_indices) {
    kept.push_back(json::array({gi.block, gi.local}));
  }
  j["kept_indices"] = std::move(kept);
  j["kept_constraints"] = cert.kept_constraints;
  return j.dump(2) + "\n";
}

ReductionCertificate certificate_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("certificate is not valid JSON: ") + e.what());
  }
  try {
    if (!j.is_object() || j.value("format", std::string()) != "sdpresolve-certificate") {
      throw std::invalid_argument("certificate format tag is missing or unknown");
    }
    if (j.at("schema_version").get<int>() != 1) {
      throw std::invalid_argument("certificate schema_version is unsupported");
    }
    ReductionCertificate cert;
    const json& orig = j.at("original");
    cert.original_n = orig.at("n").get<int>();
    cert.original_m = orig.at("m").get<int>();
    cert.original_blocks = BlockStructure(orig.at("block_sizes").get<std::vector<int>>());
    const json& t = j.at("tolerances");
    cert.tolerances.eps_support = t.at("eps_support").get<double>();
    cert.tolerances.eps_rhs = t.at("eps_rhs").get<double>();
    cert.tolerances.eps_pivot = t.at("eps_pivot").get<double>();
    for (const json& s : j.at("steps")) {
      BasicStepRecord st;
      st.constraint_id = s.at("constraint_id").get<int>();
      st.sign = s.at("sign").get<int>();
      const std::string action = s.at("action").get<std::string>();
      if (action == "delete") {
        st.action = StepAction::DeleteConstraint;
      } else if (action == "infeasible") {
        st.action = StepAction::DeclareInfeasible;
      } else {
        throw std::invalid_argument("certificate step action '" + action + "' is unknown");
      }
      st.rhs_at_step = s.at("rhs_at_step").get<double>();
      st.support = support_from_json(s.at("support"), /*with_flat=*/true, cert.original_blocks);
      st.support_original =
          support_from_json(s.at("support_original"), /*with_flat=*/false, cert.original_blocks);
      cert.steps.push_back(std::move(st));
    }
    for (const json& k : j.at("kept_indices")) {
      if (!k.is_array() || k.size() != 2u) {
        throw std::invalid_argument("certificate kept index is malformed");
      }
      cert.kept_indices.push_back(
          index_from_pair(cert.original_blocks, k[0].get<int>(), k[1].get<int>()));
    }
    cert.kept_constraints = j.at("kept_constraints").get<std::vector<int>>();
    const std::string verdict = j.at("verdict").get<std::string>();
    if (verdict != verdict_string(cert)) {
      throw std::invalid_argument("certificate verdict does not match the recorded steps");
    }
    return cert;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("certificate field error: ") + e.what());
  }
}

}  // namespace sdpresolve
