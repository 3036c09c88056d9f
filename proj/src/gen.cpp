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

#include "sdpresolve/gen.hpp"

#include <algorithm>
#include <cstddef>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>

namespace sdpresolve {

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

double SplitMix64::uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double SplitMix64::uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

int SplitMix64::below(int n) {
  if (n <= 0) throw std::invalid_argument("below() needs n > 0");
  return static_cast<int>(next() % static_cast<std::uint64_t>(n));
}

bool SplitMix64::coin() { return (next() >> 63) != 0; }

GenParams GenParams::basic(std::uint64_t seed, int k, int support_size) {
  GenParams p;
  p.seed = seed;
  p.base_n = 6;
  p.base_m = 4;
  p.k = k;
  p.support_sizes.assign(static_cast<std::size_t>(k), support_size);
  return p;
}

GenParams GenParams::ill_conditioned(std::uint64_t seed, int k, int support_size) {
  GenParams p = basic(seed, k, support_size);
  p.plant_shift = 1e-8;
  return p;
}

namespace {

// Entries of one matrix over the single dense block, keyed by normalized
// 1-based locals. Collisions keep the first value; the draw order stays
// fixed either way, so instances are deterministic in the seed.
using EntryMap = std::map<std::pair<int, int>, double>;

void put(EntryMap& m, int i, int j, double v) {
  if (i > j) std::swap(i, j);
  m.emplace(std::make_pair(i, j), v);
}

// Magnitudes stay in [0.1, 1] * scale, bounded away from zero: a chance
// positive-definite restriction of a base constraint then forces
// |A . X0| >= 0.1 * scale, far above eps_rhs, so the base never reduces.
double signed_value(SplitMix64& rng, double scale) {
  const double v = rng.uniform(0.1, 1.0) * scale;
  return rng.coin() ? v : -v;
}

// L*L^T + shift*I for random lower-triangular unit-bounded L.
DenseSym random_pd(SplitMix64& rng, int n, double shift) {
  DenseSym l(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) l.at(i, j) = rng.uniform(-1.0, 1.0);
  }
  DenseSym x(n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = 0.0;
      for (int t = 0; t <= j; ++t) s += l.at(i, t) * l.at(j, t);
      if (i == j) s += shift;
      x.set_sym(i, j, s);
    }
  }
  return x;
}

// A . X0 over the base indices; entries touching later indices see zero.
double dot_base(const EntryMap& m, const DenseSym& x0) {
  double s = 0.0;
  for (const auto& [ij, v] : m) {
    const auto [i, j] = ij;
    if (i > x0.dim || j > x0.dim) continue;
    s += v * x0.at(i - 1, j - 1) * (i == j ? 1.0 : 2.0);
  }
  return s;
}

SymBlockMatrix to_matrix(const BlockStructure& st, const EntryMap& m) {
  SymBlockMatrix a(st);
  for (const auto& [ij, v] : m) {
    if (v != 0.0) a.add(1, ij.first, ij.second, v);
  }
  return a;
}

EntryMap random_sparse(SplitMix64& rng, int n, int attempts, double scale) {
  EntryMap m;
  for (int e = 0; e < attempts; ++e) {
    const int i = 1 + rng.below(n);
    const int j = 1 + rng.below(n);
    put(m, i, j, signed_value(rng, scale));
  }
  return m;
}

std::vector<int> fisher_yates(SplitMix64& rng, int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  for (int i = n - 1; i >= 1; --i) std::swap(v[i], v[rng.below(i + 1)]);
  return v;
}

void validate_params(const GenParams& p) {
  if (p.base_n < 1) throw std::invalid_argument("base_n must be >= 1");
  if (p.base_m < 0) throw std::invalid_argument("base_m must be >= 0");
  if (p.k < 0 || p.k != static_cast<int>(p.support_sizes.size())) {
    throw std::invalid_argument("k must equal the number of support sizes");
  }
  for (const int s : p.support_sizes) {
    if (s < 1) throw std::invalid_argument("support sizes must be >= 1");
  }
  if (!(p.coupling_density >= 0.0 && p.coupling_density <= 1.0)) {
    throw std::invalid_argument("coupling_density must lie in [0, 1]");
  }
  if (!(p.value_scale > 0.0)) throw std::invalid_argument("value_scale must be positive");
  if (!(p.plant_shift > 0.0)) throw std::invalid_argument("plant_shift must be positive");
  if (p.plant_infeasible && p.k < 1) {
    throw std::invalid_argument("plant_infeasible needs at least one planted step");
  }
}

}  // namespace

PlantedInstance gen_planted(const GenParams& p) {
  validate_params(p);
  SplitMix64 rng(p.seed);
  int planted_total = 0;
  for (const int s : p.support_sizes) planted_total += s;
  const int total_n = p.base_n + planted_total;
  const BlockStructure st({total_n});

  const DenseSym x0 = random_pd(rng, p.base_n, 1.0);

  const int m_total = p.base_m + p.k;
  std::vector<EntryMap> cons(m_total);
  std::vector<double> rhs(m_total, 0.0);

  for (int i = 0; i < p.base_m; ++i) {
    cons[i] = random_sparse(rng, p.base_n, 3 + rng.below(4), p.value_scale);
    rhs[i] = dot_base(cons[i], x0);
  }

  // Plant t lives on fresh indices S_t. Couplings from S_t into earlier
  // planted indices carry no diagonal there, so the restriction of plant t
  // cannot be definite (for either sign) until every earlier plant fired.
  std::vector<std::pair<int, int>> span(p.k);  // [first, last] 1-based locals
  int off = p.base_n;
  for (int t = 0; t < p.k; ++t) {
    const int sz = p.support_sizes[t];
    span[t] = {off + 1, off + sz};
    const DenseSym d = random_pd(rng, sz, p.plant_shift);
    EntryMap& plant = cons[p.base_m + t];
    for (int i = 1; i <= sz; ++i) {
      for (int j = i; j <= sz; ++j) put(plant, off + i, off + j, d.at(i - 1, j - 1));
    }
    if (t >= 1) {
      const auto [lo, hi] = span[t - 1];
      const int link_prev = lo + rng.below(hi - lo + 1);
      const int link_self = off + 1 + rng.below(sz);
      put(plant, link_prev, link_self, signed_value(rng, p.value_scale));
      for (int s = off + 1; s <= off + sz; ++s) {
        for (int e = p.base_n + 1; e <= off; ++e) {
          if (rng.uniform01() < p.coupling_density) {
            put(plant, e, s, signed_value(rng, p.value_scale));
          }
        }
      }
    }
    rhs[p.base_m + t] = (p.plant_infeasible && t == p.k - 1) ? -1.0 : 0.0;
    off += sz;
  }

  if (p.k > 0) {
    for (int i = 0; i < p.base_m; ++i) {
      for (int s = 0; s < 3; ++s) {
        if (rng.uniform01() < p.coupling_density) {
          const int a = 1 + rng.below(p.base_n);
          const int q = p.base_n + 1 + rng.below(planted_total);
          put(cons[i], a, q, signed_value(rng, p.value_scale));
        }
      }
    }
  }

  SdpInstance inst;
  inst.structure = st;
  inst.objective = to_matrix(st, random_sparse(rng, total_n, std::max(4, total_n / 2), p.value_scale));
  inst.constraints.reserve(m_total);
  for (int i = 0; i < m_total; ++i) inst.constraints.push_back(to_matrix(st, cons[i]));
  inst.rhs = rhs;
  inst.label = "planted seed=" + std::to_string(p.seed) + " k=" + std::to_string(p.k) +
               (p.plant_infeasible ? " infeasible" : "");

  // The witness is x0 padded with zeros on the planted indices; negating a
  // constraint negates both sides, so only the index permutation touches it.
  DenseBlockSym x_hat(st);
  for (int i = 1; i <= p.base_n; ++i) {
    for (int j = i; j <= p.base_n; ++j) x_hat.set(1, i, j, x0.at(i - 1, j - 1));
  }

  const std::vector<std::vector<int>> perms = random_permutations(st, rng);
  SdpInstance out = permute_within_blocks(inst, perms);
  const std::vector<int> order = fisher_yates(rng, m_total);
  out = shuffle_constraints(out, order);
  std::vector<char> mask(m_total, 0);
  for (int i = 0; i < m_total; ++i) mask[i] = rng.coin() ? 1 : 0;
  out = negate_constraints(out, mask);

  PlantSummary summary;
  summary.infeasible = p.plant_infeasible;
  summary.deleted_index_count =
      planted_total - (p.plant_infeasible ? p.support_sizes.back() : 0);
  std::vector<int> inv(m_total, 0);
  for (int pos = 0; pos < m_total; ++pos) inv[order[pos]] = pos;
  for (int t = 0; t < p.k; ++t) {
    summary.planted_constraint_ids.push_back(inv[p.base_m + t] + 1);
  }
  return PlantedInstance{std::move(out), std::move(summary), permute_dense(x_hat, perms)};
}

FeasibleInstance gen_strictly_feasible(std::uint64_t seed, int n, int m, double value_scale) {
  if (n < 1) throw std::invalid_argument("n must be >= 1");
  if (m < 0) throw std::invalid_argument("m must be >= 0");
  if (!(value_scale > 0.0)) throw std::invalid_argument("value_scale must be positive");
  SplitMix64 rng(seed);
  const BlockStructure st({n});
  const DenseSym x0 = random_pd(rng, n, 1.0);

  SdpInstance inst;
  inst.structure = st;
  inst.objective = to_matrix(st, random_sparse(rng, n, std::max(4, n / 2), value_scale));
  for (int i = 0; i < m; ++i) {
    const EntryMap a = random_sparse(rng, n, 3 + rng.below(4), value_scale);
    inst.constraints.push_back(to_matrix(st, a));
    inst.rhs.push_back(dot_base(a, x0));
  }
  inst.label = "feasible seed=" + std::to_string(seed);

  DenseBlockSym witness(st);
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j <= n; ++j) witness.set(1, i, j, x0.at(i - 1, j - 1));
  }
  return FeasibleInstance{std::move(inst), std::move(witness)};
}

namespace {

void validate_perms(const BlockStructure& st, const std::vector<std::vector<int>>& perms) {
  if (static_cast<int>(perms.size()) != st.block_count()) {
    throw std::invalid_argument("one permutation per block required");
  }
  for (int b = 1; b <= st.block_count(); ++b) {
    const std::vector<int>& perm = perms[b - 1];
    const int d = st.block_dim(b);
    if (static_cast<int>(perm.size()) != d) {
      throw std::invalid_argument("permutation length does not match the block");
    }
    std::vector<char> seen(d + 1, 0);
    for (const int v : perm) {
      if (v < 1 || v > d || seen[v]) throw std::invalid_argument("not a permutation");
      seen[v] = 1;
    }
  }
}

SymBlockMatrix permute_matrix(const SymBlockMatrix& a, const std::vector<std::vector<int>>& perms) {
  SymBlockMatrix out(a.structure());
  for (int b = 1; b <= a.structure().block_count(); ++b) {
    const std::vector<int>& perm = perms[b - 1];
    for (const SymBlockMatrix::Entry& e : a.block_entries(b)) {
      out.add(b, perm[e.i - 1], perm[e.j - 1], e.value);
    }
  }
  return out;
}

}  // namespace

SdpInstance permute_within_blocks(const SdpInstance& inst,
                                  const std::vector<std::vector<int>>& perms) {
  validate_perms(inst.structure, perms);
  SdpInstance out;
  out.structure = inst.structure;
  out.objective = permute_matrix(inst.objective, perms);
  out.constraints.reserve(inst.constraints.size());
  for (const SymBlockMatrix& a : inst.constraints) {
    out.constraints.push_back(permute_matrix(a, perms));
  }
  out.rhs = inst.rhs;
  out.label = inst.label;
  return out;
}

DenseBlockSym permute_dense(const DenseBlockSym& x, const std::vector<std::vector<int>>& perms) {
  validate_perms(x.structure(), perms);
  DenseBlockSym out(x.structure());
  const BlockStructure& st = x.structure();
  for (int b = 1; b <= st.block_count(); ++b) {
    const std::vector<int>& perm = perms[b - 1];
    const int d = st.block_dim(b);
    for (int i = 1; i <= d; ++i) {
      if (st.diagonal_block(b)) {
        out.set(b, perm[i - 1], perm[i - 1], x.at(b, i, i));
        continue;
      }
      for (int j = i; j <= d; ++j) out.set(b, perm[i - 1], perm[j - 1], x.at(b, i, j));
    }
  }
  return out;
}

SolutionFile permute_solution(const SolutionFile& sol, const BlockStructure& structure,
                              const std::vector<std::vector<int>>& perms) {
  validate_perms(structure, perms);
  auto map_entries = [&perms](const std::vector<SolutionEntry>& in) {
    std::vector<SolutionEntry> out;
    out.reserve(in.size());
    for (const SolutionEntry& e : in) {
      int i = perms[e.block - 1][e.i - 1];
      int j = perms[e.block - 1][e.j - 1];
      if (i > j) std::swap(i, j);
      out.push_back(SolutionEntry{e.block, i, j, e.value});
    }
    return out;
  };
  SolutionFile out;
  out.y = sol.y;
  out.x_entries = map_entries(sol.x_entries);
  if (sol.s_entries) out.s_entries = map_entries(*sol.s_entries);
  return out;
}

std::vector<std::vector<int>> random_permutations(const BlockStructure& structure,
                                                  SplitMix64& rng) {
  std::vector<std::vector<int>> perms;
  perms.reserve(structure.block_count());
  for (int b = 1; b <= structure.block_count(); ++b) {
    std::vector<int> perm = fisher_yates(rng, structure.block_dim(b));
    for (int& v : perm) ++v;
    perms.push_back(std::move(perm));
  }
  return perms;
}

SdpInstance shuffle_constraints(const SdpInstance& inst, const std::vector<int>& order) {
  const int m = inst.m();
  if (static_cast<int>(order.size()) != m) {
    throw std::invalid_argument("order length does not match the constraint count");
  }
  std::vector<char> seen(m, 0);
  for (const int o : order) {
    if (o < 0 || o >= m || seen[o]) throw std::invalid_argument("not a permutation");
    seen[o] = 1;
  }
  SdpInstance out;
  out.structure = inst.structure;
  out.objective = inst.objective;
  out.constraints.reserve(m);
  out.rhs.reserve(m);
  for (int pos = 0; pos < m; ++pos) {
    out.constraints.push_back(inst.constraints[order[pos]]);
    out.rhs.push_back(inst.rhs[order[pos]]);
  }
  out.label = inst.label;
  return out;
}

SdpInstance negate_constraints(const SdpInstance& inst, const std::vector<char>& mask) {
  if (static_cast<int>(mask.size()) != inst.m()) {
    throw std::invalid_argument("mask length does not match the constraint count");
  }
  SdpInstance out = inst;
  for (int i = 0; i < inst.m(); ++i) {
    if (!mask[i]) continue;
    out.constraints[i] = inst.constraints[i].negated();
    out.rhs[i] = -inst.rhs[i];
  }
  return out;
}

Scramble scramble(const SdpInstance& inst, std::uint64_t seed) {
  SplitMix64 rng(seed);
  Scramble s;
  s.perms = random_permutations(inst.structure, rng);
  s.order = fisher_yates(rng, inst.m());
  s.negated.assign(static_cast<std::size_t>(inst.m()), 0);
  for (int i = 0; i < inst.m(); ++i) s.negated[i] = rng.coin() ? 1 : 0;
  s.instance = negate_constraints(
      shuffle_constraints(permute_within_blocks(inst, s.perms), s.order), s.negated);
  return s;
}

}  // namespace sdpresolve
