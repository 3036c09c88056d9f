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

#include "sdpresolve/core.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace sdpresolve {

BlockStructure::BlockStructure(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  offsets_.reserve(sizes_.size());
  for (int s : sizes_) {
    if (s == 0) throw std::invalid_argument("BlockStructure: zero block size");
    offsets_.push_back(n_);
    n_ += std::abs(s);
  }
}

void BlockStructure::check_block(int block) const {
  if (block < 1 || block > block_count()) {
    throw std::invalid_argument("BlockStructure: block ordinal out of range");
  }
}

int BlockStructure::block_dim(int block) const {
  check_block(block);
  return std::abs(sizes_[block - 1]);
}

bool BlockStructure::diagonal_block(int block) const {
  check_block(block);
  return sizes_[block - 1] < 0;
}

int BlockStructure::block_offset(int block) const {
  check_block(block);
  return offsets_[block - 1];
}

int BlockStructure::flat_of(int block, int local) const {
  if (local < 1 || local > block_dim(block)) {
    throw std::invalid_argument("BlockStructure: local index out of range");
  }
  return offsets_[block - 1] + local - 1;
}

GlobalIndex index_at(const BlockStructure& s, int flat) {
  if (flat < 0 || flat >= s.dim()) {
    throw std::invalid_argument("index_at: flat index out of range");
  }
  int block = 1;
  while (block < s.block_count() && s.block_offset(block + 1) <= flat) ++block;
  return GlobalIndex{block, flat - s.block_offset(block) + 1, flat};
}

Support::Support(std::vector<GlobalIndex> indices) : indices_(std::move(indices)) {
  std::sort(indices_.begin(), indices_.end());
  for (size_t k = 1; k < indices_.size(); ++k) {
    if (indices_[k - 1].flat == indices_[k].flat) {
      throw std::invalid_argument("Support: duplicate index");
    }
  }
}

bool Support::contains_flat(int flat) const {
  GlobalIndex probe;
  probe.flat = flat;
  return std::binary_search(indices_.begin(), indices_.end(), probe);
}

SymBlockMatrix::SymBlockMatrix(BlockStructure structure)
    : structure_(std::move(structure)), blocks_(structure_.block_count()) {}

void SymBlockMatrix::add(int block, int i, int j, double value) {
  if (i > j) std::swap(i, j);
  const int d = structure_.block_dim(block);  // validates block
  if (i < 1 || j > d) throw std::invalid_argument("SymBlockMatrix: index out of range");
  if (structure_.diagonal_block(block) && i != j) {
    throw std::invalid_argument("SymBlockMatrix: off-diagonal entry in diagonal block");
  }
  if (!std::isfinite(value)) throw std::invalid_argument("SymBlockMatrix: non-finite value");

  auto& entries = blocks_[block - 1];
  const Entry e{i, j, value};
  auto pos = std::lower_bound(entries.begin(), entries.end(), e,
                              [](const Entry& a, const Entry& b) {
                                return a.i != b.i ? a.i < b.i : a.j < b.j;
                              });
  if (pos != entries.end() && pos->i == i && pos->j == j) {
    throw std::invalid_argument("SymBlockMatrix: duplicate entry");
  }
  entries.insert(pos, e);
}

bool SymBlockMatrix::has(int block, int i, int j) const {
  if (i > j) std::swap(i, j);
  const auto& entries = blocks_.at(block - 1);
  const Entry probe{i, j, 0.0};
  auto pos = std::lower_bound(entries.begin(), entries.end(), probe,
                              [](const Entry& a, const Entry& b) {
                                return a.i != b.i ? a.i < b.i : a.j < b.j;
                              });
  return pos != entries.end() && pos->i == i && pos->j == j;
}

double SymBlockMatrix::at(int block, int i, int j) const {
  if (i > j) std::swap(i, j);
  const auto& entries = blocks_.at(block - 1);
  const Entry probe{i, j, 0.0};
  auto pos = std::lower_bound(entries.begin(), entries.end(), probe,
                              [](const Entry& a, const Entry& b) {
                                return a.i != b.i ? a.i < b.i : a.j < b.j;
                              });
  if (pos != entries.end() && pos->i == i && pos->j == j) return pos->value;
  return 0.0;
}

const std::vector<SymBlockMatrix::Entry>& SymBlockMatrix::block_entries(int block) const {
  return blocks_.at(block - 1);
}

int SymBlockMatrix::entry_count() const {
  int c = 0;
  for (const auto& b : blocks_) c += static_cast<int>(b.size());
  return c;
}

SymBlockMatrix SymBlockMatrix::negated() const {
  SymBlockMatrix out = *this;
  for (auto& b : out.blocks_) {
    for (auto& e : b) e.value = -e.value;
  }
  return out;
}

DenseBlockSym::DenseBlockSym(BlockStructure structure) : structure_(std::move(structure)) {
  blocks_.reserve(structure_.block_count());
  for (int b = 1; b <= structure_.block_count(); ++b) {
    blocks_.emplace_back(structure_.block_dim(b));
  }
}

const DenseSym& DenseBlockSym::block(int block) const { return blocks_.at(block - 1); }
DenseSym& DenseBlockSym::block(int block) { return blocks_.at(block - 1); }

void DenseBlockSym::set(int block, int i, int j, double value) {
  const int d = structure_.block_dim(block);
  if (i < 1 || i > d || j < 1 || j > d) {
    throw std::invalid_argument("DenseBlockSym: index out of range");
  }
  if (structure_.diagonal_block(block) && i != j && value != 0.0) {
    throw std::invalid_argument("DenseBlockSym: off-diagonal entry in diagonal block");
  }
  blocks_[block - 1].set_sym(i - 1, j - 1, value);
}

double DenseBlockSym::at(int block, int i, int j) const {
  return blocks_.at(block - 1).at(i - 1, j - 1);
}

void SdpInstance::validate() const {
  if (objective.structure() != structure) {
    throw std::invalid_argument("SdpInstance: objective structure mismatch");
  }
  for (const auto& a : constraints) {
    if (a.structure() != structure) {
      throw std::invalid_argument("SdpInstance: constraint structure mismatch");
    }
  }
  if (rhs.size() != constraints.size()) {
    throw std::invalid_argument("SdpInstance: rhs length does not match constraint count");
  }
}

Support support_of(const SymBlockMatrix& a, double eps_support) {
  const BlockStructure& s = a.structure();
  std::vector<GlobalIndex> indices;
  std::vector<char> seen(s.dim(), 0);
  for (int b = 1; b <= s.block_count(); ++b) {
    for (const auto& e : a.block_entries(b)) {
      if (std::abs(e.value) <= eps_support) continue;
      for (int local : {e.i, e.j}) {
        const int flat = s.flat_of(b, local);
        if (!seen[flat]) {
          seen[flat] = 1;
          indices.push_back(GlobalIndex{b, local, flat});
        }
      }
    }
  }
  return Support(std::move(indices));
}

std::vector<RestrictedBlock> restrict_to(const SymBlockMatrix& a, const Support& s) {
  const BlockStructure& st = a.structure();
  for (const auto& idx : s.indices()) {
    if (idx.flat < 0 || idx.flat >= st.dim() || st.flat_of(idx.block, idx.local) != idx.flat) {
      throw std::invalid_argument("restrict_to: support index outside structure");
    }
  }

  std::vector<RestrictedBlock> out;
  size_t k = 0;
  const auto& idx = s.indices();
  while (k < idx.size()) {
    const int block = idx[k].block;
    // Locals of this block in the support, ascending (s is flat-sorted).
    std::vector<int> locals;
    while (k < idx.size() && idx[k].block == block) {
      locals.push_back(idx[k].local);
      ++k;
    }
    RestrictedBlock rb;
    rb.block = block;
    rb.diagonal = st.diagonal_block(block);
    if (rb.diagonal) {
      rb.diag.reserve(locals.size());
      for (int local : locals) rb.diag.push_back(a.at(block, local, local));
    } else {
      const int d = static_cast<int>(locals.size());
      rb.dense = DenseSym(d);
      std::vector<int> pos(st.block_dim(block) + 1, -1);
      for (int p = 0; p < d; ++p) pos[locals[p]] = p;
      for (const auto& e : a.block_entries(block)) {
        const int pi = pos[e.i];
        const int pj = pos[e.j];
        if (pi >= 0 && pj >= 0) rb.dense.set_sym(pi, pj, e.value);
      }
    }
    out.push_back(std::move(rb));
  }
  return out;
}

GlobalIndex IndexRemap::map(const GlobalIndex& old_index) const {
  const int nf = old_to_new_flat.at(old_index.flat);
  if (nf < 0) throw std::invalid_argument("IndexRemap: index was deleted");
  return index_at(new_structure, nf);
}

IndexRemap make_deletion_remap(const BlockStructure& structure, const Support& s) {
  for (const auto& idx : s.indices()) {
    if (idx.flat < 0 || idx.flat >= structure.dim() ||
        structure.flat_of(idx.block, idx.local) != idx.flat) {
      throw std::invalid_argument("make_deletion_remap: support index outside structure");
    }
  }

  IndexRemap remap;
  remap.old_structure = structure;
  remap.old_to_new_flat.assign(structure.dim(), -1);
  remap.old_to_new_block.assign(structure.block_count(), -1);

  std::vector<int> new_sizes;
  int new_flat = 0;
  for (int b = 1; b <= structure.block_count(); ++b) {
    const int d = structure.block_dim(b);
    int kept = 0;
    for (int local = 1; local <= d; ++local) {
      const int flat = structure.flat_of(b, local);
      if (s.contains_flat(flat)) continue;
      remap.old_to_new_flat[flat] = new_flat++;
      ++kept;
    }
    if (kept > 0) {
      remap.old_to_new_block[b - 1] = static_cast<int>(new_sizes.size()) + 1;
      new_sizes.push_back(structure.diagonal_block(b) ? -kept : kept);
    }
  }
  remap.new_structure = BlockStructure(std::move(new_sizes));
  return remap;
}

SymBlockMatrix apply_remap(const SymBlockMatrix& a, const IndexRemap& remap) {
  if (a.structure() != remap.old_structure) {
    throw std::invalid_argument("apply_remap: structure mismatch");
  }
  SymBlockMatrix out(remap.new_structure);
  for (int b = 1; b <= a.structure().block_count(); ++b) {
    const int nb = remap.old_to_new_block[b - 1];
    if (nb < 0) continue;
    for (const auto& e : a.block_entries(b)) {
      const int fi = remap.old_to_new_flat[a.structure().flat_of(b, e.i)];
      const int fj = remap.old_to_new_flat[a.structure().flat_of(b, e.j)];
      if (fi < 0 || fj < 0) continue;
      const int ni = fi - remap.new_structure.block_offset(nb) + 1;
      const int nj = fj - remap.new_structure.block_offset(nb) + 1;
      out.add(nb, ni, nj, e.value);
    }
  }
  return out;
}

std::pair<SymBlockMatrix, IndexRemap> delete_indices(const SymBlockMatrix& a, const Support& s) {
  IndexRemap remap = make_deletion_remap(a.structure(), s);
  SymBlockMatrix out = apply_remap(a, remap);
  return {std::move(out), std::move(remap)};
}

double dot(const SymBlockMatrix& a, const DenseBlockSym& x) {
  if (a.structure() != x.structure()) throw std::invalid_argument("dot: structure mismatch");
  double sum = 0.0;
  for (int b = 1; b <= a.structure().block_count(); ++b) {
    for (const auto& e : a.block_entries(b)) {
      const double w = (e.i == e.j) ? 1.0 : 2.0;
      sum += e.value * x.at(b, e.i, e.j) * w;
    }
  }
  return sum;
}

}  // namespace sdpresolve
