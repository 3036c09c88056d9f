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

#ifndef SDPRESOLVE_CORE_HPP
#define SDPRESOLVE_CORE_HPP

#include <string>
#include <utility>
#include <vector>

#include "sdpresolve/linalg.hpp"

namespace sdpresolve {

/// Block layout of the variable matrix, SDPA convention: a positive size k
/// is a dense symmetric k-by-k block, a negative size -k is a diagonal
/// block of dimension k. Every size is nonzero.
class BlockStructure {
 public:
  BlockStructure() = default;
  explicit BlockStructure(std::vector<int> sizes);

  const std::vector<int>& sizes() const { return sizes_; }
  int block_count() const { return static_cast<int>(sizes_.size()); }
  int dim() const { return n_; }

  /// Blocks are 1-based throughout, matching the SDPA file convention.
  int block_dim(int block) const;
  bool diagonal_block(int block) const;
  int block_offset(int block) const;

  int flat_of(int block, int local) const;

  bool operator==(const BlockStructure&) const = default;

 private:
  void check_block(int block) const;

  std::vector<int> sizes_;
  std::vector<int> offsets_;  // prefix sums of |sizes|
  int n_ = 0;
};

/// One row/column position of the variable matrix: (block, local) are
/// 1-based, flat is the 0-based position in [0, n).
struct GlobalIndex {
  int block = 0;
  int local = 0;
  int flat = 0;

  bool operator==(const GlobalIndex&) const = default;
  bool operator<(const GlobalIndex& o) const { return flat < o.flat; }
};

GlobalIndex index_at(const BlockStructure& s, int flat);

/// Sorted duplicate-free set of row/column indices.
class Support {
 public:
  Support() = default;
  explicit Support(std::vector<GlobalIndex> indices);

  const std::vector<GlobalIndex>& indices() const { return indices_; }
  int size() const { return static_cast<int>(indices_.size()); }
  bool empty() const { return indices_.empty(); }
  bool contains_flat(int flat) const;

  bool operator==(const Support&) const = default;

 private:
  std::vector<GlobalIndex> indices_;
};

/// Sparse symmetric block-diagonal matrix. An entry (block, i, j, value)
/// with i <= j stands for both a_ij and a_ji; entries in diagonal blocks
/// must have i == j. Coordinates are unique and values finite.
class SymBlockMatrix {
 public:
  struct Entry {
    int i = 0;  // 1-based locals, i <= j
    int j = 0;
    double value = 0.0;

    bool operator==(const Entry&) const = default;
  };

  SymBlockMatrix() = default;
  explicit SymBlockMatrix(BlockStructure structure);

  const BlockStructure& structure() const { return structure_; }

  /// Inserts an entry; i > j is normalized by swapping. Throws
  /// std::invalid_argument on out-of-range coordinates, duplicates,
  /// off-diagonal coordinates in a diagonal block, or non-finite values.
  void add(int block, int i, int j, double value);

  bool has(int block, int i, int j) const;
  double at(int block, int i, int j) const;  // 0 when absent

  const std::vector<Entry>& block_entries(int block) const;
  int entry_count() const;

  SymBlockMatrix negated() const;

  bool operator==(const SymBlockMatrix&) const = default;

 private:
  BlockStructure structure_;
  std::vector<std::vector<Entry>> blocks_;  // per block, sorted by (i, j)
};

/// Dense block-diagonal symmetric matrix; every block is materialized as a
/// DenseSym, diagonal blocks keep their off-diagonal entries at zero.
class DenseBlockSym {
 public:
  DenseBlockSym() = default;
  explicit DenseBlockSym(BlockStructure structure);

  const BlockStructure& structure() const { return structure_; }
  const DenseSym& block(int block) const;
  DenseSym& block(int block);

  /// 1-based block-local coordinates, symmetric write.
  void set(int block, int i, int j, double value);
  double at(int block, int i, int j) const;

  bool operator==(const DenseBlockSym&) const = default;

 private:
  BlockStructure structure_;
  std::vector<DenseSym> blocks_;
};

/// Full problem data: minimize objective . X subject to
/// constraints[i] . X = rhs[i] and X positive semidefinite.
struct SdpInstance {
  BlockStructure structure;
  SymBlockMatrix objective;
  std::vector<SymBlockMatrix> constraints;
  std::vector<double> rhs;
  std::string label;

  int m() const { return static_cast<int>(constraints.size()); }
  int n() const { return structure.dim(); }

  /// Throws std::invalid_argument if matrices disagree on the structure or
  /// rhs length differs from the constraint count.
  void validate() const;

  bool operator==(const SdpInstance&) const = default;
};

/// Indices carrying at least one entry with |value| > eps_support, counting
/// the implicit symmetric image of each stored entry.
Support support_of(const SymBlockMatrix& a, double eps_support = 0.0);

/// Principal submatrix of one block over the support's locals there.
struct RestrictedBlock {
  int block = 0;
  bool diagonal = false;
  DenseSym dense;            // when !diagonal
  std::vector<double> diag;  // when diagonal
};

/// Extracts the principal submatrix over S, one piece per block that S
/// touches. Throws std::invalid_argument when S does not fit a's structure.
std::vector<RestrictedBlock> restrict_to(const SymBlockMatrix& a, const Support& s);

/// Old-coordinate to new-coordinate mapping produced by an index deletion.
/// Blocks left empty are dropped; surviving locals are renumbered
/// contiguously in order.
struct IndexRemap {
  BlockStructure old_structure;
  BlockStructure new_structure;
  std::vector<int> old_to_new_flat;   // -1 = deleted, size old n
  std::vector<int> old_to_new_block;  // -1 = dropped, size old block count

  bool kept(int old_flat) const { return old_to_new_flat[old_flat] >= 0; }
  GlobalIndex map(const GlobalIndex& old_index) const;
};

IndexRemap make_deletion_remap(const BlockStructure& structure, const Support& s);

SymBlockMatrix apply_remap(const SymBlockMatrix& a, const IndexRemap& remap);

/// Removes every entry whose row or column lies in S and renumbers the
/// remaining indices; returns the shrunken matrix with the old-to-new map.
std::pair<SymBlockMatrix, IndexRemap> delete_indices(const SymBlockMatrix& a, const Support& s);

/// Trace inner product sum_blocks trace(A_blk * X_blk), evaluated over the
/// stored entries in sorted order. Throws on structure mismatch.
double dot(const SymBlockMatrix& a, const DenseBlockSym& x);

}  // namespace sdpresolve

#endif  // SDPRESOLVE_CORE_HPP
