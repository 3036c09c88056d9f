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

#ifndef SDPRESOLVE_GEN_HPP
#define SDPRESOLVE_GEN_HPP

#include <cstdint>
#include <vector>

#include "sdpresolve/core.hpp"
#include "sdpresolve/io_sdpa.hpp"

namespace sdpresolve {

/// SplitMix64 (Steele/Lea/Flood), fixed here so generated corpora are
/// reproducible across platforms and languages:
///   state += 0x9E3779B97F4A7C15
///   z = state; z = (z ^ z>>30) * 0xBF58476D1CE4E5B9
///   z = (z ^ z>>27) * 0x94D049BB133111EB; return z ^ z>>31
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform01();
  double uniform(double lo, double hi);
  /// Uniform in [0, n); n > 0. Uses next() % n (bias < 2^-32 for n < 2^32).
  int below(int n);
  bool coin();

 private:
  std::uint64_t state_;
};

/// Parameters of the planted-chain generator. The instance carries one
/// dense block of dimension base_n + sum(support_sizes): a strictly
/// feasible base on the first base_n indices plus k planted constraints,
/// where plant t only becomes recognizable after plants 1..t-1 fired.
struct GenParams {
  std::uint64_t seed = 0;
  int base_n = 4;
  int base_m = 3;
  int k = 0;                       // = |support_sizes|
  std::vector<int> support_sizes;  // one size >= 1 per planted step
  bool plant_infeasible = false;   // last plant gets rhs -1 instead of 0
  double coupling_density = 0.25;  // extra cross couplings, fraction of pairs
  double value_scale = 1.0;
  double plant_shift = 1.0;  // the +shift*I of planted PD matrices

  /// k plants of the given size on a small well-conditioned base.
  static GenParams basic(std::uint64_t seed, int k, int support_size = 2);
  /// Same shape, plants shifted by only 1e-8*I to probe tolerances.
  static GenParams ill_conditioned(std::uint64_t seed, int k, int support_size = 2);
};

struct PlantSummary {
  int deleted_index_count = 0;  // indices the reduction is expected to delete
  bool infeasible = false;
  std::vector<int> planted_constraint_ids;  // final 1-based ids, chain order

  bool operator==(const PlantSummary&) const = default;
};

struct PlantedInstance {
  SdpInstance instance;
  PlantSummary summary;
  // The base interior point, zero on all planted indices, expressed in the
  // final (scrambled) coordinates. Feasible for every constraint except an
  // infeasible plant; restricting it to the kept indices of a reduction
  // yields a feasible point of the reduced instance.
  DenseBlockSym witness;
};

/// Deterministic in params. Throws std::invalid_argument on bad params.
PlantedInstance gen_planted(const GenParams& p);

struct FeasibleInstance {
  SdpInstance instance;
  DenseBlockSym witness;  // strictly feasible, lambda_min >= 1
};

/// One dense block of dimension n, m equality constraints whose right-hand
/// sides come from the returned interior witness, random objective.
FeasibleInstance gen_strictly_feasible(std::uint64_t seed, int n, int m,
                                       double value_scale = 1.0);

/// perms[b-1][old_local-1] = new local of block b (a 1-based permutation).
SdpInstance permute_within_blocks(const SdpInstance& inst,
                                  const std::vector<std::vector<int>>& perms);
DenseBlockSym permute_dense(const DenseBlockSym& x, const std::vector<std::vector<int>>& perms);
SolutionFile permute_solution(const SolutionFile& sol, const BlockStructure& structure,
                              const std::vector<std::vector<int>>& perms);
std::vector<std::vector<int>> random_permutations(const BlockStructure& structure,
                                                  SplitMix64& rng);

/// order[new_pos] = old 0-based constraint position.
SdpInstance shuffle_constraints(const SdpInstance& inst, const std::vector<int>& order);

/// mask[i] != 0 negates constraint i+1 and its right-hand side.
SdpInstance negate_constraints(const SdpInstance& inst, const std::vector<char>& mask);

struct Scramble {
  SdpInstance instance;
  std::vector<std::vector<int>> perms;
  std::vector<int> order;
  std::vector<char> negated;
};

/// Random permutation within every block, constraint shuffle, and negation
/// of about half the constraints; deterministic in seed.
Scramble scramble(const SdpInstance& inst, std::uint64_t seed);

}  // namespace sdpresolve

#endif  // SDPRESOLVE_GEN_HPP
