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

#ifndef SDPRESOLVE_IO_SDPA_HPP
#define SDPRESOLVE_IO_SDPA_HPP

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "sdpresolve/core.hpp"

namespace sdpresolve {

enum class SdpaErrorKind {
  Parse,                  // malformed numerics or layout
  DuplicateEntry,         // (matno, block, i, j) seen twice
  BadIndex,               // block ordinal or local index out of range
  BadMatno,               // matrix number outside [0, m]
  BadDiagonalBlockEntry,  // off-diagonal entry in a diagonal block
};

/// Parse failure with a 1-based line number.
class SdpaError : public std::runtime_error {
 public:
  SdpaError(SdpaErrorKind kind, int line, const std::string& message);

  SdpaErrorKind kind() const { return kind_; }
  int line() const { return line_; }

 private:
  SdpaErrorKind kind_;
  int line_;
};

/// Reads a sparse SDPA instance (.dat-s): optional comment lines starting
/// with '"' or '*', then m, then the block count, then the block sizes
/// (whitespace/comma/parenthesis/brace separated), then the m right-hand
/// sides, then entry lines "matno block i j value" where matno 0 is the
/// objective. Entries with i > j are normalized by swapping; entries with
/// value exactly 0 are dropped. The first comment line becomes the
/// instance label.
SdpInstance parse_instance(std::istream& in);
SdpInstance parse_instance_text(const std::string& text);

/// Emits .dat-s text; parse_instance(write_instance(x)) == x, values are
/// rendered with the shortest round-trip decimal form.
std::string write_instance(const SdpInstance& inst);

struct SolutionEntry {
  int block = 0;
  int i = 0;  // normalized i <= j
  int j = 0;
  double value = 0.0;

  bool operator==(const SolutionEntry&) const = default;
};

/// Candidate solution data: an optional dual vector y, primal matrix
/// entries X, and optional dual slack entries S, all over a known
/// block structure. Absent parts are treated as zero by consumers.
struct SolutionFile {
  std::optional<std::vector<double>> y;
  std::vector<SolutionEntry> x_entries;
  std::optional<std::vector<SolutionEntry>> s_entries;

  bool operator==(const SolutionFile&) const = default;
};

/// Line-oriented solution format: '#' comments, an optional "y v1 .. vm"
/// line, "X block i j value" lines, optional "S block i j value" lines.
/// Normalization and error rules match parse_instance.
SolutionFile parse_solution(std::istream& in, const BlockStructure& structure, int m);
SolutionFile parse_solution_text(const std::string& text, const BlockStructure& structure, int m);

std::string write_solution(const SolutionFile& sol);

/// Builds the dense block matrix carrying the given entries (absent = 0).
DenseBlockSym to_dense(const BlockStructure& structure, const std::vector<SolutionEntry>& entries);

/// Shortest decimal rendering of v that parses back to the same double.
std::string format_double(double v);

}  // namespace sdpresolve

#endif  // SDPRESOLVE_IO_SDPA_HPP
