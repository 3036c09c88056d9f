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

#ifndef SDPRESOLVE_LIFT_HPP
#define SDPRESOLVE_LIFT_HPP

#include <string>
#include <vector>

#include "sdpresolve/core.hpp"
#include "sdpresolve/io_sdpa.hpp"
#include "sdpresolve/reduce.hpp"

namespace sdpresolve {

/// Block structure of the instance that survives all deletion steps.
BlockStructure reduced_structure(const ReductionCertificate& cert);

/// Embeds a solution of the reduced problem into the original coordinates;
/// deleted rows and columns become zero. Throws std::invalid_argument on a
/// structure mismatch or an infeasibility certificate.
DenseBlockSym lift_solution(const DenseBlockSym& x_reduced, const ReductionCertificate& cert);

/// Extracts the kept principal submatrix of an original-coordinate matrix.
DenseBlockSym restrict_solution(const DenseBlockSym& x_original, const ReductionCertificate& cert);

/// Entry-level lift of a solution file: X and S entries are re-embedded at
/// the kept indices, y is passed through unchanged.
SolutionFile lift_solution_file(const SolutionFile& sol, const ReductionCertificate& cert);

struct VerifyResult {
  bool ok = true;
  std::vector<std::string> diagnostics;  // one message per failed check
};

/// Replays the certificate against the original instance: every step must
/// name a live constraint whose recomputed support matches the record,
/// whose signed restriction is positive definite, and whose right-hand
/// side matches the recorded action; deletions are applied along the way.
/// Also checks the certificate's own bookkeeping (disjoint step supports,
/// kept index/constraint lists). Failures are reported, not thrown.
VerifyResult verify_certificate(const SdpInstance& original, const ReductionCertificate& cert,
                                const Tolerances& tol);

/// JSON serialization with a stable schema (format "sdpresolve-certificate",
/// schema_version 1). Values round-trip exactly.
std::string certificate_to_json(const ReductionCertificate& cert);
ReductionCertificate certificate_from_json(const std::string& text);

}  // namespace sdpresolve

#endif  // SDPRESOLVE_LIFT_HPP
