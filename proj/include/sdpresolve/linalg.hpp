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

#ifndef SDPRESOLVE_LINALG_HPP
#define SDPRESOLVE_LINALG_HPP

#include <optional>
#include <vector>

namespace sdpresolve {

/// Dense symmetric matrix stored as a full row-major square.
/// Writers must keep a(i,j) == a(j,i); set_sym/add_sym do so.
struct DenseSym {
  int dim = 0;
  std::vector<double> a;  // dim*dim, row-major

  DenseSym() = default;
  explicit DenseSym(int n) : dim(n), a(static_cast<size_t>(n) * n, 0.0) {}

  static DenseSym identity(int n);

  double at(int i, int j) const { return a[static_cast<size_t>(i) * dim + j]; }
  double& at(int i, int j) { return a[static_cast<size_t>(i) * dim + j]; }

  void set_sym(int i, int j, double v) {
    at(i, j) = v;
    at(j, i) = v;
  }
  void add_sym(int i, int j, double v) {
    at(i, j) += v;
    if (i != j) at(j, i) += v;
  }

  DenseSym negated() const;
  double max_abs() const;

  bool operator==(const DenseSym&) const = default;
};

/// Cholesky factorization M = L*L^T (L lower triangular, zeros above the
/// diagonal). Returns the factor iff every pivot exceeds
/// eps_pivot * max(1, max diagonal of M); otherwise nullopt ("not positive
/// definite"). dim 0 yields the empty factor. Throws std::invalid_argument
/// on non-finite input.
std::optional<DenseSym> cholesky(const DenseSym& m, double eps_pivot = 0.0);

/// True iff cholesky(m, eps_pivot) succeeds. dim 0 is vacuously true.
bool is_pd(const DenseSym& m, double eps_pivot = 0.0);

struct GershgorinBounds {
  double lo = 0.0;
  double hi = 0.0;
};

/// Disc bounds containing every eigenvalue of m.
GershgorinBounds gershgorin_bounds(const DenseSym& m);

/// Lower bound on the minimum eigenvalue, within tol of the true value.
/// Bisects on t using the fact that M - t*I is positive definite exactly
/// when t < lambda_min(M); the bracket comes from Gershgorin discs.
/// dim 0 returns 0.
double lambda_min_lower(const DenseSym& m, double tol);

}  // namespace sdpresolve

#endif  // SDPRESOLVE_LINALG_HPP
