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

#include "sdpresolve/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace sdpresolve {

DenseSym DenseSym::identity(int n) {
  DenseSym m(n);
  for (int i = 0; i < n; ++i) m.at(i, i) = 1.0;
  return m;
}

DenseSym DenseSym::negated() const {
  DenseSym m(dim);
  for (size_t k = 0; k < a.size(); ++k) m.a[k] = -a[k];
  return m;
}

double DenseSym::max_abs() const {
  double v = 0.0;
  for (double x : a) v = std::max(v, std::abs(x));
  return v;
}

std::optional<DenseSym> cholesky(const DenseSym& m, double eps_pivot) {
  const int n = m.dim;
  for (double x : m.a) {
    if (!std::isfinite(x)) throw std::invalid_argument("cholesky: non-finite entry");
  }
  double max_diag = 0.0;
  for (int i = 0; i < n; ++i) max_diag = std::max(max_diag, m.at(i, i));
  const double pivot_floor = eps_pivot * std::max(1.0, max_diag);

  DenseSym l(n);
  for (int k = 0; k < n; ++k) {
    double d = m.at(k, k);
    for (int r = 0; r < k; ++r) d -= l.at(k, r) * l.at(k, r);
    if (!(d > pivot_floor)) return std::nullopt;
    const double lkk = std::sqrt(d);
    l.at(k, k) = lkk;
    for (int i = k + 1; i < n; ++i) {
      double s = m.at(i, k);
      for (int r = 0; r < k; ++r) s -= l.at(i, r) * l.at(k, r);
      l.at(i, k) = s / lkk;
    }
  }
  return l;
}

bool is_pd(const DenseSym& m, double eps_pivot) {
  return cholesky(m, eps_pivot).has_value();
}

GershgorinBounds gershgorin_bounds(const DenseSym& m) {
  GershgorinBounds b;
  if (m.dim == 0) return b;
  b.lo = std::numeric_limits<double>::infinity();
  b.hi = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < m.dim; ++i) {
    double radius = 0.0;
    for (int j = 0; j < m.dim; ++j) {
      if (j != i) radius += std::abs(m.at(i, j));
    }
    b.lo = std::min(b.lo, m.at(i, i) - radius);
    b.hi = std::max(b.hi, m.at(i, i) + radius);
  }
  return b;
}

namespace {

bool pd_shifted(const DenseSym& m, double t) {
  DenseSym shifted = m;
  for (int i = 0; i < m.dim; ++i) shifted.at(i, i) -= t;
  return is_pd(shifted, 0.0);
}

}  // namespace

double lambda_min_lower(const DenseSym& m, double tol) {
  if (tol <= 0.0) throw std::invalid_argument("lambda_min_lower: tol must be positive");
  if (m.dim == 0) return 0.0;
  const GershgorinBounds b = gershgorin_bounds(m);
  // Gershgorin guarantees lambda_min >= b.lo, so a failed shift at b.lo
  // pins the eigenvalue exactly.
  if (!pd_shifted(m, b.lo)) return b.lo;
  double lo = b.lo;
  double hi = b.hi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (pd_shifted(m, mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

}  // namespace sdpresolve
