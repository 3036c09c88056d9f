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

#include <cmath>
#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "sdpresolve/gen.hpp"
#include "sdpresolve/io_sdpa.hpp"
#include "sdpresolve/metrics.hpp"

using namespace sdpresolve;

namespace {

// min c*x subject to a*x = b over a single 1x1 block.
SdpInstance scalar_instance(double c, double a, double b) {
  SdpInstance inst;
  inst.structure = BlockStructure({1});
  inst.objective = SymBlockMatrix(inst.structure);
  if (c != 0.0) inst.objective.add(1, 1, 1, c);
  SymBlockMatrix am(inst.structure);
  if (a != 0.0) am.add(1, 1, 1, a);
  inst.constraints.push_back(am);
  inst.rhs = {b};
  return inst;
}

SolutionFile scalar_solution(double x, std::optional<double> y, std::optional<double> s) {
  SolutionFile sol;
  if (x != 0.0) sol.x_entries.push_back({1, 1, 1, x});
  if (y) sol.y = std::vector<double>{*y};
  if (s) {
    sol.s_entries.emplace();
    if (*s != 0.0) sol.s_entries->push_back({1, 1, 1, *s});
  }
  return sol;
}

}  // namespace

TEST_SUITE("metrics") {
  TEST_CASE("err1 measures the scaled residual") {
    // tr(X) = 1 with X = I: residual 1 against denominator 1 + |b| = 2.
    const SdpInstance inst = parse_instance_text("1\n1\n2\n1.0\n1 1 1 1 1\n1 1 2 2 1\n");
    SolutionFile sol;
    sol.x_entries = {{1, 1, 1, 1.0}, {1, 2, 2, 1.0}};
    const DimacsErrors e = dimacs_errors(inst, sol);
    REQUIRE(e.err1.has_value());
    CHECK(*e.err1 == 0.5);
    REQUIRE(e.err2.has_value());
    CHECK(*e.err2 == 0.0);
    CHECK_FALSE(e.err3.has_value());
    CHECK_FALSE(e.err4.has_value());
    CHECK_FALSE(e.err5.has_value());
    CHECK_FALSE(e.err6.has_value());
  }

  TEST_CASE("err2 measures how far X is from semidefinite") {
    const SdpInstance inst = parse_instance_text("1\n1\n2\n0.0\n1 1 1 1 1\n");
    SolutionFile sol;
    sol.x_entries = {{1, 1, 1, -1.0}, {1, 2, 2, 1.0}};
    const DimacsErrors e = dimacs_errors(inst, sol);
    REQUIRE(e.err2.has_value());
    CHECK(std::fabs(*e.err2 - 1.0) <= 1e-9);

    // An empty X is the zero matrix, which is semidefinite.
    SolutionFile zero;
    CHECK(*dimacs_errors(inst, zero).err2 == 0.0);
  }

  TEST_CASE("err2 is positively homogeneous in X") {
    const SdpInstance inst = parse_instance_text("1\n1\n2\n0.0\n1 1 1 1 1\n");
    auto scaled = [&](double t) {
      SolutionFile sol;
      sol.x_entries = {{1, 1, 1, -t}, {1, 2, 2, t}};
      return *dimacs_errors(inst, sol).err2;
    };
    const double base = scaled(1.0);
    for (const double t : {0.0, 2.0, 10.0}) {
      CHECK(std::fabs(scaled(t) - t * base) <= 1e-9 * (1.0 + t));
    }
  }

  TEST_CASE("an exact optimal pair scores zero on all six measures") {
    // min x s.t. x = 1: X = 1, y = 1, S = C - y A = 0.
    const DimacsErrors one =
        dimacs_errors(scalar_instance(1.0, 1.0, 1.0), scalar_solution(1.0, 1.0, 0.0));
    for (const auto& v : {one.err1, one.err2, one.err3, one.err4, one.err5, one.err6}) {
      REQUIRE(v.has_value());
      CHECK(std::fabs(*v) <= 1e-12);
    }

    // min 2 tr(X) s.t. tr(X) = 2 over a dense 2x2 block: y = 2, S = 0.
    const SdpInstance inst = parse_instance_text(
        "1\n1\n2\n2.0\n"
        "0 1 1 1 2\n0 1 2 2 2\n"
        "1 1 1 1 1\n1 1 2 2 1\n");
    SolutionFile sol;
    sol.x_entries = {{1, 1, 1, 1.0}, {1, 2, 2, 1.0}};
    sol.y = std::vector<double>{2.0};
    sol.s_entries.emplace();
    const DimacsErrors two = dimacs_errors(inst, sol);
    for (const auto& v : {two.err1, two.err2, two.err3, two.err4, two.err5, two.err6}) {
      REQUIRE(v.has_value());
      CHECK(std::fabs(*v) <= 1e-12);
    }
  }

  TEST_CASE("duality gap and dual residual on a suboptimal pair") {
    // min 3x s.t. x = 1 with X = 1, y = 1, S = 0: gap (3 - 1) over
    // (1 + 3 + 1), dual residual |1 + 0 - 3| over (1 + 3).
    const DimacsErrors e =
        dimacs_errors(scalar_instance(3.0, 1.0, 1.0), scalar_solution(1.0, 1.0, 0.0));
    CHECK(*e.err5 == 0.4);
    CHECK(*e.err3 == 0.5);
    CHECK(*e.err6 == 0.0);
    CHECK(*e.err1 == 0.0);
  }

  TEST_CASE("err6 uses a zero dual objective when y is absent") {
    const DimacsErrors e =
        dimacs_errors(scalar_instance(1.0, 1.0, 1.0), scalar_solution(1.0, std::nullopt, 1.0));
    REQUIRE(e.err6.has_value());
    CHECK(*e.err6 == 0.5);  // X.S = 1 over 1 + |C.X| + 0
    CHECK_FALSE(e.err3.has_value());
    CHECK_FALSE(e.err5.has_value());
    REQUIRE(e.err4.has_value());
    CHECK(*e.err4 == 0.0);
  }

  TEST_CASE("err4 measures the dual slack definiteness") {
    const DimacsErrors e =
        dimacs_errors(scalar_instance(0.0, 1.0, 0.0), scalar_solution(0.0, 0.0, -2.0));
    REQUIRE(e.err4.has_value());
    CHECK(std::fabs(*e.err4 - 2.0) <= 1e-9);
    REQUIRE(e.err3.has_value());
    CHECK(std::fabs(*e.err3 - 2.0) <= 1e-12);
  }

  TEST_CASE("measures needing y or S are absent without them") {
    const SdpInstance inst = scalar_instance(1.0, 1.0, 1.0);

    const DimacsErrors x_only = dimacs_errors(inst, scalar_solution(1.0, std::nullopt, std::nullopt));
    CHECK(x_only.err1.has_value());
    CHECK(x_only.err2.has_value());
    CHECK_FALSE(x_only.err3.has_value());
    CHECK_FALSE(x_only.err4.has_value());
    CHECK_FALSE(x_only.err5.has_value());
    CHECK_FALSE(x_only.err6.has_value());

    const DimacsErrors no_s = dimacs_errors(inst, scalar_solution(1.0, 1.0, std::nullopt));
    CHECK(no_s.err5.has_value());
    CHECK_FALSE(no_s.err3.has_value());
    CHECK_FALSE(no_s.err4.has_value());
    CHECK_FALSE(no_s.err6.has_value());

    const DimacsErrors no_y = dimacs_errors(inst, scalar_solution(1.0, std::nullopt, 0.0));
    CHECK(no_y.err4.has_value());
    CHECK(no_y.err6.has_value());
    CHECK_FALSE(no_y.err3.has_value());
    CHECK_FALSE(no_y.err5.has_value());
  }

  TEST_CASE("worst_error takes the plain maximum of the defined measures") {
    DimacsErrors e;
    e.err1 = 1e-9;
    e.err2 = 0.0;
    e.err5 = -0.3;
    e.err6 = 2e-7;
    CHECK(worst_error(e) == 2e-7);

    DimacsErrors gap_only;
    gap_only.err5 = -0.2;
    CHECK(worst_error(gap_only) == -0.2);

    CHECK_THROWS_AS((void)worst_error(DimacsErrors{}), NotApplicableError);
  }

  TEST_CASE("dimacs_errors validates the solution against the instance") {
    const SdpInstance inst = scalar_instance(1.0, 1.0, 1.0);
    SolutionFile bad_y;
    bad_y.y = std::vector<double>{1.0, 2.0};
    CHECK_THROWS_AS((void)dimacs_errors(inst, bad_y), std::invalid_argument);

    SolutionFile bad_x;
    bad_x.x_entries = {{1, 2, 2, 1.0}};
    CHECK_THROWS_AS((void)dimacs_errors(inst, bad_x), std::invalid_argument);
  }

  TEST_CASE("all six measures are invariant under block permutations") {
    SplitMix64 rng(808);
    for (const std::uint64_t seed : {61u, 62u, 63u}) {
      const SdpInstance inst = gen_strictly_feasible(seed, 5, 3).instance;
      SolutionFile sol;
      sol.y = std::vector<double>{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
      sol.s_entries.emplace();
      for (int i = 1; i <= 5; ++i) {
        for (int j = i; j <= 5; ++j) {
          sol.x_entries.push_back({1, i, j, rng.uniform(-1.0, 1.0)});
          sol.s_entries->push_back({1, i, j, rng.uniform(-1.0, 1.0)});
        }
      }
      const auto perms = random_permutations(inst.structure, rng);
      const SdpInstance moved = permute_within_blocks(inst, perms);
      const SolutionFile moved_sol = permute_solution(sol, inst.structure, perms);

      const DimacsErrors before = dimacs_errors(inst, sol);
      const DimacsErrors after = dimacs_errors(moved, moved_sol);
      auto close = [](const std::optional<double>& a, const std::optional<double>& b) {
        REQUIRE(a.has_value() == b.has_value());
        if (a) CHECK(std::fabs(*a - *b) <= 1e-9 * (1.0 + std::fabs(*a)));
      };
      close(before.err1, after.err1);
      close(before.err2, after.err2);
      close(before.err3, after.err3);
      close(before.err4, after.err4);
      close(before.err5, after.err5);
      close(before.err6, after.err6);
    }
  }

  TEST_CASE("helped fires on detected infeasibility first") {
    const HelpedResult r = helped(1e-3, 1e-9, true);
    CHECK(r.helped);
    CHECK(r.reason == HelpedReason::InfeasibilityDetected);
    // Even when the errors also improved tenfold.
    CHECK(helped(1.0, 1e-9, true, 0.0, 5.0).reason == HelpedReason::InfeasibilityDetected);
  }

  TEST_CASE("helped detects a tenfold error improvement above the floor") {
    const HelpedResult r = helped(1e-4, 1e-6, false);
    CHECK(r.helped);
    CHECK(r.reason == HelpedReason::ErrorImproved);

    // Already-tiny errors do not count, however sharp the improvement.
    CHECK_FALSE(helped(1e-8, 1e-9, false).helped);
    // The floor and the ratio are strict. The boundary pair uses 1.0 and
    // 0.1 so the computed ratio is bitwise equal to the threshold.
    CHECK_FALSE(helped(1e-6, 1e-12, false).helped);
    CHECK_FALSE(helped(1.0, 0.1, false).helped);
    CHECK(helped(1.0, 0.0999, false).helped);
    CHECK(helped(1.0000001e-5, 1e-6, false).helped);
    // An error-improvement wins over an objective change.
    CHECK(helped(1e-4, 1e-6, false, 0.0, 1.0).reason == HelpedReason::ErrorImproved);
  }

  TEST_CASE("helped falls back to an objective shift of at least 1e-6") {
    const HelpedResult r = helped(1e-9, 1e-9, false, 5.0, 5.0 + 2e-6);
    CHECK(r.helped);
    CHECK(r.reason == HelpedReason::ObjectiveChanged);
    CHECK_FALSE(helped(1e-9, 1e-9, false, 5.0, 5.0 + 5e-7).helped);
    CHECK_FALSE(helped(1e-9, 1e-9, false).helped);
    // Both objective values must be present.
    CHECK_FALSE(helped(1e-9, 1e-9, false, 5.0, std::nullopt).helped);
  }

  TEST_CASE("ratio_as_printed inverts the improvement fraction") {
    // The printed formula divides before by after, so a twentyfold
    // worsening passes and a hundredfold improvement does not.
    CHECK(helped(1e-5, 2e-4, false, std::nullopt, std::nullopt, true).helped);
    CHECK_FALSE(helped(1e-4, 1e-6, false, std::nullopt, std::nullopt, true).helped);
    // Under the corrected reading the same inputs flip.
    CHECK_FALSE(helped(1e-5, 2e-4, false).helped);
    CHECK(helped(1e-4, 1e-6, false).helped);
  }

  TEST_CASE("helped reasons have stable names") {
    CHECK(std::string(helped_reason_name(HelpedReason::None)) == "none");
    CHECK(std::string(helped_reason_name(HelpedReason::InfeasibilityDetected)) ==
          "infeasibility-detected");
    CHECK(std::string(helped_reason_name(HelpedReason::ErrorImproved)) == "error-improved");
    CHECK(std::string(helped_reason_name(HelpedReason::ObjectiveChanged)) == "objective-changed");
  }
}
