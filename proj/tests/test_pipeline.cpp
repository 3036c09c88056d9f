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

// End-to-end runs of the command-line tool, spawned as a child process.

#include <string>

#include "doctest.h"
#include "json.hpp"
#include "oracles.hpp"
#include "sdpresolve/io_sdpa.hpp"

using namespace sdpresolve;
using oracles::CliResult;
using oracles::read_text;
using oracles::run_cli;
using oracles::TempDir;
using oracles::write_text;

namespace {

const std::string kBin = SDPRESOLVE_CLI_PATH;

const char kTinyInfeasible[] =
    "2\n1\n3\n0.0 -1.0\n"
    "1 1 1 1 1.0\n"
    "2 1 1 3 1.0\n"
    "2 1 2 2 1.0\n";

}  // namespace

TEST_SUITE("pipeline") {
  TEST_CASE("generate, reduce, verify, and re-reduce a reducible instance") {
    TempDir dir("pipe_roundtrip");
    const std::string in = dir.file("a.dat-s");
    const std::string out = dir.file("a.reduced.dat-s");
    const std::string cert = dir.file("a.cert.json");
    const std::string report = dir.file("a.report.json");

    CliResult gen = run_cli(kBin + " gen --seed 3 --preset reducible --k 2 --out " + in);
    CAPTURE(gen.output);
    REQUIRE(gen.exit_code == 0);

    const CliResult red = run_cli(kBin + " reduce --in " + in + " --out " + out + " --cert " +
                                  cert + " --report " + report);
    CAPTURE(red.output);
    REQUIRE(red.exit_code == 0);
    CHECK(red.output.find("reduced") != std::string::npos);

    const CliResult ver = run_cli(kBin + " verify --in " + in + " --cert " + cert);
    CAPTURE(ver.output);
    CHECK(ver.exit_code == 0);

    // The reduced instance parses, is smaller, and reduces no further.
    const SdpInstance reduced = parse_instance_text(read_text(out));
    CHECK(reduced.n() == 6);
    CHECK(reduced.m() == 4);
    const CliResult again = run_cli(kBin + " reduce --in " + out);
    CHECK(again.exit_code == 0);
    CHECK(again.output.find("unchanged") != std::string::npos);

    // The report carries the run's shape.
    const nlohmann::json j = nlohmann::json::parse(read_text(report));
    CHECK(j.at("format") == "sdpresolve-report");
    CHECK(j.at("schema_version") == 1);
    CHECK(j.at("verdict") == "reduced");
    CHECK(j.at("original").at("n") == 10);
    CHECK(j.at("original").at("m") == 6);
    CHECK(j.at("final").at("n") == 6);
    CHECK(j.at("final").at("m") == 4);
    CHECK(j.at("steps").size() == 2);
    CHECK(j.at("wall_time_ms").is_number());
  }

  TEST_CASE("infeasible instances exit with code 2 and a verifiable certificate") {
    TempDir dir("pipe_infeasible");
    const std::string in = dir.file("bad.dat-s");
    const std::string cert = dir.file("bad.cert.json");
    write_text(in, kTinyInfeasible);

    const CliResult red = run_cli(kBin + " reduce --in " + in + " --cert " + cert);
    CAPTURE(red.output);
    CHECK(red.exit_code == 2);
    CHECK(red.output.find("infeasible") != std::string::npos);

    CHECK(run_cli(kBin + " verify --in " + in + " --cert " + cert).exit_code == 0);

    // No reduced output is written for infeasible runs.
    const std::string out = dir.file("bad.reduced.dat-s");
    (void)run_cli(kBin + " reduce --in " + in + " --out " + out);
    CHECK_FALSE(std::filesystem::exists(out));
  }

  TEST_CASE("verification failures and broken certificates use distinct exit codes") {
    TempDir dir("pipe_verify");
    const std::string in = dir.file("a.dat-s");
    const std::string cert = dir.file("a.cert.json");
    write_text(in, kTinyInfeasible);
    REQUIRE(run_cli(kBin + " reduce --in " + in + " --cert " + cert).exit_code == 2);

    // Flipping the recorded signs breaks the replay: exit 3.
    std::string tampered = read_text(cert);
    std::string flipped;
    size_t pos = 0;
    while (true) {
      const size_t hit = tampered.find("\"sign\": 1", pos);
      if (hit == std::string::npos) {
        flipped += tampered.substr(pos);
        break;
      }
      flipped += tampered.substr(pos, hit - pos) + "\"sign\": -1";
      pos = hit + 9;
    }
    const std::string bad = dir.file("bad.cert.json");
    write_text(bad, flipped);
    const CliResult ver = run_cli(kBin + " verify --in " + in + " --cert " + bad);
    CAPTURE(ver.output);
    CHECK(ver.exit_code == 3);

    // A certificate that is not valid JSON is an input error: exit 1.
    const std::string broken = dir.file("broken.cert.json");
    write_text(broken, read_text(cert).substr(0, 40));
    CHECK(run_cli(kBin + " verify --in " + in + " --cert " + broken).exit_code == 1);
  }

  TEST_CASE("lift maps a reduced solution back to the original coordinates") {
    TempDir dir("pipe_lift");
    const std::string in = dir.file("a.dat-s");
    const std::string out = dir.file("a.reduced.dat-s");
    const std::string cert = dir.file("a.cert.json");
    REQUIRE(run_cli(kBin + " gen --seed 5 --preset reducible --k 1 --out " + in).exit_code == 0);
    REQUIRE(run_cli(kBin + " reduce --in " + in + " --out " + out + " --cert " + cert).exit_code ==
            0);

    const std::string sol = dir.file("a.sol");
    write_text(sol, "X 1 1 1 1.5\nX 1 2 3 0.25\n");
    const std::string lifted = dir.file("a.lifted.sol");
    const CliResult lift =
        run_cli(kBin + " lift --cert " + cert + " --sol " + sol + " --out " + lifted);
    CAPTURE(lift.output);
    REQUIRE(lift.exit_code == 0);

    const SdpInstance original = parse_instance_text(read_text(in));
    const SolutionFile lifted_sol =
        parse_solution_text(read_text(lifted), original.structure, original.m());
    CHECK(lifted_sol.x_entries.size() == 2);

    // Solutions cannot be lifted through an infeasibility certificate.
    const std::string bad_in = dir.file("bad.dat-s");
    const std::string bad_cert = dir.file("bad.cert.json");
    write_text(bad_in, kTinyInfeasible);
    REQUIRE(run_cli(kBin + " reduce --in " + bad_in + " --cert " + bad_cert).exit_code == 2);
    CHECK(run_cli(kBin + " lift --cert " + bad_cert + " --sol " + sol + " --out " +
                  dir.file("x.sol"))
              .exit_code == 1);
  }

  TEST_CASE("metrics prints the six measures and the helped line") {
    TempDir dir("pipe_metrics");
    const std::string in = dir.file("f.dat-s");
    REQUIRE(run_cli(kBin + " gen --seed 4 --preset feasible --base-n 3 --base-m 2 --out " + in)
                .exit_code == 0);
    const std::string sol = dir.file("f.sol");
    write_text(sol, "X 1 1 1 1.0\nX 1 2 2 1.0\nX 1 3 3 1.0\n");

    const CliResult m = run_cli(kBin + " metrics --in " + in + " --sol " + sol);
    CAPTURE(m.output);
    REQUIRE(m.exit_code == 0);
    CHECK(m.output.find("err1 = ") != std::string::npos);
    CHECK(m.output.find("err3 = n/a") != std::string::npos);
    CHECK(m.output.find("worst = ") != std::string::npos);
    CHECK(m.output.find("helped") == std::string::npos);

    const CliResult helped =
        run_cli(kBin + " metrics --in " + in + " --sol " + sol + " --peer-err 1.0");
    CAPTURE(helped.output);
    REQUIRE(helped.exit_code == 0);
    CHECK(helped.output.find("helped") != std::string::npos);

    const CliResult flagged = run_cli(kBin + " metrics --in " + in + " --sol " + sol +
                                      " --peer-err 1e-9 --infeasibility-detected");
    CAPTURE(flagged.output);
    CHECK(flagged.output.find("infeasibility-detected") != std::string::npos);
  }

  TEST_CASE("batch mode reduces a directory concurrently") {
    TempDir dir("pipe_batch");
    const std::string out_dir = (dir.path / "out").string();
    for (const int seed : {1, 2, 3}) {
      REQUIRE(run_cli(kBin + " gen --seed " + std::to_string(seed) +
                      " --preset reducible --k 2 --out " + dir.file("g" + std::to_string(seed) +
                      ".dat-s"))
                  .exit_code == 0);
    }
    write_text(dir.file("bad.dat-s"), kTinyInfeasible);
    write_text(dir.file("ignored.txt"), "not an instance\n");

    const CliResult batch = run_cli(kBin + " reduce --in-dir " + dir.path.string() +
                                    " --out-dir " + out_dir + " --jobs 2");
    CAPTURE(batch.output);
    // Infeasibility is a result, not an error; the batch succeeds.
    REQUIRE(batch.exit_code == 0);
    for (const int seed : {1, 2, 3}) {
      const std::string stem = "g" + std::to_string(seed);
      CHECK(std::filesystem::exists(out_dir + "/" + stem + ".reduced.dat-s"));
      CHECK(std::filesystem::exists(out_dir + "/" + stem + ".cert.json"));
      CHECK(std::filesystem::exists(out_dir + "/" + stem + ".report.json"));
    }
    CHECK(std::filesystem::exists(out_dir + "/bad.cert.json"));
    CHECK_FALSE(std::filesystem::exists(out_dir + "/bad.reduced.dat-s"));
    CHECK_FALSE(std::filesystem::exists(out_dir + "/ignored.reduced.dat-s"));
    CHECK(batch.output.find("bad.dat-s: infeasible") != std::string::npos);
  }

  TEST_CASE("parse errors carry the file name and line number") {
    TempDir dir("pipe_badparse");
    const std::string in = dir.file("broken.dat-s");
    write_text(in, "1\n1\n2\n0.0\n1 1 1 1\n");
    const CliResult r = run_cli(kBin + " reduce --in " + in);
    CHECK(r.exit_code == 1);
    CHECK(r.output.find("broken.dat-s:5:") != std::string::npos);

    CHECK(run_cli(kBin + " reduce --in " + dir.file("missing.dat-s")).exit_code == 1);
  }

  TEST_CASE("tolerance flags change the verdict on band cases") {
    TempDir dir("pipe_tol");
    const std::string in = dir.file("band.dat-s");
    // x11 = 5e-10: noise under the default band, meaningful under --strict.
    write_text(in, "1\n1\n2\n5e-10\n1 1 1 1 1.0\n");

    const CliResult loose = run_cli(kBin + " reduce --in " + in);
    CHECK(loose.exit_code == 0);
    CHECK(loose.output.find("reduced") != std::string::npos);

    const CliResult strict = run_cli(kBin + " reduce --in " + in + " --strict");
    CHECK(strict.exit_code == 0);
    CHECK(strict.output.find("unchanged") != std::string::npos);

    // Explicit tolerances override the strict baseline.
    const CliResult mixed = run_cli(kBin + " reduce --in " + in + " --strict --eps-rhs 1e-9");
    CHECK(mixed.output.find("reduced") != std::string::npos);
  }

  TEST_CASE("generation is reproducible byte for byte") {
    TempDir dir("pipe_gendet");
    const std::string a = dir.file("a.dat-s");
    const std::string b = dir.file("b.dat-s");
    REQUIRE(run_cli(kBin + " gen --seed 11 --out " + a).exit_code == 0);
    REQUIRE(run_cli(kBin + " gen --seed 11 --out " + b).exit_code == 0);
    CHECK(read_text(a) == read_text(b));
    CHECK_FALSE(read_text(a).empty());

    const nlohmann::json j = nlohmann::json::parse(read_text(a + ".plant.json"));
    CHECK(j.at("format") == "sdpresolve-plant");
    CHECK(j.at("deleted_index_count") == 6);
    CHECK(j.at("infeasible") == false);
  }

  TEST_CASE("usage errors exit with code 1 and help with 0") {
    CHECK(run_cli(kBin).exit_code == 1);
    CHECK(run_cli(kBin + " frobnicate").exit_code == 1);
    CHECK(run_cli(kBin + " reduce").exit_code == 1);
    CHECK(run_cli(kBin + " reduce --no-such-flag").exit_code == 1);
    CHECK(run_cli(kBin + " gen --seed 1 --preset bogus --out /tmp/x.dat-s").exit_code == 1);
    CHECK(run_cli(kBin + " --help").exit_code == 0);
    CHECK(run_cli(kBin + " reduce --help").exit_code == 0);
  }
}
