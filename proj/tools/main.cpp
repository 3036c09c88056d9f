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

// Command-line front end. Exit codes: 0 success (reduce: Reduced or
// Unchanged), 1 usage/IO/parse error, 2 infeasibility detected by reduce,
// 3 certificate verification failure.

#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "sdpresolve/gen.hpp"
#include "sdpresolve/io_sdpa.hpp"
#include "sdpresolve/lift.hpp"
#include "sdpresolve/metrics.hpp"
#include "sdpresolve/reduce.hpp"

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;
using namespace sdpresolve;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error(path + ": cannot open for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path + ": cannot open for writing");
  out << content;
  if (!out) throw std::runtime_error(path + ": write failed");
}

SdpInstance load_instance(const std::string& path) {
  try {
    return parse_instance_text(read_file(path));
  } catch (const SdpaError& e) {
    throw std::runtime_error(path + ":" + std::to_string(e.line()) + ": " + e.what());
  }
}

const char* verdict_word(VerdictKind kind) {
  switch (kind) {
    case VerdictKind::Unchanged:
      return "unchanged";
    case VerdictKind::Reduced:
      return "reduced";
    case VerdictKind::Infeasible:
      return "infeasible";
  }
  return "unchanged";
}

struct ReduceOptions {
  std::string in;
  std::string in_dir;
  std::string out;
  std::string out_dir;
  std::string cert;
  std::string report;
  double eps_rhs = Tolerances{}.eps_rhs;
  double eps_support = Tolerances{}.eps_support;
  double eps_pivot = Tolerances{}.eps_pivot;
  bool strict = false;
  bool eps_rhs_set = false;
  bool eps_support_set = false;
  bool eps_pivot_set = false;
  int jobs = 0;
};

Tolerances reduce_tolerances(const ReduceOptions& o) {
  Tolerances tol = o.strict ? Tolerances::strict() : Tolerances{};
  if (o.eps_rhs_set) tol.eps_rhs = o.eps_rhs;
  if (o.eps_support_set) tol.eps_support = o.eps_support;
  if (o.eps_pivot_set) tol.eps_pivot = o.eps_pivot;
  return tol;
}

json report_json(const std::string& in_path, const SdpInstance& inst, const Verdict& v,
                 double wall_ms, const Tolerances& tol, const std::string& out_path,
                 const std::string& cert_path) {
  const ReductionCertificate& cert = v.certificate;
  json j;
  j["format"] = "sdpresolve-report";
  j["schema_version"] = 1;
  j["input"] = in_path;
  j["label"] = inst.label;
  j["verdict"] = verdict_word(v.kind);
  j["original"] = {{"n", cert.original_n},
                   {"m", cert.original_m},
                   {"block_sizes", cert.original_blocks.sizes()}};
  j["final"] = {{"n", static_cast<int>(cert.kept_indices.size())},
                {"m", static_cast<int>(cert.kept_constraints.size())}};
  j["deleted_indices"] = cert.deleted_index_count();
  j["deleted_constraints"] = cert.original_m - static_cast<int>(cert.kept_constraints.size());
  json steps = json::array();
  for (const BasicStepRecord& st : cert.steps) {
    steps.push_back({{"constraint_id", st.constraint_id},
                     {"sign", st.sign},
                     {"action", st.action == StepAction::DeleteConstraint ? "delete" : "infeasible"},
                     {"rhs_at_step", st.rhs_at_step},
                     {"support_size", st.support.size()}});
  }
  j["steps"] = std::move(steps);
  j["tolerances"] = {{"eps_support", tol.eps_support},
                     {"eps_rhs", tol.eps_rhs},
                     {"eps_pivot", tol.eps_pivot}};
  j["wall_time_ms"] = wall_ms;
  j["outputs"] = {{"reduced", out_path.empty() ? json(nullptr) : json(out_path)},
                  {"certificate", cert_path.empty() ? json(nullptr) : json(cert_path)}};
  return j;
}

struct FileOutcome {
  int exit_code = 0;
  std::string line;  // one status line per file
};

FileOutcome reduce_one(const std::string& in_path, const ReduceOptions& o,
                       const std::string& out_path, const std::string& cert_path,
                       const std::string& report_path) {
  FileOutcome r;
  try {
    const SdpInstance inst = load_instance(in_path);
    const Tolerances tol = reduce_tolerances(o);
    const auto t0 = std::chrono::steady_clock::now();
    const Verdict v = preprocess(inst, tol);
    const auto t1 = std::chrono::steady_clock::now();
    const double wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();

    if (!out_path.empty() && v.kind != VerdictKind::Infeasible) {
      write_file(out_path, write_instance(v.reduced ? *v.reduced : inst));
    }
    if (!cert_path.empty()) write_file(cert_path, certificate_to_json(v.certificate));
    if (!report_path.empty()) {
      write_file(report_path,
                 report_json(in_path, inst, v, wall_ms, tol, out_path, cert_path).dump(2) + "\n");
    }
    const ReductionCertificate& cert = v.certificate;
    std::ostringstream line;
    line << in_path << ": " << verdict_word(v.kind) << ", n " << cert.original_n << " -> "
         << cert.kept_indices.size() << ", m " << cert.original_m << " -> "
         << cert.kept_constraints.size() << ", steps " << cert.steps.size();
    r.line = line.str();
    r.exit_code = v.kind == VerdictKind::Infeasible ? 2 : 0;
  } catch (const std::exception& e) {
    r.line = std::string(in_path) + ": error: " + e.what();
    r.exit_code = 1;
  }
  return r;
}

int run_reduce(const ReduceOptions& o) {
  if (o.in.empty() == o.in_dir.empty()) {
    std::cerr << "reduce: exactly one of --in and --in-dir is required\n";
    return 1;
  }
  if (!o.in.empty()) {
    const FileOutcome r = reduce_one(o.in, o, o.out, o.cert, o.report);
    (r.exit_code == 1 ? std::cerr : std::cout) << r.line << "\n";
    return r.exit_code;
  }

  // Batch mode: every *.dat-s in --in-dir, processed independently and
  // possibly concurrently; derived output names land in --out-dir.
  std::vector<fs::path> files;
  try {
    for (const fs::directory_entry& e : fs::directory_iterator(o.in_dir)) {
      if (e.is_regular_file() && e.path().extension() == ".dat-s") files.push_back(e.path());
    }
  } catch (const fs::filesystem_error& e) {
    std::cerr << "reduce: " << e.what() << "\n";
    return 1;
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    std::cerr << "reduce: no .dat-s files in " << o.in_dir << "\n";
    return 1;
  }
  const fs::path out_dir = o.out_dir.empty() ? fs::path(o.in_dir) : fs::path(o.out_dir);
  std::error_code ec;
  fs::create_directories(out_dir, ec);

  std::vector<FileOutcome> outcomes(files.size());
  std::atomic<std::size_t> next{0};
  const unsigned hw = std::thread::hardware_concurrency();
  const std::size_t workers =
      std::min<std::size_t>(files.size(), o.jobs > 0 ? o.jobs : (hw ? hw : 2));
  auto work = [&] {
    for (std::size_t i = next.fetch_add(1); i < files.size(); i = next.fetch_add(1)) {
      const fs::path& in = files[i];
      const std::string stem = in.stem().string();
      outcomes[i] = reduce_one(in.string(), o, (out_dir / (stem + ".reduced.dat-s")).string(),
                               (out_dir / (stem + ".cert.json")).string(),
                               (out_dir / (stem + ".report.json")).string());
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();

  bool any_error = false;
  for (const FileOutcome& r : outcomes) {
    (r.exit_code == 1 ? std::cerr : std::cout) << r.line << "\n";
    any_error = any_error || r.exit_code == 1;
  }
  return any_error ? 1 : 0;
}

int run_verify(const std::string& in_path, const std::string& cert_path) {
  const SdpInstance inst = load_instance(in_path);
  const ReductionCertificate cert = certificate_from_json(read_file(cert_path));
  const VerifyResult res = verify_certificate(inst, cert, cert.tolerances);
  if (res.ok) {
    std::cout << cert_path << ": certificate verified against " << in_path << "\n";
    return 0;
  }
  for (const std::string& d : res.diagnostics) std::cerr << cert_path << ": " << d << "\n";
  return 3;
}

int run_lift(const std::string& cert_path, const std::string& sol_path,
             const std::string& out_path) {
  const ReductionCertificate cert = certificate_from_json(read_file(cert_path));
  if (cert.infeasible()) {
    std::cerr << cert_path << ": infeasibility certificate, nothing to lift\n";
    return 1;
  }
  const BlockStructure red = reduced_structure(cert);
  SolutionFile sol;
  try {
    sol = parse_solution_text(read_file(sol_path), red,
                              static_cast<int>(cert.kept_constraints.size()));
  } catch (const SdpaError& e) {
    throw std::runtime_error(sol_path + ":" + std::to_string(e.line()) + ": " + e.what());
  }
  write_file(out_path, write_solution(lift_solution_file(sol, cert)));
  std::cout << out_path << ": lifted " << sol.x_entries.size() << " X entries to "
            << cert.original_n << " original indices\n";
  return 0;
}

struct MetricsOptions {
  std::string in;
  std::string sol;
  std::optional<double> obj_before;
  std::optional<double> obj_after;
  std::optional<double> peer_err;
  bool infeasibility_detected = false;
  bool ratio_as_printed = false;
};

std::string measure_str(const std::optional<double>& v) {
  return v ? format_double(*v) : std::string("n/a");
}

int run_metrics(const MetricsOptions& o) {
  const SdpInstance inst = load_instance(o.in);
  SolutionFile sol;
  try {
    sol = parse_solution_text(read_file(o.sol), inst.structure, inst.m());
  } catch (const SdpaError& e) {
    throw std::runtime_error(o.sol + ":" + std::to_string(e.line()) + ": " + e.what());
  }
  const DimacsErrors e = dimacs_errors(inst, sol);
  std::cout << "err1 = " << measure_str(e.err1) << "\n";
  std::cout << "err2 = " << measure_str(e.err2) << "\n";
  std::cout << "err3 = " << measure_str(e.err3) << "\n";
  std::cout << "err4 = " << measure_str(e.err4) << "\n";
  std::cout << "err5 = " << measure_str(e.err5) << "\n";
  std::cout << "err6 = " << measure_str(e.err6) << "\n";
  const double worst = worst_error(e);
  std::cout << "worst = " << format_double(worst) << "\n";
  if (o.peer_err || o.infeasibility_detected) {
    // The computed worst error plays the "after" role; --peer-err carries
    // the error of the unpreprocessed counterpart.
    const double before = o.peer_err.value_or(0.0);
    const HelpedResult h = helped(before, worst, o.infeasibility_detected, o.obj_before,
                                  o.obj_after, o.ratio_as_printed);
    std::cout << "helped = " << (h.helped ? "yes" : "no")
              << " (reason: " << helped_reason_name(h.reason) << ")\n";
  }
  return 0;
}

struct GenOptions {
  std::uint64_t seed = 0;
  std::string preset = "reducible";
  int k = 3;
  int base_n = 6;
  int base_m = 4;
  int support_size = 2;
  double coupling_density = 0.25;
  double value_scale = 1.0;
  std::string out;
  std::string summary;
};

int run_gen(const GenOptions& o) {
  SdpInstance inst;
  PlantSummary summary;
  if (o.preset == "feasible") {
    FeasibleInstance f = gen_strictly_feasible(o.seed, o.base_n, o.base_m, o.value_scale);
    inst = std::move(f.instance);
  } else if (o.preset == "reducible" || o.preset == "infeasible" ||
             o.preset == "ill-conditioned") {
    GenParams p = o.preset == "ill-conditioned"
                      ? GenParams::ill_conditioned(o.seed, o.k, o.support_size)
                      : GenParams::basic(o.seed, o.k, o.support_size);
    p.base_n = o.base_n;
    p.base_m = o.base_m;
    p.coupling_density = o.coupling_density;
    p.value_scale = o.value_scale;
    p.plant_infeasible = o.preset == "infeasible";
    PlantedInstance g = gen_planted(p);
    inst = std::move(g.instance);
    summary = std::move(g.summary);
  } else {
    std::cerr << "gen: unknown preset '" << o.preset << "'\n";
    return 1;
  }
  write_file(o.out, write_instance(inst));
  json j;
  j["format"] = "sdpresolve-plant";
  j["schema_version"] = 1;
  j["preset"] = o.preset;
  j["seed"] = o.seed;
  j["deleted_index_count"] = summary.deleted_index_count;
  j["infeasible"] = summary.infeasible;
  j["planted_constraint_ids"] = summary.planted_constraint_ids;
  const std::string summary_path = o.summary.empty() ? o.out + ".plant.json" : o.summary;
  write_file(summary_path, j.dump(2) + "\n");
  std::cout << o.out << ": n = " << inst.n() << ", m = " << inst.m() << ", expected deletions = "
            << summary.deleted_index_count << (summary.infeasible ? ", infeasible" : "") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SDP presolver: detects and removes constraints that force zero rows and columns"};
  app.require_subcommand(1);

  ReduceOptions ro;
  CLI::App* reduce_cmd = app.add_subcommand("reduce", "reduce an instance and emit a certificate");
  reduce_cmd->add_option("--in", ro.in, "input .dat-s file");
  reduce_cmd->add_option("--in-dir", ro.in_dir, "directory of .dat-s files (batch mode)");
  reduce_cmd->add_option("--out", ro.out, "write the reduced instance here");
  reduce_cmd->add_option("--out-dir", ro.out_dir, "batch mode output directory");
  reduce_cmd->add_option("--cert", ro.cert, "write the reduction certificate (JSON)");
  reduce_cmd->add_option("--report", ro.report, "write a run report (JSON)");
  CLI::Option* opt_rhs = reduce_cmd->add_option("--eps-rhs", ro.eps_rhs, "right-hand-side zero tolerance");
  CLI::Option* opt_sup = reduce_cmd->add_option("--eps-support", ro.eps_support, "support entry tolerance");
  CLI::Option* opt_piv = reduce_cmd->add_option("--eps-pivot", ro.eps_pivot, "Cholesky pivot floor");
  reduce_cmd->add_flag("--strict", ro.strict, "all tolerances zero (exact comparisons)");
  reduce_cmd->add_option("--jobs", ro.jobs, "batch worker threads (default: hardware)");

  std::string verify_in, verify_cert;
  CLI::App* verify_cmd = app.add_subcommand("verify", "replay a certificate against the original");
  verify_cmd->add_option("--in", verify_in, "original .dat-s file")->required();
  verify_cmd->add_option("--cert", verify_cert, "certificate JSON")->required();

  std::string lift_cert, lift_sol, lift_out;
  CLI::App* lift_cmd = app.add_subcommand("lift", "embed a reduced solution in original coordinates");
  lift_cmd->add_option("--cert", lift_cert, "certificate JSON")->required();
  lift_cmd->add_option("--sol", lift_sol, "solution of the reduced instance")->required();
  lift_cmd->add_option("--out", lift_out, "lifted solution file")->required();

  MetricsOptions mo;
  CLI::App* metrics_cmd = app.add_subcommand("metrics", "DIMACS error measures of a candidate solution");
  metrics_cmd->add_option("--in", mo.in, "instance .dat-s file")->required();
  metrics_cmd->add_option("--sol", mo.sol, "candidate solution file")->required();
  metrics_cmd->add_option("--obj-before", mo.obj_before, "objective before preprocessing");
  metrics_cmd->add_option("--obj-after", mo.obj_after, "objective after preprocessing");
  metrics_cmd->add_option("--peer-err", mo.peer_err, "worst error of the unpreprocessed counterpart");
  metrics_cmd->add_flag("--infeasibility-detected", mo.infeasibility_detected,
                        "preprocessing proved infeasibility");
  metrics_cmd->add_flag("--ratio-as-printed", mo.ratio_as_printed,
                        "use the literal err_before/err_after < 1/10 reading");

  GenOptions go;
  CLI::App* gen_cmd = app.add_subcommand("gen", "generate test instances with planted reductions");
  gen_cmd->add_option("--seed", go.seed, "random seed")->required();
  gen_cmd->add_option("--preset", go.preset, "reducible|infeasible|feasible|ill-conditioned");
  gen_cmd->add_option("--k", go.k, "number of planted steps");
  gen_cmd->add_option("--base-n", go.base_n, "base dimension");
  gen_cmd->add_option("--base-m", go.base_m, "base constraint count");
  gen_cmd->add_option("--support-size", go.support_size, "indices per planted step");
  gen_cmd->add_option("--coupling-density", go.coupling_density, "cross coupling density in [0,1]");
  gen_cmd->add_option("--value-scale", go.value_scale, "magnitude scale of generated entries");
  gen_cmd->add_option("--out", go.out, "output .dat-s file")->required();
  gen_cmd->add_option("--summary", go.summary, "plant summary JSON (default: OUT.plant.json)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (reduce_cmd->parsed()) {
      ro.eps_rhs_set = opt_rhs->count() > 0;
      ro.eps_support_set = opt_sup->count() > 0;
      ro.eps_pivot_set = opt_piv->count() > 0;
      return run_reduce(ro);
    }
    if (verify_cmd->parsed()) return run_verify(verify_in, verify_cert);
    if (lift_cmd->parsed()) return run_lift(lift_cert, lift_sol, lift_out);
    if (metrics_cmd->parsed()) return run_metrics(mo);
    if (gen_cmd->parsed()) return run_gen(go);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
