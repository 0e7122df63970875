// Copyright 2026 The fiscalopt Authors
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

// fiscalopt: batch front end for recovering and reforming tax codes.
//
// Exit codes:
//   0  success (reform: optimal)
//   2  reform infeasible; the conflicting guarantees are printed
//   3  reform ended in another solver state (unbounded, limit reached)
//   64 malformed command line
//   65 invalid input document
//   66 file cannot be read or written
//   70 internal error
//
// FISCALOPT_LOG sets stderr verbosity: quiet, error, info (default), debug.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "fiscalopt/error.hpp"
#include "fiscalopt/io/atomic_file.hpp"
#include "fiscalopt/io/population.hpp"
#include "fiscalopt/io/synthetic.hpp"
#include "fiscalopt/lp/mps.hpp"
#include "fiscalopt/model/compile.hpp"
#include "fiscalopt/report/documents.hpp"
#include "fiscalopt/report/report.hpp"
#include "fiscalopt/scenarios/solve.hpp"

namespace fs = std::filesystem;
using namespace fiscalopt;

namespace {

constexpr int kOptimal = 0;
constexpr int kInfeasible = 2;
constexpr int kOtherStatus = 3;
constexpr int kUsage = 64;
constexpr int kDataError = 65;
constexpr int kFileError = 66;
constexpr int kInternal = 70;

enum class Level { Quiet, Error, Info, Debug };

Level log_level() {
  const char* v = std::getenv("FISCALOPT_LOG");
  if (!v) return Level::Info;
  const std::string s = v;
  if (s == "quiet") return Level::Quiet;
  if (s == "error") return Level::Error;
  if (s == "debug") return Level::Debug;
  return Level::Info;
}

void log(Level level, const std::string& message) {
  static const Level threshold = log_level();
  if (level == Level::Quiet || static_cast<int>(level) > static_cast<int>(threshold)) return;
  std::cerr << (level == Level::Error ? "error: " : level == Level::Debug ? "debug: " : "") << message << '\n';
}

struct Inputs {
  std::string code;
  std::string population;
  std::string generator;
  std::string spec;
};

void add_data_options(CLI::App* cmd, Inputs& in, bool spec) {
  cmd->add_option("--code", in.code, "Tax-code JSON document")->required();
  auto* pop = cmd->add_option("--population", in.population, "Population CSV or JSON");
  auto* gen = cmd->add_option("--generator", in.generator, "Synthetic generator config (seeded)");
  pop->excludes(gen);
  gen->excludes(pop);
  if (spec) cmd->add_option("--spec", in.spec, "Reform spec JSON document")->required();
}

tax::TaxCode load_code(const Inputs& in) { return report::parse_code(io::read_file(in.code)); }

io::Population load_population(const Inputs& in, const tax::TaxCode& code) {
  if (!in.population.empty()) return io::load_population(in.population);
  if (!in.generator.empty()) {
    return io::generate_population(io::parse_synthetic_config(io::read_file(in.generator)), &code);
  }
  throw ValidationError("one of --population or --generator is required");
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

void write_json(const fs::path& path, const report::Json& j) { io::write_file_atomic(path, j.dump(2) + "\n"); }

report::Json conflict_json(const scenarios::Outcome& o) {
  report::Json rows = report::Json::array();
  for (const auto& c : o.conflict) {
    report::Json r{{"row", c.row}, {"constraint", c.constraint}};
    if (!c.unit.empty()) r["unit"] = c.unit;
    rows.push_back(std::move(r));
  }
  return rows;
}

// Writes the report bundle of one solve into `dir` and returns the exit
// code its status maps to.
int write_bundle(const fs::path& dir, const io::Population& population, const scenarios::Outcome& o,
                 std::ostream& summary = std::cout) {
  fs::create_directories(dir);
  if (o.optimal()) {
    const auto r = report::build_report(*o.compiled, population, o.spec, o.solution);
    auto j = report::report_to_json(r);
    if (o.first_stage_optimum) j["first_stage_optimum"] = *o.first_stage_optimum;
    write_json(dir / "report.json", j);
    io::write_file_atomic(dir / "rates.csv", report::rates_csv(r));
    io::write_file_atomic(dir / "taxpayers.csv", report::taxpayers_csv(r));
    io::write_file_atomic(dir / "census.txt", report::census_table(r.census_after));
    write_json(dir / "reformed_code.json", report::code_to_json(o.reformed_code()));
    summary << "status: optimal\nobjective: " << fmt(o.solution.objective)
              << "\nrevenue_loss: " << fmt(r.revenue_loss) << '\n';
    for (const auto& a : r.audit) log(Level::Error, "audit: " + a);
    return kOptimal;
  }
  const std::string status = lp::to_string(o.solution.status);
  write_json(dir / "conflict.json", {{"status", status}, {"conflict", conflict_json(o)}});
  summary << "status: " << status << '\n';
  if (o.solution.status == lp::Status::Infeasible) {
    summary << "conflict:\n";
    for (const auto& c : o.conflict) {
      summary << "  " << c.constraint << "  " << c.row << (c.unit.empty() ? "" : "  (" + c.unit + ")") << '\n';
    }
    return kInfeasible;
  }
  return kOtherStatus;
}

int cmd_recover(const Inputs& in, const std::string& structure, const fs::path& out) {
  const auto code = load_code(in);
  const auto population = load_population(in, code);
  const auto spec = structure.empty() ? model::ReformSpec{} : report::parse_spec(io::read_file(structure));
  log(Level::Info, "recovering " + code.name() + " from " + std::to_string(population.size()) + " taxpayers");
  const auto r = scenarios::recover(code, population, spec);
  std::cout << "rank: " << r.rank << " of " << r.variables << '\n';
  if (r.rank_deficient) log(Level::Error, "rates are not identified by this population; the solution is one of many");
  return write_bundle(out, population, r.outcome);
}

int cmd_reform(const Inputs& in, const fs::path& out) {
  const auto code = load_code(in);
  const auto population = load_population(in, code);
  const auto spec = report::parse_spec(io::read_file(in.spec));
  log(Level::Info, "solving " + spec.name + " over " + std::to_string(population.size()) + " taxpayers");
  const auto o = scenarios::solve_reform(code, population, spec);
  log(Level::Debug, "iterations " + std::to_string(o.solution.stats.iterations) + ", nodes " +
                        std::to_string(o.solution.stats.nodes));
  return write_bundle(out, population, o);
}

int cmd_two_step(const Inputs& in, double slack, const fs::path& out) {
  const auto code = load_code(in);
  const auto population = load_population(in, code);
  const auto spec = report::parse_spec(io::read_file(in.spec));
  const auto t = scenarios::two_step_reform(code, population, spec, slack);
  std::cout << "stage 1\n";
  int rc = write_bundle(out / "stage1", population, t.first);
  if (rc != kOptimal) return rc;
  std::cout << "stage 2\n";
  rc = write_bundle(out / "stage2", population, t.second);
  std::ostringstream census;
  census << "Current system\n" << report::census_table(t.before) << "\nMinimal loss\n"
         << report::census_table(t.after_first);
  if (t.second.optimal()) census << "\nFewest rules\n" << report::census_table(t.after_second);
  io::write_file_atomic(out / "census.txt", census.str());
  std::cout << census.str();
  return rc;
}

int cmd_sweep(const Inputs& in, const std::vector<double>& caps, unsigned threads, const fs::path& out) {
  const auto code = load_code(in);
  const auto population = load_population(in, code);
  const auto spec = report::parse_spec(io::read_file(in.spec));
  const auto f = scenarios::sweep_frontier(code, population, spec, caps, {}, threads);
  fs::create_directories(out);
  std::ostringstream csv;
  csv << "cap,status,loss,active,income_dependent,conflict\n";
  report::Json rows = report::Json::array();
  std::cout << "cap      status       loss                active  inc.dep.\n";
  for (const auto& row : f.rows) {
    std::string conflict;
    for (const auto& c : row.conflict) conflict += (conflict.empty() ? "" : ";") + c;
    const bool ok = row.status == "optimal";
    csv << fmt(row.cap) << ',' << row.status << ',' << (ok ? fmt(row.loss) : "") << ',' << row.active << ','
        << row.income_dependent << ',' << conflict << '\n';
    report::Json j{{"cap", row.cap}, {"status", row.status}, {"active", row.active},
                   {"income_dependent", row.income_dependent}};
    j["loss"] = ok ? report::Json(row.loss) : report::Json();
    if (!row.conflict.empty()) j["conflict"] = row.conflict;
    rows.push_back(std::move(j));
    char line[160];
    std::snprintf(line, sizeof line, "%-8.4g %-12s %-19s %6d %9d\n", row.cap, row.status.c_str(),
                  ok ? fmt(row.loss).c_str() : "-", row.active, row.income_dependent);
    std::cout << line;
    if (row.outcome) {
      std::ostringstream ignored;
      write_bundle(out / ("cap_" + fmt(row.cap)), population, *row.outcome, ignored);
    }
  }
  io::write_file_atomic(out / "frontier.csv", csv.str());
  write_json(out / "frontier.json", {{"rows", rows}, {"monotone", f.monotone}});
  std::cout << "monotone: " << (f.monotone ? "yes" : "no") << '\n';
  return kOptimal;
}

int cmd_validate(const std::string& population_path, const std::string& code_path) {
  const auto population = io::load_population(population_path);
  std::optional<tax::TaxCode> code;
  if (!code_path.empty()) code = report::parse_code(io::read_file(code_path));
  const auto summary = report::population_summary(population, code ? &*code : nullptr);
  std::cout << summary.dump(2) << '\n';
  if (code && summary["current_tax_check"]["mismatches"].get<std::size_t>() > 0) {
    log(Level::Error, "current taxes disagree with the code for " +
                          std::to_string(summary["current_tax_check"]["mismatches"].get<std::size_t>()) +
                          " taxpayers");
    return kDataError;
  }
  return kOptimal;
}

int cmd_export_mps(const Inputs& in, const fs::path& out) {
  const auto code = load_code(in);
  const auto population = load_population(in, code);
  auto spec = report::parse_spec(io::read_file(in.spec));
  if (spec.objective.kind == model::ObjectiveKind::Lexicographic) {
    log(Level::Info, "lexicographic objective: exporting its first stage");
    spec = model::first_stage(spec);
  }
  const auto compiled = model::compile(code, population, spec);
  io::write_file_atomic(out, lp::export_mps(compiled.problem));
  log(Level::Info, "wrote " + std::to_string(compiled.problem.rows().size()) + " rows, " +
                       std::to_string(compiled.problem.columns().size()) + " columns");
  return kOptimal;
}

int cmd_generate(const std::string& config_path, std::uint64_t seed, const std::string& code_path,
                 const fs::path& out) {
  auto config = io::parse_synthetic_config(io::read_file(config_path));
  config.seed = seed;
  std::optional<tax::TaxCode> code;
  if (!code_path.empty()) code = report::parse_code(io::read_file(code_path));
  const auto population = io::generate_population(config, code ? &*code : nullptr);
  io::write_file_atomic(out, out.extension() == ".json" ? io::population_to_json(population)
                                                        : io::population_to_csv(population));
  log(Level::Info, "wrote " + std::to_string(population.size()) + " taxpayers");
  return kOptimal;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Recover and reform piecewise-linear tax codes"};
  app.require_subcommand(1);

  Inputs in;
  std::string out;
  std::string structure;
  double slack = 0.0;
  std::vector<double> caps;
  unsigned threads = 0;
  std::string population_path;
  std::string code_path;
  std::string config_path;
  std::uint64_t seed = 0;

  auto* recover = app.add_subcommand("recover", "Recover the current rates from current taxes");
  add_data_options(recover, in, false);
  recover->add_option("--structure", structure, "Spec whose structural settings apply");
  recover->add_option("--out", out, "Output directory")->required();

  auto* reform = app.add_subcommand("reform", "Compile, solve and report a reform");
  add_data_options(reform, in, true);
  reform->add_option("--out", out, "Output directory")->required();

  auto* two_step = app.add_subcommand("two-step", "Minimal loss, then fewest rules within a slack");
  add_data_options(two_step, in, true);
  two_step->add_option("--slack", slack, "Extra loss allowed in stage two")->required()->check(CLI::NonNegativeNumber);
  two_step->add_option("--out", out, "Output directory")->required();

  auto* sweep = app.add_subcommand("sweep", "Minimal loss against a marginal-pressure cap");
  add_data_options(sweep, in, true);
  sweep->add_option("--caps", caps, "Ascending caps")->required()->delimiter(',');
  sweep->add_option("--threads", threads, "Concurrent solves (0: all cores)");
  sweep->add_option("--out", out, "Output directory")->required();

  auto* validate = app.add_subcommand("validate", "Check a population document");
  validate->add_option("--population", population_path, "Population CSV or JSON")->required();
  validate->add_option("--code", code_path, "Also check current taxes against this code");

  auto* export_mps = app.add_subcommand("export-mps", "Write the compiled problem as MPS without solving");
  add_data_options(export_mps, in, true);
  export_mps->add_option("--out", out, "MPS file")->required();

  auto* generate = app.add_subcommand("generate", "Draw a synthetic population");
  generate->add_option("--config", config_path, "Generator config JSON")->required();
  generate->add_option("--seed", seed, "Random seed")->required();
  generate->add_option("--code", code_path, "Fill current taxes from this code");
  generate->add_option("--out", out, "Population file (.csv or .json)")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return kUsage;
  }

  try {
    if (*recover) return cmd_recover(in, structure, out);
    if (*reform) return cmd_reform(in, out);
    if (*two_step) return cmd_two_step(in, slack, out);
    if (*sweep) return cmd_sweep(in, caps, threads, out);
    if (*validate) return cmd_validate(population_path, code_path);
    if (*export_mps) return cmd_export_mps(in, out);
    if (*generate) return cmd_generate(config_path, seed, code_path, out);
  } catch (const ValidationError& e) {
    for (const auto& issue : e.issues()) log(Level::Error, issue);
    return kDataError;
  } catch (const IoError& e) {
    log(Level::Error, e.what());
    return kFileError;
  } catch (const fs::filesystem_error& e) {
    log(Level::Error, e.what());
    return kFileError;
  } catch (const CompileError& e) {
    log(Level::Error, e.what());
    return kDataError;
  } catch (const std::exception& e) {
    log(Level::Error, e.what());
    return kInternal;
  }
  return kUsage;
}
