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

#include "fiscalopt/service/service.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "fiscalopt/error.hpp"
#include "fiscalopt/io/atomic_file.hpp"
#include "fiscalopt/io/synthetic.hpp"
#include "fiscalopt/model/compile.hpp"
#include "fiscalopt/report/report.hpp"
#include "fiscalopt/scenarios/examples.hpp"
#include "fiscalopt/scenarios/solve.hpp"

namespace fiscalopt::service {

namespace {

Response error(int status, const std::string& message, std::vector<std::string> issues = {}) {
  if (issues.empty()) issues.push_back(message);
  return {status, {{"error", message}, {"issues", issues}}};
}

Response invalid(const ValidationError& e, const std::string& prefix = {}) {
  std::vector<std::string> issues;
  for (const auto& issue : e.issues()) {
    issues.push_back(prefix.empty() || issue.starts_with('/') ? prefix + issue : prefix + ": " + issue);
  }
  return error(400, "schema violation", std::move(issues));
}

Json conflict_json(const scenarios::Outcome& o) {
  Json rows = Json::array();
  for (const auto& c : o.conflict) {
    Json r{{"row", c.row}, {"constraint", c.constraint}};
    if (!c.unit.empty()) r["unit"] = c.unit;
    rows.push_back(std::move(r));
  }
  return rows;
}

// JSON has no NaN; infeasible frontier rows get a null loss.
Json frontier_json(const scenarios::Frontier& f) {
  Json rows = Json::array();
  for (const auto& r : f.rows) {
    Json row{{"cap", r.cap},
             {"status", r.status},
             {"loss", std::isnan(r.loss) ? Json() : Json(r.loss)},
             {"active", r.active},
             {"income_dependent", r.income_dependent}};
    if (!r.conflict.empty()) row["conflict"] = r.conflict;
    rows.push_back(std::move(row));
  }
  return {{"rows", rows}, {"monotone", f.monotone}};
}

const char* status_name(lp::Status s) {
  switch (s) {
    case lp::Status::Optimal:
      return "optimal";
    case lp::Status::Infeasible:
      return "infeasible";
    default:
      return "error";
  }
}

}  // namespace

std::string content_hash(std::string_view text) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

struct Service::Job {
  std::string id;
  std::shared_ptr<const io::Population> population;
  std::shared_ptr<const tax::TaxCode> code;
  model::ReformSpec spec;
  std::vector<double> caps;
  bool sweep = false;

  mutable std::mutex mutex;
  mutable std::condition_variable done;
  std::string status = "queued";
  Json result;  // set once, with the terminal status
  Json frontier;

  bool terminal() const { return status != "queued" && status != "running"; }
};

Service::Service(ServiceOptions options) : options_(std::move(options)) {
  unsigned n = options_.workers ? options_.workers : std::max(1u, std::thread::hardware_concurrency());
  for (unsigned i = 0; i < n; ++i) pool_.emplace_back([this] { work(); });
}

Service::~Service() {
  {
    std::lock_guard lock(queue_mutex_);
    stopping_ = true;
  }
  queue_cv_.notify_all();
  for (auto& t : pool_) t.join();
}

void Service::work() {
  for (;;) {
    std::shared_ptr<Job> job;
    {
      std::unique_lock lock(queue_mutex_);
      queue_cv_.wait(lock, [&] { return stopping_ || !queue_.empty(); });
      if (stopping_) return;
      job = std::move(queue_.front());
      queue_.pop_front();
    }
    {
      std::lock_guard lock(job->mutex);
      job->status = "running";
    }
    run(*job);
    job->done.notify_all();
  }
}

void Service::run(Job& job) {
  std::string status;
  Json result;
  Json frontier;
  try {
    if (job.sweep) {
      // One worker per job: the pool already bounds parallelism.
      const auto f = scenarios::sweep_frontier(*job.code, *job.population, job.spec, job.caps, options_.solver, 1);
      frontier = frontier_json(f);
      const bool any = std::any_of(f.rows.begin(), f.rows.end(), [](const auto& r) { return r.status == "optimal"; });
      status = any ? "optimal" : "infeasible";
      result = {{"frontier", frontier}};
    } else {
      const auto o = scenarios::solve_reform(*job.code, *job.population, job.spec, options_.solver);
      status = status_name(o.solution.status);
      if (o.optimal()) {
        report::ReportOptions ro;
        ro.max_records = options_.max_records;
        result = report::report_to_json(report::build_report(*o.compiled, *job.population, o.spec, o.solution, ro));
        if (o.first_stage_optimum) result["first_stage_optimum"] = *o.first_stage_optimum;
        result["conflict"] = Json::array();
      } else {
        result = {{"name", job.spec.name},
                  {"solver_status", lp::to_string(o.solution.status)},
                  {"conflict", conflict_json(o)},
                  {"conflict_constraints", o.conflict_constraints()}};
      }
    }
  } catch (const std::exception& e) {
    status = "error";
    result = {{"error", e.what()}};
  }
  std::lock_guard lock(job.mutex);
  job.result = std::move(result);
  job.frontier = std::move(frontier);
  job.status = std::move(status);
}

Response Service::post_population(std::string_view body) {
  std::shared_ptr<const io::Population> population;
  try {
    const auto first = body.find_first_not_of(" \t\r\n");
    Json doc;
    if (first != std::string_view::npos && body[first] == '{') doc = report::parse_json(body, "population");
    if (doc.is_object() && doc.contains("generator")) {
      std::shared_ptr<const tax::TaxCode> code;
      if (doc.contains("code")) {
        if (!doc["code"].is_string()) return error(400, "schema violation", {"/code: required string"});
        std::shared_lock lock(store_mutex_);
        auto it = codes_.find(doc["code"].get<std::string>());
        if (it == codes_.end()) return error(404, "unknown code '" + doc["code"].get<std::string>() + "'");
        code = it->second;
      }
      try {
        const auto config = io::parse_synthetic_config(doc["generator"].dump());
        population = std::make_shared<const io::Population>(io::generate_population(config, code.get()));
      } catch (const ValidationError& e) {
        return invalid(e, "/generator");
      }
    } else {
      population = std::make_shared<const io::Population>(io::parse_population(body));
    }
  } catch (const ValidationError& e) {
    return invalid(e);
  } catch (const Error& e) {
    return error(400, e.what());
  }

  const std::string id = "pop-" + content_hash(io::population_to_json(*population));
  std::unique_lock lock(store_mutex_);
  if (populations_.count(id)) {
    Response r = error(409, "population already uploaded");
    r.body["id"] = id;
    return r;
  }
  populations_.emplace(id, population);
  lock.unlock();
  return {201, {{"id", id}, {"validation", report::population_summary(*population)}}};
}

Response Service::post_code(std::string_view body) {
  std::shared_ptr<const tax::TaxCode> code;
  try {
    code = std::make_shared<const tax::TaxCode>(report::parse_code(body));
  } catch (const ValidationError& e) {
    return invalid(e);
  } catch (const Error& e) {
    return error(400, e.what());
  }
  const std::string id = "code-" + content_hash(report::code_to_json(*code).dump());
  std::unique_lock lock(store_mutex_);
  if (codes_.count(id)) {
    Response r = error(409, "code already uploaded");
    r.body["id"] = id;
    return r;
  }
  codes_.emplace(id, code);
  return {201, {{"id", id}, {"name", code->name()}, {"rules", code->rules().size()}}};
}

Response Service::post_solve(std::string_view body) {
  Json doc;
  try {
    doc = report::parse_json(body, "solve request");
  } catch (const ValidationError& e) {
    return invalid(e);
  }
  if (!doc.is_object()) return error(400, "schema violation", {": expected an object"});
  std::vector<std::string> issues;
  for (const auto& [key, value] : doc.items()) {
    if (key != "population" && key != "code" && key != "spec" && key != "caps") {
      issues.push_back("/" + key + ": unknown field");
    }
  }
  for (const char* key : {"population", "code"}) {
    if (!doc.contains(key) || !doc[key].is_string()) issues.push_back(std::string("/") + key + ": required string");
  }
  if (!doc.contains("spec") || !doc["spec"].is_object()) issues.push_back("/spec: required object");
  std::vector<double> caps;
  const bool sweep = doc.contains("caps");
  if (sweep) {
    if (!doc["caps"].is_array() || doc["caps"].empty()) {
      issues.push_back("/caps: expected a non-empty array of numbers");
    } else {
      for (std::size_t i = 0; i < doc["caps"].size(); ++i) {
        const auto& c = doc["caps"][i];
        if (!c.is_number() || !std::isfinite(c.get<double>()) || c.get<double>() < 0.0) {
          issues.push_back("/caps/" + std::to_string(i) + ": expected a non-negative number");
        } else {
          caps.push_back(c.get<double>());
        }
      }
      if (issues.empty() && !std::is_sorted(caps.begin(), caps.end())) issues.push_back("/caps: must be ascending");
    }
  }
  model::ReformSpec spec;
  if (doc.contains("spec") && doc["spec"].is_object()) {
    try {
      spec = report::spec_from_json(doc["spec"]);
    } catch (const ValidationError& e) {
      const Response r = invalid(e, "/spec");
      for (const auto& issue : r.body.at("issues")) issues.push_back(issue.get<std::string>());
    }
  }
  if (!issues.empty()) return error(400, "schema violation", std::move(issues));

  auto job = std::make_shared<Job>();
  {
    std::shared_lock lock(store_mutex_);
    auto p = populations_.find(doc["population"].get<std::string>());
    if (p == populations_.end()) return error(404, "unknown population '" + doc["population"].get<std::string>() + "'");
    auto c = codes_.find(doc["code"].get<std::string>());
    if (c == codes_.end()) return error(404, "unknown code '" + doc["code"].get<std::string>() + "'");
    job->population = p->second;
    job->code = c->second;
  }

  // Compile errors are the caller's to fix, so they are reported now
  // rather than as a failed job.
  try {
    const bool staged = spec.objective.kind == model::ObjectiveKind::Lexicographic;
    model::compile(*job->code, *job->population, staged ? model::first_stage(spec) : spec);
  } catch (const CompileError& e) {
    return error(422, e.what());
  } catch (const Error& e) {
    return error(422, e.what());
  }

  Json canonical{{"population", doc["population"]},
                 {"code", doc["code"]},
                 {"spec", report::spec_to_json(spec)},
                 {"caps", caps},
                 {"sweep", sweep}};
  const std::string key = content_hash(canonical.dump());

  job->spec = std::move(spec);
  job->caps = std::move(caps);
  job->sweep = sweep;
  {
    std::unique_lock lock(store_mutex_);
    if (auto it = job_by_key_.find(key); it != job_by_key_.end()) {
      return {200, {{"id", it->second}, {"cached", true}}};
    }
    char id[32];
    std::snprintf(id, sizeof id, "solve-%06zu", ++job_counter_);
    job->id = id;
    jobs_.emplace(job->id, job);
    job_by_key_.emplace(key, job->id);
  }
  {
    std::lock_guard lock(queue_mutex_);
    queue_.push_back(job);
  }
  queue_cv_.notify_one();
  return {202, {{"id", job->id}, {"status", "queued"}, {"cached", false}}};
}

Response Service::get_solve(std::string_view id) const {
  std::shared_ptr<Job> job;
  {
    std::shared_lock lock(store_mutex_);
    auto it = jobs_.find(id);
    if (it == jobs_.end()) return error(404, "unknown solve '" + std::string(id) + "'");
    job = it->second;
  }
  std::lock_guard lock(job->mutex);
  Json body{{"id", job->id}, {"status", job->status}, {"kind", job->sweep ? "sweep" : "reform"}};
  if (job->terminal()) body["report"] = job->result;
  return {200, body};
}

Response Service::get_frontier(std::string_view id) const {
  std::shared_ptr<Job> job;
  {
    std::shared_lock lock(store_mutex_);
    auto it = jobs_.find(id);
    if (it == jobs_.end()) return error(404, "unknown solve '" + std::string(id) + "'");
    job = it->second;
  }
  if (!job->sweep) return error(404, "solve '" + std::string(id) + "' is not a sweep");
  std::lock_guard lock(job->mutex);
  Json body{{"id", job->id}, {"status", job->status}};
  if (job->terminal() && !job->frontier.is_null()) body["frontier"] = job->frontier;
  if (job->status == "error") body["error"] = job->result.value("error", "");
  return {200, body};
}

Response Service::get_scenarios() const {
  std::map<std::string, std::string> files;
  try {
    if (options_.scenario_dir.empty()) {
      for (auto& [path, content] : scenarios::scenario_fixtures()) files.emplace(path, content);
    } else {
      files.emplace("index.json", io::read_file(options_.scenario_dir / "index.json"));
    }
    const Json index = report::parse_json(files.at("index.json"), "scenario index");
    auto load = [&](const std::string& name) -> const std::string& {
      auto it = files.find(name);
      if (it == files.end()) it = files.emplace(name, io::read_file(options_.scenario_dir / name)).first;
      return it->second;
    };
    Json out = Json::array();
    for (const auto& entry : index) {
      Json s = entry;
      Json documents;
      documents["code"] = report::parse_json(load(entry.at("code")), "scenario code");
      documents["spec"] = report::parse_json(load(entry.at("spec")), "scenario spec");
      if (entry.contains("population")) documents["population"] = load(entry.at("population"));
      if (entry.contains("generator")) {
        documents["generator"] = report::parse_json(load(entry.at("generator")), "scenario generator");
      }
      s["documents"] = std::move(documents);
      out.push_back(std::move(s));
    }
    return {200, {{"scenarios", out}}};
  } catch (const std::exception& e) {
    return error(500, std::string("scenario fixtures unavailable: ") + e.what());
  }
}

bool Service::wait(std::string_view id, std::chrono::milliseconds timeout) const {
  std::shared_ptr<Job> job;
  {
    std::shared_lock lock(store_mutex_);
    auto it = jobs_.find(id);
    if (it == jobs_.end()) return false;
    job = it->second;
  }
  std::unique_lock lock(job->mutex);
  return job->done.wait_for(lock, timeout, [&] { return job->terminal(); });
}

}  // namespace fiscalopt::service
