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

#pragma once

#include <chrono>
#include <condition_variable>
#include <cstddef>
#include <deque>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "fiscalopt/io/population.hpp"
#include "fiscalopt/lp/problem.hpp"
#include "fiscalopt/report/documents.hpp"
#include "fiscalopt/tax/code.hpp"

namespace fiscalopt::service {

using report::Json;

/// An HTTP status and a JSON body. Errors carry {"error", "issues"}.
struct Response {
  int status = 200;
  Json body;
};

struct ServiceOptions {
  /// Solve workers; 0 uses the machine's hardware concurrency.
  unsigned workers = 0;
  std::size_t max_records = 50'000;
  /// Directory holding index.json and the scenario files. Empty: the
  /// scenarios compiled into the library.
  std::filesystem::path scenario_dir;
  lp::SolverOptions solver;
};

/// The JSON API without the transport. Every method is safe to call from
/// concurrent request threads.
///
/// Populations and codes are append-only and keyed by a hash of their
/// canonical form, so a re-upload is answered with 409 and the existing
/// id. Solves are queued FIFO to a fixed worker pool; a solve id is
/// pollable as soon as it is returned and its terminal state never
/// changes. Submitting the same population, code, spec and caps again
/// returns the existing solve.
class Service {
 public:
  explicit Service(ServiceOptions options = {});
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Body: population CSV or JSON, or {"generator": config, "code": id}.
  Response post_population(std::string_view body);
  /// Body: a tax-code document.
  Response post_code(std::string_view body);
  /// Body: {"population": id, "code": id, "spec": {...}} plus an optional
  /// ascending "caps" array for a frontier sweep.
  Response post_solve(std::string_view body);
  Response get_solve(std::string_view id) const;
  Response get_frontier(std::string_view id) const;
  Response get_scenarios() const;

  /// Blocks until the solve reaches a terminal state; false on timeout or
  /// an unknown id.
  bool wait(std::string_view id, std::chrono::milliseconds timeout) const;

  unsigned workers() const { return static_cast<unsigned>(pool_.size()); }

 private:
  struct Job;

  void run(Job& job);
  void work();

  ServiceOptions options_;

  mutable std::shared_mutex store_mutex_;
  std::map<std::string, std::shared_ptr<const io::Population>, std::less<>> populations_;
  std::map<std::string, std::shared_ptr<const tax::TaxCode>, std::less<>> codes_;
  std::map<std::string, std::shared_ptr<Job>, std::less<>> jobs_;
  std::map<std::string, std::string> job_by_key_;
  std::size_t job_counter_ = 0;

  std::mutex queue_mutex_;
  std::condition_variable queue_cv_;
  std::deque<std::shared_ptr<Job>> queue_;
  bool stopping_ = false;
  std::vector<std::thread> pool_;
};

/// 64-bit FNV-1a of `text` as 16 hex digits.
std::string content_hash(std::string_view text);

}  // namespace fiscalopt::service
