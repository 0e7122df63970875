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

#include "fiscalopt/service/http.hpp"

#include "httplib.h"

namespace fiscalopt::service {

namespace {

void send(httplib::Response& res, const Response& r) {
  res.status = r.status;
  res.set_content(r.body.dump(), "application/json");
}

}  // namespace

void register_routes(httplib::Server& server, Service& service) {
  server.Post("/populations", [&](const httplib::Request& req, httplib::Response& res) {
    send(res, service.post_population(req.body));
  });
  server.Post("/codes", [&](const httplib::Request& req, httplib::Response& res) {
    send(res, service.post_code(req.body));
  });
  server.Post("/solves", [&](const httplib::Request& req, httplib::Response& res) {
    send(res, service.post_solve(req.body));
  });
  server.Get(R"(/solves/([^/]+)/frontier)", [&](const httplib::Request& req, httplib::Response& res) {
    send(res, service.get_frontier(req.matches[1].str()));
  });
  server.Get(R"(/solves/([^/]+))", [&](const httplib::Request& req, httplib::Response& res) {
    send(res, service.get_solve(req.matches[1].str()));
  });
  server.Get("/scenarios", [&](const httplib::Request&, httplib::Response& res) {
    send(res, service.get_scenarios());
  });
  server.set_error_handler([](const httplib::Request&, httplib::Response& res) {
    if (!res.body.empty()) return;
    res.set_content(Json{{"error", httplib::status_message(res.status)}, {"issues", Json::array()}}.dump(),
                    "application/json");
  });
}

bool serve(Service& service, const std::string& host, int port) {
  httplib::Server server;
  register_routes(server, service);
  return server.listen(host, port);
}

}  // namespace fiscalopt::service
