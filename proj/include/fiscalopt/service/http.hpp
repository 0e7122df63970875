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

#include <string>

#include "fiscalopt/service/service.hpp"

namespace httplib {
class Server;
}

namespace fiscalopt::service {

/// Routes the service endpoints on `server`:
///   POST /populations, POST /codes, POST /solves,
///   GET /solves/{id}, GET /solves/{id}/frontier, GET /scenarios.
void register_routes(httplib::Server& server, Service& service);

/// Serves until the process is stopped. Returns false when the address
/// cannot be bound.
bool serve(Service& service, const std::string& host, int port);

}  // namespace fiscalopt::service
