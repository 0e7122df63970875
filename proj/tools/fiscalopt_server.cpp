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

// fiscalopt_server: the JSON service over HTTP.

#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "fiscalopt/service/http.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Serve the fiscalopt JSON API"};
  std::string host = "127.0.0.1";
  int port = 8080;
  unsigned workers = 0;
  std::string scenarios;
  app.add_option("--host", host, "Address to bind");
  app.add_option("--port", port, "Port to bind")->check(CLI::Range(1, 65535));
  app.add_option("--workers", workers, "Solve workers (0: all cores)");
  app.add_option("--scenarios", scenarios, "Scenario fixture directory (default: built in)");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 64;
  }
  fiscalopt::service::ServiceOptions options;
  options.workers = workers;
  options.scenario_dir = scenarios;
  fiscalopt::service::Service service(options);
  std::cerr << "listening on " << host << ':' << port << " with " << service.workers() << " workers\n";
  if (!fiscalopt::service::serve(service, host, port)) {
    std::cerr << "error: cannot bind " << host << ':' << port << '\n';
    return 69;
  }
  return 0;
}
