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

#include "fiscalopt/io/population.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "fiscalopt/error.hpp"
#include "json.hpp"

namespace fiscalopt::io {

namespace {

const std::set<std::string> kReserved{"id", "household_id", "weight", "current_tax"};

bool parse_double(std::string_view s, double& out) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, end);
}

std::string trim(std::string s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

Population parse_csv(std::string_view text, const PopulationOptions& options) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::map<std::string, std::string> metadata;
  std::optional<std::set<std::string>> declared;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> cells;
  std::vector<int> line_of;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    if (line[0] == '#') {
      const auto colon = line.find(':');
      if (colon == std::string::npos) continue;
      const std::string key = trim(line.substr(1, colon - 1));
      const std::string value = trim(line.substr(colon + 1));
      if (key == "characteristics") {
        declared.emplace();
        for (auto& c : split_csv(value)) {
          if (!c.empty()) declared->insert(c);
        }
      } else {
        metadata[key] = value;
      }
      continue;
    }
    if (header.empty()) {
      header = split_csv(line);
      continue;
    }
    cells.push_back(split_csv(line));
    line_of.push_back(line_no);
  }
  if (header.empty() || cells.empty()) throw ValidationError("no rows");

  std::vector<std::string> issues;
  std::set<std::string> seen;
  for (const auto& h : header) {
    if (h.empty()) issues.push_back("header has an empty column name");
    if (!seen.insert(h).second) issues.push_back("header repeats column '" + h + "'");
  }
  if (!seen.count("id")) issues.push_back("header lacks the 'id' column");
  if (!seen.count("current_tax")) issues.push_back("header lacks the 'current_tax' column");
  if (!issues.empty()) throw ValidationError(std::move(issues));

  std::set<std::string> categorical;
  if (declared) {
    categorical = *declared;
    for (const auto& c : *declared) {
      if (!seen.count(c)) issues.push_back("declared characteristic '" + c + "' has no column");
    }
  } else {
    for (std::size_t k = 0; k < header.size(); ++k) {
      if (kReserved.count(header[k])) continue;
      for (const auto& row : cells) {
        double v;
        if (k < row.size() && !row[k].empty() && !parse_double(row[k], v)) {
          categorical.insert(header[k]);
          break;
        }
      }
    }
  }

  std::vector<Taxpayer> taxpayers;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    const auto& row = cells[r];
    const std::string where = "line " + std::to_string(line_of[r]);
    if (row.size() != header.size()) {
      issues.push_back(where + ": expected " + std::to_string(header.size()) + " fields, got " +
                       std::to_string(row.size()));
      continue;
    }
    Taxpayer t;
    bool has_weight = false;
    bool has_tax = false;
    for (std::size_t k = 0; k < header.size(); ++k) {
      const std::string& col = header[k];
      const std::string& cell = row[k];
      if (col == "id") {
        t.id = cell;
      } else if (col == "household_id") {
        t.household_id = cell;
      } else if (col == "weight" || col == "current_tax" || !categorical.count(col)) {
        if (cell.empty()) {
          if (col == "weight") continue;
          if (col == "current_tax") {
            issues.push_back(where + ", column current_tax: missing value");
          }
          continue;
        }
        double v;
        if (!parse_double(cell, v)) {
          issues.push_back(where + ", column " + col + ": '" + cell + "' is not a number");
          continue;
        }
        if (col == "weight") {
          t.weight = v;
          has_weight = true;
        } else if (col == "current_tax") {
          t.current_tax = v;
          has_tax = true;
        } else {
          t.inputs[col] = v;
        }
      } else if (!cell.empty()) {
        t.characteristics[col] = cell;
      }
    }
    (void)has_weight;
    (void)has_tax;
    taxpayers.push_back(std::move(t));
  }
  if (!issues.empty()) {
    // Report the record-level problems of the readable cells as well.
    try {
      Population(std::move(taxpayers), metadata, options);
    } catch (const ValidationError& e) {
      issues.insert(issues.end(), e.issues().begin(), e.issues().end());
    }
    throw ValidationError(std::move(issues));
  }
  return Population(std::move(taxpayers), std::move(metadata), options);
}

Population parse_json(std::string_view text, const PopulationOptions& options) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("population JSON: ") + e.what());
  }
  std::vector<std::string> issues;
  if (!doc.is_object() || !doc.contains("taxpayers") || !doc["taxpayers"].is_array()) {
    throw ValidationError("/taxpayers: required array");
  }
  if (doc["taxpayers"].empty()) throw ValidationError("no rows");
  std::vector<Taxpayer> taxpayers;
  std::size_t k = 0;
  for (const auto& item : doc["taxpayers"]) {
    const std::string path = "/taxpayers/" + std::to_string(k++);
    Taxpayer t;
    try {
      t.id = item.at("id").get<std::string>();
      t.household_id = item.value("household_id", "");
      t.weight = item.value("weight", 1.0);
      if (!item.contains("current_tax") || !item["current_tax"].is_number()) {
        issues.push_back(path + "/current_tax: required number");
        continue;
      }
      t.current_tax = item["current_tax"].get<double>();
      const nlohmann::json inputs = item.value("inputs", nlohmann::json::object());
      for (const auto& [name, v] : inputs.items()) {
        if (!v.is_number()) {
          issues.push_back(path + "/inputs/" + name + ": not a number");
          continue;
        }
        t.inputs[name] = v.get<double>();
      }
      const nlohmann::json characteristics = item.value("characteristics", nlohmann::json::object());
      for (const auto& [name, v] : characteristics.items()) {
        if (!v.is_string()) {
          issues.push_back(path + "/characteristics/" + name + ": not a string");
          continue;
        }
        t.characteristics[name] = v.get<std::string>();
      }
    } catch (const nlohmann::json::exception& e) {
      issues.push_back(path + ": " + e.what());
      continue;
    }
    taxpayers.push_back(std::move(t));
  }
  std::map<std::string, std::string> metadata;
  if (doc.contains("metadata")) {
    for (const auto& [key, v] : doc["metadata"].items()) {
      metadata[key] = v.is_string() ? v.get<std::string>() : v.dump();
    }
  }
  if (doc.contains("households")) {
    // Explicit households must agree with the members' household ids.
    std::map<std::string, std::string> member_of;
    for (const auto& t : taxpayers) member_of[t.id] = t.household_id;
    for (const auto& h : doc["households"]) {
      const std::string hid = h.value("id", "");
      for (const auto& m : h.value("members", nlohmann::json::array())) {
        const std::string mid = m.get<std::string>();
        auto it = member_of.find(mid);
        if (it == member_of.end()) {
          issues.push_back("household " + hid + " lists unknown member '" + mid + "'");
        } else if (it->second != hid) {
          issues.push_back("household " + hid + " lists member '" + mid +
                           "' whose household_id is '" + it->second + "'");
        }
      }
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
  return Population(std::move(taxpayers), std::move(metadata), options);
}

}  // namespace

Population::Population(std::vector<Taxpayer> taxpayers, std::map<std::string, std::string> metadata,
                       const PopulationOptions& options)
    : taxpayers_(std::move(taxpayers)), metadata_(std::move(metadata)) {
  std::vector<std::string> issues;
  std::map<std::string, std::size_t> household_at;
  for (std::size_t i = 0; i < taxpayers_.size(); ++i) {
    const Taxpayer& t = taxpayers_[i];
    const std::string who = "taxpayer '" + t.id + "'";
    if (t.id.empty()) issues.push_back("taxpayer #" + std::to_string(i) + " has no id");
    if (!by_id_.emplace(t.id, i).second) issues.push_back("duplicate taxpayer id '" + t.id + "'");
    if (!std::isfinite(t.weight) || t.weight <= 0.0) {
      issues.push_back(who + ": weight must be positive");
    }
    if (!std::isfinite(t.current_tax)) issues.push_back(who + ": current_tax must be finite");
    for (const auto& [name, v] : t.inputs) {
      if (!std::isfinite(v) || v < 0.0) {
        issues.push_back(who + ": input " + name + " must be finite and non-negative");
      }
    }
    if (!t.household_id.empty()) {
      auto [it, fresh] = household_at.emplace(t.household_id, households_.size());
      if (fresh) households_.push_back(Household{t.household_id, {}});
      households_[it->second].members.push_back(i);
    }
  }
  for (const auto& unit : units()) {
    for (const auto& [household_input, personal] : options.household_sums) {
      bool any = false;
      for (std::size_t i : unit) any = any || taxpayers_[i].inputs.count(household_input);
      if (!any) continue;
      const std::string label = taxpayers_[unit[0]].household_id.empty()
                                    ? "taxpayer '" + taxpayers_[unit[0]].id + "'"
                                    : "household '" + taxpayers_[unit[0]].household_id + "'";
      double sum = 0.0;
      bool complete = true;
      for (std::size_t i : unit) {
        auto it = taxpayers_[i].inputs.find(personal);
        if (it == taxpayers_[i].inputs.end()) complete = false;
        else sum += it->second;
      }
      if (!complete) {
        issues.push_back(label + ": " + household_input + " given but a member lacks " + personal);
        continue;
      }
      for (std::size_t i : unit) {
        auto it = taxpayers_[i].inputs.find(household_input);
        if (it == taxpayers_[i].inputs.end() ||
            std::abs(it->second - sum) > options.household_tolerance * std::max(1.0, std::abs(sum))) {
          issues.push_back(label + ": " + household_input + " differs from the member sum of " +
                           personal + " (" + format_double(sum) + ")");
          break;
        }
      }
    }
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

std::size_t Population::index_of(std::string_view id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) throw NotFoundError("unknown taxpayer '" + std::string(id) + "'");
  return it->second;
}

std::vector<std::vector<std::size_t>> Population::units() const {
  std::vector<std::vector<std::size_t>> out;
  std::map<std::string, std::size_t> at;
  for (std::size_t i = 0; i < taxpayers_.size(); ++i) {
    const auto& hid = taxpayers_[i].household_id;
    if (hid.empty()) {
      out.push_back({i});
      continue;
    }
    auto [it, fresh] = at.emplace(hid, out.size());
    if (fresh) out.emplace_back();
    out[it->second].push_back(i);
  }
  return out;
}

Population parse_population(std::string_view text, const PopulationOptions& options) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) throw ValidationError("no rows");
  if (text[first] == '{') return parse_json(text, options);
  return parse_csv(text, options);
}

Population load_population(const std::filesystem::path& path, const PopulationOptions& options) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_population(buf.str(), options);
}

std::string population_to_csv(const Population& population) {
  std::set<std::string> inputs, chars;
  for (const auto& t : population.taxpayers()) {
    for (const auto& [k, v] : t.inputs) inputs.insert(k);
    for (const auto& [k, v] : t.characteristics) chars.insert(k);
  }
  std::string out;
  for (const auto& [k, v] : population.metadata()) out += "# " + k + ": " + v + "\n";
  out += "# characteristics:";
  bool first = true;
  for (const auto& c : chars) {
    out += (first ? " " : ",") + c;
    first = false;
  }
  out += "\nid,household_id,weight,current_tax";
  for (const auto& k : inputs) out += "," + k;
  for (const auto& k : chars) out += "," + k;
  out += "\n";
  for (const auto& t : population.taxpayers()) {
    out += t.id + "," + t.household_id + "," + format_double(t.weight) + "," +
           format_double(t.current_tax);
    for (const auto& k : inputs) {
      auto it = t.inputs.find(k);
      out += ",";
      if (it != t.inputs.end()) out += format_double(it->second);
    }
    for (const auto& k : chars) {
      auto it = t.characteristics.find(k);
      out += ",";
      if (it != t.characteristics.end()) out += it->second;
    }
    out += "\n";
  }
  return out;
}

std::string population_to_json(const Population& population) {
  nlohmann::json doc;
  doc["schema_version"] = 1;
  doc["metadata"] = nlohmann::json::object();
  for (const auto& [k, v] : population.metadata()) doc["metadata"][k] = v;
  doc["taxpayers"] = nlohmann::json::array();
  for (const auto& t : population.taxpayers()) {
    nlohmann::json item;
    item["id"] = t.id;
    if (!t.household_id.empty()) item["household_id"] = t.household_id;
    item["weight"] = t.weight;
    item["current_tax"] = t.current_tax;
    item["inputs"] = nlohmann::json::object();
    for (const auto& [k, v] : t.inputs) item["inputs"][k] = v;
    item["characteristics"] = nlohmann::json::object();
    for (const auto& [k, v] : t.characteristics) item["characteristics"][k] = v;
    doc["taxpayers"].push_back(std::move(item));
  }
  return doc.dump(1);
}

}  // namespace fiscalopt::io
