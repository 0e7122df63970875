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

#include "fiscalopt/lp/mps.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <vector>

#include "fiscalopt/error.hpp"

namespace fiscalopt::lp {

namespace {

std::string short_name(char prefix, int index) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%c%07d", prefix, index);
  return buf;
}

std::string number(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, end);
}

std::string pad(std::string_view s, std::size_t width) {
  std::string out(s);
  if (out.size() < width) out.append(width - out.size(), ' ');
  return out;
}

/// "    name1     name2     value" in the fixed columns 5, 15 and 25.
std::string data_line(std::string_view name1, std::string_view name2, double value) {
  return "    " + pad(name1, 8) + "  " + pad(name2, 8) + "  " + number(value) + "\n";
}

std::string bound_line(std::string_view type, std::string_view column) {
  return " " + std::string(type) + " " + pad("BND", 8) + "  " + std::string(column) + "\n";
}

std::string bound_line(std::string_view type, std::string_view column, double value) {
  return " " + std::string(type) + " " + pad("BND", 8) + "  " + pad(column, 8) + "  " +
         number(value) + "\n";
}

void check_names(const LinearProblem& problem) {
  std::vector<std::string> issues;
  std::set<std::string> seen;
  for (const auto& c : problem.columns()) {
    if (!seen.insert(c.name).second) issues.push_back("duplicate column name '" + c.name + "'");
    if (c.name.find('\n') != std::string::npos) issues.push_back("column name with newline");
  }
  seen.clear();
  for (const auto& r : problem.rows()) {
    if (!seen.insert(r.name).second) issues.push_back("duplicate row name '" + r.name + "'");
    if (r.name.find('\n') != std::string::npos) issues.push_back("row name with newline");
  }
  if (!issues.empty()) throw ValidationError(std::move(issues));
}

double parse_number(std::string_view token, int line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), v);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    throw ValidationError("MPS line " + std::to_string(line) + ": bad number '" +
                          std::string(token) + "'");
  }
  return v;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

std::string export_mps(const LinearProblem& problem) {
  problem.validate();
  check_names(problem);
  const int n = problem.column_count();
  const int m = problem.row_count();

  std::string out = "* fiscalopt MPS export\n";
  out += "* PROBLEM " + problem.name + "\n";
  for (int j = 0; j < n; ++j) out += "* COLUMN " + short_name('C', j) + " " + problem.column(j).name + "\n";
  for (int i = 0; i < m; ++i) out += "* ROW " + short_name('R', i) + " " + problem.row(i).name + "\n";
  out += "NAME          FISCALOPT\n";
  out += "ROWS\n";
  out += " N  OBJ\n";
  for (int i = 0; i < m; ++i) {
    const char* type = "L";
    if (problem.row(i).sense == RowSense::Equal) type = "E";
    if (problem.row(i).sense == RowSense::GreaterEqual) type = "G";
    out += " " + std::string(type) + "  " + short_name('R', i) + "\n";
  }

  std::vector<std::vector<std::pair<int, double>>> by_column(n);
  for (int i = 0; i < m; ++i) {
    for (const auto& e : problem.row(i).entries) by_column[e.column].emplace_back(i, e.value);
  }
  out += "COLUMNS\n";
  for (int j = 0; j < n; ++j) {
    const std::string name = short_name('C', j);
    const double cost = problem.column(j).cost;
    if (cost != 0.0 || by_column[j].empty()) out += data_line(name, "OBJ", cost);
    for (const auto& [i, v] : by_column[j]) out += data_line(name, short_name('R', i), v);
  }

  out += "RHS\n";
  if (problem.objective_offset != 0.0) out += data_line("RHS", "OBJ", -problem.objective_offset);
  for (int i = 0; i < m; ++i) {
    if (problem.row(i).rhs != 0.0) out += data_line("RHS", short_name('R', i), problem.row(i).rhs);
  }
  out += "RANGES\n";

  out += "BOUNDS\n";
  for (int j = 0; j < n; ++j) {
    const Column& c = problem.column(j);
    const std::string name = short_name('C', j);
    if (c.binary) {
      out += bound_line("BV", name);
      if (c.lower != 0.0) out += bound_line("LO", name, c.lower);
      if (c.upper != 1.0) out += bound_line("UP", name, c.upper);
      continue;
    }
    const bool lo_inf = std::isinf(c.lower);
    const bool hi_inf = std::isinf(c.upper);
    if (!lo_inf && c.lower == c.upper) {
      out += bound_line("FX", name, c.lower);
    } else if (lo_inf && hi_inf) {
      out += bound_line("FR", name);
    } else {
      if (lo_inf) {
        out += bound_line("MI", name);
      } else if (c.lower != 0.0 || (!hi_inf && c.upper < 0.0)) {
        out += bound_line("LO", name, c.lower);
      }
      if (!hi_inf) out += bound_line("UP", name, c.upper);
    }
  }
  out += "ENDATA\n";
  return out;
}

LinearProblem import_mps(std::string_view text) {
  std::map<std::string, std::string> long_column, long_row;
  std::string problem_name = "fiscalopt";
  enum class Section { None, Rows, Columns, Rhs, Ranges, Bounds, End } section = Section::None;

  std::string objective_row;
  struct PendingRow {
    std::string name;
    RowSense sense;
    std::vector<Entry> entries;
    double rhs = 0.0;
  };
  std::vector<PendingRow> rows;
  std::map<std::string, int> row_index;
  std::vector<Column> columns;
  std::map<std::string, int> column_index;
  double offset = 0.0;

  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& why) {
    throw ValidationError("MPS line " + std::to_string(line_no) + ": " + why);
  };
  auto column_of = [&](const std::string& name) {
    auto it = column_index.find(name);
    if (it == column_index.end()) fail("unknown column '" + name + "'");
    return it->second;
  };

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '*') {
      std::istringstream c(line.substr(1));
      std::string tag, key;
      c >> tag;
      if (tag == "PROBLEM") {
        std::string rest;
        std::getline(c >> std::ws, rest);
        problem_name = rest;
      } else if (tag == "COLUMN" || tag == "ROW") {
        c >> key;
        std::string rest;
        if (c.peek() == ' ') c.get();
        std::getline(c, rest);
        (tag == "COLUMN" ? long_column : long_row)[key] = rest;
      }
      continue;
    }
    const auto tok = split(line);
    if (line[0] != ' ' && line[0] != '\t') {
      const std::string& head = tok[0];
      if (head == "NAME") section = Section::None;
      else if (head == "ROWS") section = Section::Rows;
      else if (head == "COLUMNS") section = Section::Columns;
      else if (head == "RHS") section = Section::Rhs;
      else if (head == "RANGES") section = Section::Ranges;
      else if (head == "BOUNDS") section = Section::Bounds;
      else if (head == "ENDATA") section = Section::End;
      else fail("unknown section '" + head + "'");
      continue;
    }
    switch (section) {
      case Section::Rows: {
        if (tok.size() != 2) fail("malformed ROWS entry");
        if (tok[0] == "N") {
          if (objective_row.empty()) objective_row = tok[1];
          else fail("more than one objective row");
          break;
        }
        RowSense sense;
        if (tok[0] == "L") sense = RowSense::LessEqual;
        else if (tok[0] == "E") sense = RowSense::Equal;
        else if (tok[0] == "G") sense = RowSense::GreaterEqual;
        else fail("unknown row type '" + tok[0] + "'");
        if (row_index.count(tok[1])) fail("duplicate row '" + tok[1] + "'");
        row_index[tok[1]] = static_cast<int>(rows.size());
        rows.push_back({tok[1], sense, {}, 0.0});
        break;
      }
      case Section::Columns: {
        if (tok.size() >= 2 && tok[1] == "'MARKER'") fail("integer markers are not supported");
        if (tok.size() != 3 && tok.size() != 5) fail("malformed COLUMNS entry");
        auto [it, fresh] = column_index.emplace(tok[0], static_cast<int>(columns.size()));
        if (fresh) columns.push_back(Column{tok[0], 0.0, kInf, 0.0, false});
        const int j = it->second;
        for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
          const double v = parse_number(tok[k + 1], line_no);
          if (tok[k] == objective_row) {
            columns[j].cost = v;
          } else {
            auto r = row_index.find(tok[k]);
            if (r == row_index.end()) fail("unknown row '" + tok[k] + "'");
            rows[r->second].entries.push_back({j, v});
          }
        }
        break;
      }
      case Section::Rhs: {
        if (tok.size() != 3 && tok.size() != 5) fail("malformed RHS entry");
        for (std::size_t k = 1; k + 1 < tok.size(); k += 2) {
          const double v = parse_number(tok[k + 1], line_no);
          if (tok[k] == objective_row) {
            offset = -v;
          } else {
            auto r = row_index.find(tok[k]);
            if (r == row_index.end()) fail("unknown row '" + tok[k] + "'");
            rows[r->second].rhs = v;
          }
        }
        break;
      }
      case Section::Ranges:
        fail("RANGES entries are not supported");
        break;
      case Section::Bounds: {
        if (tok.size() < 3) fail("malformed BOUNDS entry");
        Column& c = columns[column_of(tok[2])];
        const std::string& type = tok[0];
        auto value = [&] {
          if (tok.size() != 4) fail("bound '" + type + "' needs a value");
          return parse_number(tok[3], line_no);
        };
        if (type == "BV") {
          c.binary = true;
          c.lower = 0.0;
          c.upper = 1.0;
        } else if (type == "FX") {
          c.lower = c.upper = value();
        } else if (type == "FR") {
          c.lower = -kInf;
          c.upper = kInf;
        } else if (type == "MI") {
          c.lower = -kInf;
        } else if (type == "PL") {
          c.upper = kInf;
        } else if (type == "LO") {
          c.lower = value();
        } else if (type == "UP") {
          c.upper = value();
        } else {
          fail("unsupported bound type '" + type + "'");
        }
        break;
      }
      case Section::None:
      case Section::End:
        fail("data outside a section");
    }
  }
  if (section != Section::End) throw ValidationError("MPS document lacks ENDATA");

  LinearProblem problem;
  problem.name = problem_name;
  problem.objective_offset = offset;
  for (auto& c : columns) {
    auto it = long_column.find(c.name);
    problem.add_column(it != long_column.end() ? it->second : c.name, c.lower, c.upper, c.cost,
                       c.binary);
  }
  for (auto& r : rows) {
    auto it = long_row.find(r.name);
    problem.add_row(it != long_row.end() ? it->second : r.name, std::move(r.entries), r.sense,
                    r.rhs);
  }
  problem.validate();
  return problem;
}

LinearProblem read_mps(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return import_mps(buf.str());
}

}  // namespace fiscalopt::lp
