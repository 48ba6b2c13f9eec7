// Copyright 2026 The iiglearn Authors. All rights reserved.
//
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

#include "iig/csv_format.h"

#include <cstdio>
#include <sstream>

#include "iig/errors.h"

namespace iig {

std::string FormatCsvValue(double value) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.10g", value);
  return buf;
}

std::string FormatCsvRow(const CsvRow& row, int best) {
  std::ostringstream out;
  out << row.game << ',' << row.algo << ',' << row.seed << ','
      << FormatCsvValue(row.eta) << ',' << FormatCsvValue(row.gamma) << ','
      << row.episode << ',' << FormatCsvValue(row.exploit_avg) << ','
      << FormatCsvValue(row.exploit_last) << ','
      << FormatCsvValue(row.regret_max) << ','
      << FormatCsvValue(row.regret_min) << ','
      << FormatCsvValue(row.theorem1_bound) << ','
      << FormatCsvValue(row.wall_ms);
  if (best >= 0) out << ',' << best;
  return out.str();
}

namespace {

std::vector<std::string> SplitLine(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

CsvTable ParseCsv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw StructuralError("csv: empty file");
  CsvTable table;
  table.header = SplitLine(line);
  if (table.header.size() < 12) {
    throw StructuralError("csv: unexpected header '" + line + "'");
  }
  for (size_t i = 0; i < 12; ++i) {
    const std::string expected = SplitLine(kCsvHeader)[i];
    if (table.header[i] != expected) {
      throw StructuralError("csv: header column " + std::to_string(i) +
                            " is '" + table.header[i] + "', expected '" +
                            expected + "'");
    }
  }
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = SplitLine(line);
    if (fields.size() < 12) {
      throw StructuralError("csv: short row at line " +
                            std::to_string(line_no));
    }
    try {
      CsvRow row;
      row.game = fields[0];
      row.algo = fields[1];
      row.seed = std::stoull(fields[2]);
      row.eta = std::stod(fields[3]);
      row.gamma = std::stod(fields[4]);
      row.episode = std::stoll(fields[5]);
      row.exploit_avg = std::stod(fields[6]);
      row.exploit_last = std::stod(fields[7]);
      row.regret_max = std::stod(fields[8]);
      row.regret_min = std::stod(fields[9]);
      row.theorem1_bound = std::stod(fields[10]);
      row.wall_ms = std::stod(fields[11]);
      table.rows.push_back(row);
    } catch (const std::exception&) {
      throw StructuralError("csv: bad value at line " +
                            std::to_string(line_no));
    }
  }
  return table;
}

}  // namespace iig
