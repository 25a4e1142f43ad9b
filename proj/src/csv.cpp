// Copyright 2026 The fowtcd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fowt/csv.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <sstream>

#include <fmt/format.h>

#include "fowt/errors.hpp"

namespace fowt {

std::string format_number(double x) { return fmt::format("{:.9g}", x); }

CsvWriter::CsvWriter(std::string path, std::vector<std::string> header)
    : path_(std::move(path)), tmp_(path_ + ".tmp"), columns_(header.size()) {
  out_.open(tmp_, std::ios::binary | std::ios::trunc);
  if (!out_) throw ConfigError("cannot open " + tmp_ + " for writing");
  row(header);
}

CsvWriter::~CsvWriter() {
  try {
    close();
  } catch (...) {
  }
}

void CsvWriter::row(const std::vector<std::string>& cells) {
  if (cells.size() != columns_) {
    throw DomainError(fmt::format("{}: row has {} cells, header has {}", path_,
                                  cells.size(), columns_));
  }
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out_ << ',';
    out_ << cells[i];
  }
  out_ << '\n';
}

void CsvWriter::row(std::initializer_list<double> values) {
  std::vector<std::string> cells;
  cells.reserve(values.size());
  for (double v : values) cells.push_back(format_number(v));
  row(cells);
}

void CsvWriter::close() {
  if (closed_) return;
  closed_ = true;
  out_.close();
  if (!out_) throw ConfigError("failed writing " + tmp_);
  std::filesystem::rename(tmp_, path_);
}

std::size_t CsvTable::column(const std::string& name) const {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) throw ConfigError("CSV column '" + name + "' missing");
  return static_cast<std::size_t>(it - header.begin());
}

double CsvTable::number(std::size_t row, std::size_t col) const {
  const std::string& cell = text(row, col);
  try {
    std::size_t used = 0;
    const double x = std::stod(cell, &used);
    if (used == cell.size()) return x;
  } catch (const std::exception&) {
  }
  throw ConfigError(fmt::format("CSV cell '{}' at row {} is not a number", cell,
                                row + 1));
}

const std::string& CsvTable::text(std::size_t row, std::size_t col) const {
  if (row >= rows.size() || col >= rows[row].size()) {
    throw ConfigError("CSV cell index out of range");
  }
  return rows[row][col];
}

namespace {

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

}  // namespace

CsvTable read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path);
  CsvTable t;
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cells = split(line);
    if (first) {
      t.header = std::move(cells);
      first = false;
      continue;
    }
    if (cells.size() != t.header.size()) {
      throw ConfigError(fmt::format("{}: ragged row {}", path, t.rows.size() + 2));
    }
    t.rows.push_back(std::move(cells));
  }
  if (first) throw ConfigError(path + ": empty CSV");
  return t;
}

}  // namespace fowt
