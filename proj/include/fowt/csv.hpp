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


#ifndef FOWT_CSV_HPP_
#define FOWT_CSV_HPP_

#include <fstream>
#include <initializer_list>
#include <string>
#include <vector>

namespace fowt {

// Nine significant digits, "%.9g".
std::string format_number(double x);

// Comma-separated output with a fixed header and '\n' line endings. Rows go
// to "<path>.tmp", renamed onto the path by close().
class CsvWriter {
 public:
  CsvWriter(std::string path, std::vector<std::string> header);
  ~CsvWriter();
  CsvWriter(const CsvWriter&) = delete;
  CsvWriter& operator=(const CsvWriter&) = delete;

  void row(const std::vector<std::string>& cells);
  void row(std::initializer_list<double> values);
  void close();

 private:
  std::string path_;
  std::string tmp_;
  std::size_t columns_;
  std::ofstream out_;
  bool closed_ = false;
};

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  // Throws ConfigError naming the missing column.
  std::size_t column(const std::string& name) const;
  double number(std::size_t row, std::size_t col) const;
  const std::string& text(std::size_t row, std::size_t col) const;
};

CsvTable read_csv(const std::string& path);

}  // namespace fowt

#endif  // FOWT_CSV_HPP_
