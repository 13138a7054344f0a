// Copyright 2026 The metarsa Authors
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

// Minimal CSV support: comma separated, optional double quotes with ""
// escapes, no embedded newlines. Internal to the library.

#ifndef METARSA_SRC_CSV_H_
#define METARSA_SRC_CSV_H_

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace metarsa::csv {

struct Row {
  std::size_t line = 0;  // 1-based line number in the file
  std::vector<std::string> fields;
};

// Reads a file, checks the header row matches `header` exactly and returns
// the data rows. Blank lines are skipped. Throws IoError / DomainError.
std::vector<Row> ReadFile(const std::filesystem::path& path,
                          const std::vector<std::string>& header);

std::vector<std::string> SplitLine(std::string_view line);

// Quotes a field if it contains a comma, quote or leading/trailing space.
std::string Escape(std::string_view field);

// Strict decimal parse of a whole field; throws DomainError with context.
double ParseNumber(std::string_view text, const std::string& context);

}  // namespace metarsa::csv

#endif  // METARSA_SRC_CSV_H_
