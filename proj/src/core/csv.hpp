// Copyright 2026 The QMLM Authors
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

#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace qmlm::detail {

/// Shortest round-trippable text is not required here; fixed significant
/// digits keep files byte-stable across runs.
std::string format_double(double value, int significant_digits);

double parse_double(std::string_view text);
long long parse_int(std::string_view text);

std::vector<std::string> split(std::string_view line, char sep);
std::string_view trim(std::string_view text);

/// Next non-blank line with trailing '\r' removed; false at end of stream.
bool next_line(std::istream &in, std::string &line);

} // namespace qmlm::detail
