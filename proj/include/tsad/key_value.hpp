/*
 * Copyright 2026 The tsad Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef TSAD_KEY_VALUE_HPP
#define TSAD_KEY_VALUE_HPP

#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tsad {

// Flat `key=value` text: one pair per line (or separated by ';'), '#' starts a
// comment, surrounding whitespace is trimmed. Repeated keys are kept in order.
using KeyValueList = std::vector<std::pair<std::string, std::string>>;

KeyValueList parse_key_values(std::string_view text);

std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);

double parse_double(std::string_view text, std::string_view what);
long parse_long(std::string_view text, std::string_view what);
bool parse_bool(std::string_view text, std::string_view what);

// Shortest round-trip text for a double ("%.17g").
std::string format_double(double v);

}  // namespace tsad

#endif  // TSAD_KEY_VALUE_HPP
