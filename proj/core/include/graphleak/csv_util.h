/*
 * Copyright 2026 The Graphleak Authors.
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

#ifndef GRAPHLEAK_CSV_UTIL_H_
#define GRAPHLEAK_CSV_UTIL_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace graphleak {

std::vector<std::string_view> SplitFields(std::string_view line, char sep = ',');
int64_t ParseInt(std::string_view field);
double ParseDouble(std::string_view field);
// Shortest decimal representation that parses back to the same double.
std::string FormatDouble(double value);

std::string ReadFile(const std::filesystem::path& path);
// Creates parent directories as needed.
void WriteFile(const std::filesystem::path& path, std::string_view contents);

}  // namespace graphleak

#endif  // GRAPHLEAK_CSV_UTIL_H_
