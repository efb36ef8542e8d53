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

// JSON conversions for configuration structs shared by the model files,
// the experiment config and the ledger. Internal to the library.

#ifndef GRAPHLEAK_SRC_CONFIG_JSON_H_
#define GRAPHLEAK_SRC_CONFIG_JSON_H_

#include <nlohmann/json.hpp>

#include <initializer_list>
#include <string_view>

#include "graphleak/gnn.h"
#include "graphleak/poison.h"
#include "graphleak/report.h"
#include "graphleak/synthetic.h"

namespace graphleak::internal {

using Json = nlohmann::ordered_json;

// Throws InvalidArgument naming the first key of `j` not in `allowed`.
void RejectUnknownKeys(const Json& j, std::initializer_list<std::string_view> allowed,
                       std::string_view where);

Json ToJson(const GnnConfig& c);
// Fields absent from `j` keep the values already in `c`.
void MergeJson(const Json& j, GnnConfig& c);

Json ToJson(const PoisonConfig& c);
void MergeJson(const Json& j, PoisonConfig& c);

Json ToJson(const SbmOptions& o);
void MergeJson(const Json& j, SbmOptions& o);

Json ToJson(const StealthinessThresholds& t);
void MergeJson(const Json& j, StealthinessThresholds& t);

}  // namespace graphleak::internal

#endif  // GRAPHLEAK_SRC_CONFIG_JSON_H_
