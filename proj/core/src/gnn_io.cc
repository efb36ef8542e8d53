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

#include <nlohmann/json.hpp>

#include <string>

#include "config_json.h"
#include "graphleak/csv_util.h"
#include "graphleak/error.h"
#include "graphleak/gnn.h"

namespace graphleak {

using internal::Json;

std::string GnnModelToJson(const GnnModel& m) {
  Json j;
  j["config"] = internal::ToJson(m.config());
  j["in_dim"] = m.in_dim();
  j["num_classes"] = m.num_classes();
  Json params = Json::array();
  for (const Tensor& t : m.parameters()) {
    Json p;
    p["rows"] = t.rows();
    p["cols"] = t.cols();
    p["data"] = t.values();
    params.push_back(std::move(p));
  }
  j["params"] = std::move(params);
  return j.dump();
}

GnnModel GnnModelFromJson(std::string_view json) {
  try {
    const Json j = Json::parse(json);
    std::vector<Tensor> params;
    for (const auto& p : j.at("params")) {
      params.emplace_back(p.at("rows").get<size_t>(), p.at("cols").get<size_t>(),
                          p.at("data").get<std::vector<double>>());
    }
    GnnConfig config;
    internal::MergeJson(j.at("config"), config);
    return GnnModel(config, j.at("in_dim").get<size_t>(),
                    j.at("num_classes").get<int>(), std::move(params));
  } catch (const Json::exception& e) {
    throw IoError(std::string("malformed GNN model JSON: ") + e.what());
  }
}

void SaveGnnModel(const GnnModel& m, const std::filesystem::path& path) {
  WriteFile(path, GnnModelToJson(m));
}

GnnModel LoadGnnModel(const std::filesystem::path& path) {
  return GnnModelFromJson(ReadFile(path));
}

}  // namespace graphleak
