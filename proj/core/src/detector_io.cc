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
#include <type_traits>

#include "graphleak/csv_util.h"
#include "graphleak/detector.h"
#include "graphleak/error.h"

namespace graphleak {

namespace {

using nlohmann::ordered_json;

ordered_json ParamsToJson(std::span<const Tensor> params) {
  ordered_json out = ordered_json::array();
  for (const Tensor& t : params) {
    ordered_json p;
    p["rows"] = t.rows();
    p["cols"] = t.cols();
    p["data"] = t.values();
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<Tensor> ParamsFromJson(const ordered_json& j) {
  std::vector<Tensor> out;
  for (const auto& p : j) {
    out.emplace_back(p.at("rows").get<size_t>(), p.at("cols").get<size_t>(),
                     p.at("data").get<std::vector<double>>());
  }
  return out;
}

}  // namespace

std::string DetectorToJson(const Detector& det) {
  ordered_json j;
  std::visit(
      [&](const auto& d) {
        using T = std::decay_t<decltype(d)>;
        j["kind"] = std::is_same_v<T, MlpDetector> ? "mlp" : "attn";
        j["params"] = ParamsToJson(d.parameters());
      },
      det);
  return j.dump();
}

Detector DetectorFromJson(std::string_view json) {
  try {
    const ordered_json j = ordered_json::parse(json);
    const std::string kind = j.at("kind").get<std::string>();
    auto params = ParamsFromJson(j.at("params"));
    if (kind == "mlp") return MlpDetector(std::move(params));
    if (kind == "attn") return AttnDetector(std::move(params));
    throw IoError("unknown detector kind '" + kind + "'");
  } catch (const ordered_json::exception& e) {
    throw IoError(std::string("malformed detector JSON: ") + e.what());
  }
}

void SaveDetector(const Detector& det, const std::filesystem::path& path) {
  WriteFile(path, DetectorToJson(det));
}

Detector LoadDetector(const std::filesystem::path& path) {
  return DetectorFromJson(ReadFile(path));
}

}  // namespace graphleak
