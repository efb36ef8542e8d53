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

#include "graphleak/dataset_io.h"

#include <cmath>
#include <nlohmann/json.hpp>
#include <string>
#include <string_view>

#include "graphleak/csv_util.h"
#include "graphleak/error.h"

namespace graphleak {
namespace {

namespace fs = std::filesystem;

struct Meta {
  std::string name;
  size_t num_nodes = 0;
  size_t num_features = 0;
  int num_classes = 0;
  size_t num_edges = 0;
};

Meta ReadMeta(const fs::path& path) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(ReadFile(path));
    Meta m;
    m.name = j.value("name", "");
    m.num_nodes = j.at("num_nodes").get<size_t>();
    m.num_features = j.at("num_features").get<size_t>();
    m.num_classes = j.at("num_classes").get<int>();
    m.num_edges = j.at("num_edges").get<size_t>();
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(path.string() + ": " + e.what());
  }
}

// Calls fn(fields, line_number) for each data line, skipping the header.
template <typename Fn>
void ForEachRow(const fs::path& path, std::string_view header, size_t arity,
                Fn fn) {
  const std::string text = ReadFile(path);
  std::string_view rest = text;
  size_t line_no = 0;
  bool first = true;
  while (!rest.empty()) {
    const size_t nl = rest.find('\n');
    std::string_view line = rest.substr(0, nl);
    rest = nl == std::string_view::npos ? std::string_view() : rest.substr(nl + 1);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;
    if (first) {
      first = false;
      if (line == header) continue;
      throw IoError(path.string() + ": expected header '" +
                    std::string(header) + "'");
    }
    auto fields = SplitFields(line);
    if (fields.size() != arity) {
      throw IoError(path.string() + ":" + std::to_string(line_no) +
                    ": expected " + std::to_string(arity) + " fields");
    }
    try {
      fn(fields);
    } catch (const IoError& e) {
      throw IoError(path.string() + ":" + std::to_string(line_no) + ": " +
                    e.what());
    }
  }
  if (first) throw IoError(path.string() + ": empty file");
}

size_t CheckIndex(int64_t v, size_t limit, const char* what) {
  if (v < 0 || static_cast<size_t>(v) >= limit) {
    throw IoError(std::string(what) + " " + std::to_string(v) +
                  " out of range [0, " + std::to_string(limit) + ")");
  }
  return static_cast<size_t>(v);
}

}  // namespace

Graph LoadCanonical(const fs::path& dir) {
  for (const char* f : {"meta.json", "features.csv", "labels.csv", "edges.csv"}) {
    if (!fs::exists(dir / f)) {
      throw IoError("dataset " + dir.string() + " is missing " + f);
    }
  }
  const Meta meta = ReadMeta(dir / "meta.json");
  if (meta.num_classes < 1) throw IoError("meta.json: num_classes must be >= 1");

  Tensor features(meta.num_nodes, meta.num_features);
  ForEachRow(dir / "features.csv", "node,feat,val", 3, [&](const auto& f) {
    const size_t node = CheckIndex(ParseInt(f[0]), meta.num_nodes, "node");
    const size_t feat = CheckIndex(ParseInt(f[1]), meta.num_features, "feature");
    features(node, feat) = ParseDouble(f[2]);
  });

  std::vector<int> labels(meta.num_nodes, -1);
  size_t label_rows = 0;
  ForEachRow(dir / "labels.csv", "node,label", 2, [&](const auto& f) {
    const size_t node = CheckIndex(ParseInt(f[0]), meta.num_nodes, "node");
    const int64_t label = ParseInt(f[1]);
    CheckIndex(label, static_cast<size_t>(meta.num_classes), "label");
    if (labels[node] != -1) {
      throw IoError("duplicate label for node " + std::to_string(node));
    }
    labels[node] = static_cast<int>(label);
    ++label_rows;
  });
  if (label_rows != meta.num_nodes) {
    throw IoError("labels.csv has " + std::to_string(label_rows) +
                  " rows but meta.json declares " +
                  std::to_string(meta.num_nodes) + " nodes");
  }

  std::vector<Edge> edges;
  ForEachRow(dir / "edges.csv", "u,v", 2, [&](const auto& f) {
    const size_t u = CheckIndex(ParseInt(f[0]), meta.num_nodes, "node");
    const size_t v = CheckIndex(ParseInt(f[1]), meta.num_nodes, "node");
    if (u == v) throw IoError("self-loop on node " + std::to_string(u));
    edges.push_back({u, v});
  });

  Graph g(std::move(features), std::move(labels), meta.num_classes,
          std::move(edges), meta.name);
  if (g.num_edges() != meta.num_edges) {
    throw IoError("edges.csv has " + std::to_string(g.num_edges()) +
                  " distinct undirected edges but meta.json declares " +
                  std::to_string(meta.num_edges));
  }
  return g;
}

void SaveCanonical(const Graph& g, const fs::path& dir) {
  nlohmann::ordered_json meta;
  meta["name"] = g.name();
  meta["num_nodes"] = g.num_nodes();
  meta["num_features"] = g.num_features();
  meta["num_classes"] = g.num_classes();
  meta["num_edges"] = g.num_edges();
  WriteFile(dir / "meta.json", meta.dump(2) + "\n");

  std::string features = "node,feat,val\n";
  for (size_t v = 0; v < g.num_nodes(); ++v) {
    auto row = g.features().Row(v);
    for (size_t j = 0; j < row.size(); ++j) {
      if (row[j] == 0.0 && !std::signbit(row[j])) continue;
      features += std::to_string(v) + "," + std::to_string(j) + "," +
                  FormatDouble(row[j]) + "\n";
    }
  }
  WriteFile(dir / "features.csv", features);

  std::string labels = "node,label\n";
  for (size_t v = 0; v < g.num_nodes(); ++v) {
    labels += std::to_string(v) + "," + std::to_string(g.label(v)) + "\n";
  }
  WriteFile(dir / "labels.csv", labels);

  std::string edges = "u,v\n";
  for (const Edge& e : g.edges()) {
    edges += std::to_string(e.u) + "," + std::to_string(e.v) + "\n";
  }
  WriteFile(dir / "edges.csv", edges);
}

}  // namespace graphleak
