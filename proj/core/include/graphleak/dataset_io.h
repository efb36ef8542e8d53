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

#ifndef GRAPHLEAK_DATASET_IO_H_
#define GRAPHLEAK_DATASET_IO_H_

#include <filesystem>

#include "graphleak/graph.h"

namespace graphleak {

// Canonical dataset directory:
//   meta.json     {"name", "num_nodes", "num_features", "num_classes",
//                  "num_edges"}
//   features.csv  header "node,feat,val", sparse triplets; absent entries 0
//   labels.csv    header "node,label"
//   edges.csv     header "u,v", one line per undirected edge with u < v
//
// Loading tolerates repeated or reversed edge lines (they are merged) and
// validates every count and index against meta.json. Masks are not part of
// the format and load empty.
Graph LoadCanonical(const std::filesystem::path& dir);

// Writes the four files. Feature values are written in shortest round-trip
// form so LoadCanonical(SaveCanonical(g)) reproduces g bit for bit (masks
// excepted).
void SaveCanonical(const Graph& g, const std::filesystem::path& dir);

}  // namespace graphleak

#endif  // GRAPHLEAK_DATASET_IO_H_
