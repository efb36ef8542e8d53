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

#ifndef GRAPHLEAK_TESTS_SUPPORT_TOY_GRAPHS_H_
#define GRAPHLEAK_TESTS_SUPPORT_TOY_GRAPHS_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <unistd.h>

#include "graphleak/graph.h"
#include "graphleak/synthetic.h"
#include "graphleak/tensor.h"

namespace graphleak::testing {

// 0-1-2 triangle, one class, 2-d features.
inline Graph Triangle() {
  return Graph(Tensor::FromRows({{1, 0}, {0, 1}, {1, 1}}), {0, 0, 0}, 1,
               {{0, 1}, {1, 2}, {0, 2}}, "triangle");
}

// 0-1-2-3-0 with labels 0,1,0,1: every edge is inter-class and both
// non-edges are intra-class.
inline Graph FourCycle() {
  return Graph(Tensor::FromRows({{1, 0}, {0, 1}, {1, 0.5}, {0.5, 1}}),
               {0, 1, 0, 1}, 2, {{0, 1}, {1, 2}, {2, 3}, {0, 3}}, "cycle4");
}

inline SbmOptions SmallSbm(uint64_t seed, size_t nodes = 200) {
  SbmOptions o;
  o.num_nodes = nodes;
  o.num_classes = 3;
  o.p_intra = 0.08;
  o.p_inter = 0.005;
  o.num_features = 30;
  o.words_per_node = 8;
  o.word_noise = 0.3;
  o.seed = seed;
  return o;
}

// Unique scratch directory under the system temp dir, removed on scope exit.
class TempDir {
 public:
  explicit TempDir(const std::string& tag)
      : path_(std::filesystem::temp_directory_path() /
              ("graphleak_" + tag + "_" + std::to_string(::getpid()) + "_" +
               std::to_string(Counter()++))) {
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;
  const std::filesystem::path& path() const { return path_; }

 private:
  static int& Counter() {
    static int n = 0;
    return n;
  }
  std::filesystem::path path_;
};

}  // namespace graphleak::testing

#endif  // GRAPHLEAK_TESTS_SUPPORT_TOY_GRAPHS_H_
