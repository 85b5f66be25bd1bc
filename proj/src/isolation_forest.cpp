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


#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "tsad/error.hpp"
#include "tsad/ml.hpp"

namespace tsad {
namespace {

struct Builder {
  const WindowFrame& data;
  std::mt19937_64& rng;
  int max_depth;
  IsoTree tree;

  int build(std::vector<std::size_t>& rows, std::size_t begin, std::size_t end, int depth) {
    const int id = static_cast<int>(tree.nodes.size());
    tree.nodes.push_back(IsoNode{});
    tree.nodes[id].size = end - begin;
    tree.nodes[id].depth = depth;
    if (end - begin <= 1 || depth >= max_depth) return id;

    // Features that still vary inside this node.
    std::vector<std::size_t> candidates;
    std::vector<double> lo(data.width), hi(data.width);
    for (std::size_t f = 0; f < data.width; ++f) {
      lo[f] = hi[f] = data.window(rows[begin])[f];
      for (std::size_t r = begin + 1; r < end; ++r) {
        const double v = data.window(rows[r])[f];
        lo[f] = std::min(lo[f], v);
        hi[f] = std::max(hi[f], v);
      }
      if (hi[f] > lo[f]) candidates.push_back(f);
    }
    if (candidates.empty()) return id;

    const std::size_t f =
        candidates[std::uniform_int_distribution<std::size_t>(0, candidates.size() - 1)(rng)];
    double split = std::uniform_real_distribution<double>(lo[f], hi[f])(rng);
    if (split <= lo[f]) split = std::nextafter(lo[f], hi[f]);
    const auto mid = std::partition(rows.begin() + static_cast<std::ptrdiff_t>(begin),
                                    rows.begin() + static_cast<std::ptrdiff_t>(end),
                                    [&](std::size_t r) { return data.window(r)[f] < split; });
    const auto m = static_cast<std::size_t>(mid - rows.begin());
    const int left = build(rows, begin, m, depth + 1);
    const int right = build(rows, m, end, depth + 1);
    tree.nodes[id].feature = static_cast<int>(f);
    tree.nodes[id].split = split;
    tree.nodes[id].left = left;
    tree.nodes[id].right = right;
    return id;
  }
};

}  // namespace

double average_path_length(std::size_t n) {
  if (n <= 1) return 0.0;
  double harmonic = 0.0;
  for (std::size_t i = 1; i < n; ++i) harmonic += 1.0 / static_cast<double>(i);
  const double nd = static_cast<double>(n);
  return 2.0 * harmonic - 2.0 * (nd - 1.0) / nd;
}

IsoForest iforest_fit(const WindowFrame& train, std::size_t n_trees, std::uint64_t seed) {
  const std::size_t n = train.rows();
  if (n < 2) fail(ErrorCode::kTooFewWindows, "isolation forest needs at least 2 windows");
  if (n_trees < 1) fail(ErrorCode::kInvalidArgument, "isolation forest needs n_trees >= 1");
  IsoForest forest;
  forest.width = train.width;
  forest.subsample = std::min<std::size_t>(256, n);
  forest.max_depth = static_cast<int>(std::ceil(std::log2(static_cast<double>(forest.subsample))));
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> all(n);
  for (std::size_t t = 0; t < n_trees; ++t) {
    std::iota(all.begin(), all.end(), std::size_t{0});
    // Partial Fisher-Yates draws the subsample without replacement.
    for (std::size_t i = 0; i < forest.subsample; ++i) {
      const std::size_t j = std::uniform_int_distribution<std::size_t>(i, n - 1)(rng);
      std::swap(all[i], all[j]);
    }
    std::vector<std::size_t> rows(all.begin(),
                                  all.begin() + static_cast<std::ptrdiff_t>(forest.subsample));
    Builder b{train, rng, forest.max_depth, {}};
    b.build(rows, 0, rows.size(), 0);
    forest.trees.push_back(std::move(b.tree));
  }
  return forest;
}

double iforest_path_length(const IsoTree& tree, std::span<const double> x) {
  int id = 0;
  while (tree.nodes[id].feature >= 0) {
    const auto& node = tree.nodes[id];
    id = x[static_cast<std::size_t>(node.feature)] < node.split ? node.left : node.right;
  }
  const auto& leaf = tree.nodes[id];
  return leaf.depth + average_path_length(leaf.size);
}

double iforest_score(const IsoForest& model, std::span<const double> x) {
  if (x.size() != model.width) fail(ErrorCode::kDimensionMismatch, "iForest width mismatch");
  double total = 0.0;
  for (const auto& tree : model.trees) total += iforest_path_length(tree, x);
  const double mean = total / static_cast<double>(model.trees.size());
  const double c = average_path_length(model.subsample);
  return c > 0.0 ? std::exp2(-mean / c) : 1.0;
}

ScoreSeries iforest_score(const IsoForest& model, const WindowFrame& test) {
  ScoreSeries out;
  out.detector_name = "iforest";
  out.indices = test.target_indices;
  out.scores.reserve(test.rows());
  for (std::size_t i = 0; i < test.rows(); ++i) {
    out.scores.push_back(iforest_score(model, test.window(i)));
  }
  return out;
}

}  // namespace tsad
