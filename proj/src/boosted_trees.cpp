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

#include "tsad/error.hpp"
#include "tsad/ml.hpp"

namespace tsad {
namespace {

struct Candidate {
  double gain = 0.0;
  int feature = -1;
  double threshold = 0.0;
};

struct NodeStats {
  double g = 0.0;
  double h = 0.0;
};

double leaf_term(double g, double h, double lambda) { return g * g / (h + lambda); }

// Grows one tree level by level. `node_of[i]` is the open node holding row i
// (or -1 once the row sits in a finished leaf).
GbtTree grow_tree(const WindowFrame& x, const std::vector<std::vector<std::size_t>>& sorted,
                  const std::vector<double>& grad, const GbtOptions& opt) {
  const std::size_t n = x.rows();
  const std::size_t w = x.width;
  GbtTree tree;
  tree.nodes.push_back(GbtNode{});
  std::vector<int> node_of(n, 0);
  std::vector<int> open = {0};

  for (int depth = 0; depth <= opt.max_depth && !open.empty(); ++depth) {
    std::vector<NodeStats> stats(tree.nodes.size());
    for (std::size_t i = 0; i < n; ++i) {
      if (node_of[i] < 0) continue;
      stats[node_of[i]].g += grad[i];
      stats[node_of[i]].h += 1.0;
    }
    std::vector<Candidate> best(tree.nodes.size());
    if (depth < opt.max_depth) {
      std::vector<NodeStats> left(tree.nodes.size());
      std::vector<double> last_value(tree.nodes.size());
      std::vector<char> seen(tree.nodes.size());
      for (std::size_t f = 0; f < w; ++f) {
        std::fill(left.begin(), left.end(), NodeStats{});
        std::fill(seen.begin(), seen.end(), 0);
        for (std::size_t i : sorted[f]) {
          const int node = node_of[i];
          if (node < 0) continue;
          const double v = x.window(i)[f];
          // Evaluate the cut between the previous distinct value and this one.
          if (seen[node] && v > last_value[node]) {
            const NodeStats& all = stats[node];
            const NodeStats& l = left[node];
            const double gain =
                0.5 * (leaf_term(l.g, l.h, opt.lambda) +
                       leaf_term(all.g - l.g, all.h - l.h, opt.lambda) -
                       leaf_term(all.g, all.h, opt.lambda)) -
                opt.gamma;
            if (gain > best[node].gain) {
              best[node] = {gain, static_cast<int>(f), 0.5 * (last_value[node] + v)};
            }
          }
          left[node].g += grad[i];
          left[node].h += 1.0;
          last_value[node] = v;
          seen[node] = 1;
        }
      }
    }
    std::vector<int> next_open;
    for (int node : open) {
      if (best[node].feature < 0 || best[node].gain <= 1e-12) {
        tree.nodes[node].value =
            -opt.learning_rate * stats[node].g / (stats[node].h + opt.lambda);
        continue;
      }
      const int l = static_cast<int>(tree.nodes.size());
      tree.nodes.push_back(GbtNode{});
      tree.nodes.push_back(GbtNode{});
      tree.nodes[node].feature = best[node].feature;
      tree.nodes[node].threshold = best[node].threshold;
      tree.nodes[node].left = l;
      tree.nodes[node].right = l + 1;
      next_open.push_back(l);
      next_open.push_back(l + 1);
    }
    for (std::size_t i = 0; i < n; ++i) {
      const int node = node_of[i];
      if (node < 0) continue;
      const GbtNode& nd = tree.nodes[node];
      if (nd.feature < 0) {
        node_of[i] = -1;
      } else {
        node_of[i] = x.window(i)[static_cast<std::size_t>(nd.feature)] < nd.threshold ? nd.left
                                                                                     : nd.right;
      }
    }
    open = std::move(next_open);
  }
  return tree;
}

double tree_predict(const GbtTree& tree, std::span<const double> x) {
  int id = 0;
  while (tree.nodes[id].feature >= 0) {
    const GbtNode& nd = tree.nodes[id];
    id = x[static_cast<std::size_t>(nd.feature)] < nd.threshold ? nd.left : nd.right;
  }
  return tree.nodes[id].value;
}

}  // namespace

GbtModel gbt_fit(const WindowFrame& train, const GbtOptions& options) {
  const std::size_t n = train.rows();
  if (n < 1) fail(ErrorCode::kTooFewWindows, "boosting needs at least one window");
  if (options.max_depth < 0 || options.n_estimators < 1 || !(options.learning_rate > 0.0) ||
      options.lambda < 0.0 || options.gamma < 0.0) {
    fail(ErrorCode::kInvalidArgument, "invalid boosting options");
  }
  GbtModel model;
  model.options = options;
  model.width = train.width;
  model.base_score =
      std::accumulate(train.targets.begin(), train.targets.end(), 0.0) / static_cast<double>(n);

  std::vector<std::vector<std::size_t>> sorted(train.width);
  for (std::size_t f = 0; f < train.width; ++f) {
    sorted[f].resize(n);
    std::iota(sorted[f].begin(), sorted[f].end(), std::size_t{0});
    std::stable_sort(sorted[f].begin(), sorted[f].end(), [&](std::size_t a, std::size_t b) {
      return train.window(a)[f] < train.window(b)[f];
    });
  }

  std::vector<double> pred(n, model.base_score);
  std::vector<double> grad(n);
  double penalty = 0.0;  // sum of gamma * T + lambda / 2 * |w|^2 over grown trees
  model.trees.reserve(options.n_estimators);
  for (std::size_t round = 0; round < options.n_estimators; ++round) {
    for (std::size_t i = 0; i < n; ++i) grad[i] = pred[i] - train.targets[i];
    GbtTree tree = grow_tree(train, sorted, grad, options);
    for (const auto& node : tree.nodes) {
      if (node.feature < 0) penalty += options.gamma + 0.5 * options.lambda * node.value * node.value;
    }
    double loss = penalty;
    for (std::size_t i = 0; i < n; ++i) {
      pred[i] += tree_predict(tree, train.window(i));
      const double r = train.targets[i] - pred[i];
      loss += 0.5 * r * r;
    }
    model.train_loss.push_back(loss);
    model.trees.push_back(std::move(tree));
  }
  return model;
}

double gbt_predict(const GbtModel& model, std::span<const double> x) {
  if (x.size() != model.width) fail(ErrorCode::kDimensionMismatch, "boosting width mismatch");
  double y = model.base_score;
  for (const auto& tree : model.trees) y += tree_predict(tree, x);
  return y;
}

ScoreSeries gbt_score(const GbtModel& model, const WindowFrame& test) {
  ScoreSeries out;
  out.detector_name = "xgboost";
  out.indices = test.target_indices;
  out.scores.reserve(test.rows());
  for (std::size_t i = 0; i < test.rows(); ++i) {
    out.scores.push_back(std::abs(gbt_predict(model, test.window(i)) - test.targets[i]));
  }
  return out;
}

}  // namespace tsad
