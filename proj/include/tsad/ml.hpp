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


#ifndef TSAD_ML_HPP
#define TSAD_ML_HPP

#include <cstdint>
#include <span>
#include <vector>

#include "tsad/types.hpp"

namespace tsad {

// All window detectors take WindowFrame rows as points; ScoreSeries indices
// are the frame's target_indices.

// ---------------------------------------------------------------------------
// Subsequence clustering (STSC)

struct KMeansModel {
  std::size_t k = 4;
  std::size_t width = 0;
  std::vector<double> centroids;       // k x width, row-major
  std::vector<double> inertia_history;  // after each Lloyd iteration
  double inertia = 0.0;
  int iterations = 0;
};

/// k-means++ seeding then Lloyd iterations until the assignment is a fixpoint
/// or 300 iterations. Throws kTooFewWindows when rows < k.
KMeansModel kmeans_fit(const WindowFrame& train, std::size_t k, std::uint64_t seed,
                       int max_iterations = 300);
/// Euclidean distance from each row to its nearest centroid.
ScoreSeries kmeans_score(const KMeansModel& model, const WindowFrame& test);

// ---------------------------------------------------------------------------
// DBSCAN

struct DbscanModel {
  double epsilon = 0.4;
  std::size_t min_points = 5;
  std::size_t width = 0;
  std::vector<double> core_points;  // retained core rows, row-major
  std::size_t core_count = 0;
};

/// Number of other rows within `epsilon` of each row (distance <= epsilon).
std::vector<std::size_t> epsilon_neighbour_counts(const WindowFrame& frame, double epsilon);
/// Keeps rows with at least `min_points` epsilon-neighbours. Throws
/// kNoCorePoints when none qualifies.
DbscanModel dbscan_fit(const WindowFrame& train, double epsilon, std::size_t min_points);
/// Distance to the nearest core point, or 0 when that distance is <= epsilon.
ScoreSeries dbscan_score(const DbscanModel& model, const WindowFrame& test);
ScoreSeries dbscan_score(const WindowFrame& train, const WindowFrame& test, double epsilon,
                         std::size_t min_points);

// ---------------------------------------------------------------------------
// Local outlier factor

/// Minkowski distance of order p (p = 2 is Euclidean).
double minkowski(std::span<const double> a, std::span<const double> b, double p);

struct LofNeighbour {
  double distance;
  std::size_t index;
};

struct LofModel {
  std::size_t k = 10;
  double p = 2.0;
  std::size_t width = 0;
  std::vector<double> reference;  // rows x width
  // Per reference row: other rows sorted by distance, up to and including
  // every tie of the k-th distance.
  std::vector<std::vector<LofNeighbour>> neighbours;
  std::size_t rows() const noexcept { return width ? reference.size() / width : 0; }
};

/// Throws kTooFewWindows unless rows > k.
LofModel lof_fit(const WindowFrame& reference, std::size_t k, double p = 2.0);
/// LOF of `query` within reference + {query}.
double lof_score(const LofModel& model, std::span<const double> query);
ScoreSeries lof_score(const LofModel& model, const WindowFrame& test);

// ---------------------------------------------------------------------------
// Isolation forest

struct IsoNode {
  int feature = -1;  // -1 marks an external node
  double split = 0.0;
  int left = -1;
  int right = -1;
  std::size_t size = 0;
  int depth = 0;
};

struct IsoTree {
  std::vector<IsoNode> nodes;  // nodes[0] is the root
};

struct IsoForest {
  std::vector<IsoTree> trees;
  std::size_t subsample = 0;
  int max_depth = 0;
  std::size_t width = 0;
};

/// Average unsuccessful-search path length: 2 H(n-1) - 2 (n-1) / n, with
/// c(0) = c(1) = 0.
double average_path_length(std::size_t n);

/// Throws kTooFewWindows for fewer than 2 rows.
IsoForest iforest_fit(const WindowFrame& train, std::size_t n_trees, std::uint64_t seed);
double iforest_path_length(const IsoTree& tree, std::span<const double> x);
/// 2^(-E(h(x)) / c(subsample)), in (0, 1].
double iforest_score(const IsoForest& model, std::span<const double> x);
ScoreSeries iforest_score(const IsoForest& model, const WindowFrame& test);

// ---------------------------------------------------------------------------
// One-class SVM

struct OcSvmModel {
  std::size_t width = 0;
  std::vector<double> support_vectors;  // rows with alpha > 0
  std::vector<double> dual_coeffs;
  double rho = 0.0;
  double gamma = 0.0;
  double nu = 0.7;
  int iterations = 0;
  bool converged = true;
};

struct OcSvmOptions {
  double nu = 0.7;
  double gamma = 0.0;  // 0 selects 1 / width
  double tolerance = 1e-4;
  int max_iterations = 100000;
};

/// nu-one-class dual with RBF kernel, solved by SMO pair updates.
OcSvmModel ocsvm_fit(const WindowFrame& train, const OcSvmOptions& options = {});
/// sum_i alpha_i K(s_i, x) - rho; negative outside the learned region.
double ocsvm_decision(const OcSvmModel& model, std::span<const double> x);
/// -decision, so exterior points score positive.
ScoreSeries ocsvm_score(const OcSvmModel& model, const WindowFrame& test);

// ---------------------------------------------------------------------------
// Gradient-boosted regression trees

struct GbtNode {
  int feature = -1;  // -1 marks a leaf
  double threshold = 0.0;
  int left = -1;
  int right = -1;
  double value = 0.0;  // leaf weight, already scaled by the learning rate
};

struct GbtTree {
  std::vector<GbtNode> nodes;
};

struct GbtOptions {
  std::size_t n_estimators = 1000;
  int max_depth = 3;
  double learning_rate = 0.1;
  double lambda = 1.0;
  double gamma = 0.0;
};

struct GbtModel {
  GbtOptions options;
  std::size_t width = 0;
  double base_score = 0.0;
  std::vector<GbtTree> trees;
  std::vector<double> train_loss;  // squared error plus tree penalties, per round
};

/// Squared-error boosting: g = yhat - y, h = 1, exact greedy splits.
GbtModel gbt_fit(const WindowFrame& train, const GbtOptions& options = {});
double gbt_predict(const GbtModel& model, std::span<const double> x);
ScoreSeries gbt_score(const GbtModel& model, const WindowFrame& test);

}  // namespace tsad

#endif  // TSAD_ML_HPP
