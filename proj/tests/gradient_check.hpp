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

// Central finite-difference check of DenseNet::loss gradients.

#ifndef TSAD_TESTS_GRADIENT_CHECK_HPP
#define TSAD_TESTS_GRADIENT_CHECK_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "tsad/neural.hpp"

namespace tsad::testing {

// Gradients below this magnitude are compared absolutely.
constexpr double kGradientFloor = 1e-7;

inline double relative_gap(double analytic, double numeric) {
  const double scale = std::max({std::abs(analytic), std::abs(numeric), kGradientFloor});
  return std::abs(analytic - numeric) / scale;
}

// Mean squared error of `net` evaluated independently in long double, so the
// difference quotient below is not swamped by double rounding.
inline long double oracle_loss(const DenseNet& net, const Eigen::MatrixXd& x,
                               const Eigen::MatrixXd& y) {
  long double total = 0.0L;
  for (Eigen::Index s = 0; s < x.cols(); ++s) {
    std::vector<long double> a(x.col(s).data(), x.col(s).data() + x.rows());
    for (const auto& layer : net.layers()) {
      std::vector<long double> z(static_cast<std::size_t>(layer.weights.rows()));
      for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
        long double v = layer.bias(r);
        for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) {
          v += static_cast<long double>(layer.weights(r, c)) * a[static_cast<std::size_t>(c)];
        }
        z[static_cast<std::size_t>(r)] =
            layer.activation == Activation::kRelu && v < 0.0L ? 0.0L : v;
      }
      a = std::move(z);
    }
    for (Eigen::Index r = 0; r < y.rows(); ++r) {
      const long double d = a[static_cast<std::size_t>(r)] - y(r, s);
      total += d * d;
    }
  }
  return total / static_cast<long double>(y.size());
}

// Largest relative gap between backprop and central differences over every
// weight and bias of `net` on the batch (one sample per column).
inline double max_gradient_gap(const DenseNet& net, const Eigen::MatrixXd& x,
                               const Eigen::MatrixXd& y, double h = 1e-6) {
  std::vector<LayerGradient> grads;
  net.loss(x, y, &grads);
  DenseNet probe = net;
  double worst = 0.0;
  auto numeric = [&](double& param) {
    const double saved = param;
    param = saved + h;
    const long double up = oracle_loss(probe, x, y);
    param = saved - h;
    const long double down = oracle_loss(probe, x, y);
    param = saved;
    return static_cast<double>((up - down) / (2.0L * h));
  };
  for (std::size_t l = 0; l < probe.layers().size(); ++l) {
    auto& layer = probe.layers()[l];
    for (Eigen::Index r = 0; r < layer.weights.rows(); ++r) {
      for (Eigen::Index c = 0; c < layer.weights.cols(); ++c) {
        worst = std::max(worst, relative_gap(grads[l].weights(r, c), numeric(layer.weights(r, c))));
      }
      worst = std::max(worst, relative_gap(grads[l].bias(r), numeric(layer.bias(r))));
    }
  }
  return worst;
}

struct GradientCase {
  DenseNet net;
  Eigen::MatrixXd inputs;
  Eigen::MatrixXd targets;
};

// Seeded configuration: the MLP and autoencoder shapes plus small random
// stacks, alternating relu and linear hidden layers. Three samples per batch.
inline GradientCase gradient_case(std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::size_t> dims;
  std::vector<Activation> acts;
  switch (seed % 4) {
    case 0:
      dims = {10, 100, 50, 1};
      acts = {Activation::kRelu, Activation::kRelu, Activation::kLinear};
      break;
    case 1:
      dims = {20, 32, 16, 32, 20};
      acts = {Activation::kRelu, Activation::kRelu, Activation::kRelu, Activation::kLinear};
      break;
    default: {
      std::uniform_int_distribution<std::size_t> size(1, 8);
      const std::size_t depth = 1 + seed % 3;
      dims.push_back(size(rng));
      for (std::size_t l = 0; l < depth; ++l) {
        dims.push_back(size(rng));
        acts.push_back((l + seed) % 2 == 0 ? Activation::kRelu : Activation::kLinear);
      }
    }
  }
  GradientCase out{DenseNet(dims, acts, seed), {}, {}};
  std::normal_distribution<double> n01(0.0, 1.0);
  std::uniform_real_distribution<double> u(-0.5, 0.5);
  out.inputs.resize(static_cast<Eigen::Index>(dims.front()), 3);
  out.targets.resize(static_cast<Eigen::Index>(dims.back()), 3);
  for (Eigen::Index i = 0; i < out.inputs.size(); ++i) out.inputs(i) = n01(rng);
  for (Eigen::Index i = 0; i < out.targets.size(); ++i) out.targets(i) = n01(rng);
  // Non-zero biases so relu units are not all decided by the weights alone.
  for (auto& layer : out.net.layers()) {
    for (Eigen::Index i = 0; i < layer.bias.size(); ++i) layer.bias(i) = u(rng);
  }
  return out;
}

}  // namespace tsad::testing

#endif  // TSAD_TESTS_GRADIENT_CHECK_HPP
