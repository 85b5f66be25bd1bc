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
#include "tsad/neural.hpp"

namespace tsad {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

void activate(MatrixXd& z, Activation a) {
  if (a == Activation::kRelu) z = z.cwiseMax(0.0);
}

}  // namespace

DenseNet::DenseNet(const std::vector<std::size_t>& dims,
                   const std::vector<Activation>& activations, std::uint64_t seed) {
  if (dims.size() != activations.size() + 1 || activations.empty()) {
    fail(ErrorCode::kInvalidArgument, "layer dimensions and activations do not chain");
  }
  std::mt19937_64 rng(seed);
  for (std::size_t l = 0; l < activations.size(); ++l) {
    const auto in = static_cast<Eigen::Index>(dims[l]);
    const auto out = static_cast<Eigen::Index>(dims[l + 1]);
    if (in < 1 || out < 1) fail(ErrorCode::kInvalidArgument, "layer sizes must be positive");
    const double limit = std::sqrt(6.0 / static_cast<double>(in + out));
    std::uniform_real_distribution<double> u(-limit, limit);
    DenseLayer layer;
    layer.weights.resize(out, in);
    for (Eigen::Index r = 0; r < out; ++r) {
      for (Eigen::Index c = 0; c < in; ++c) layer.weights(r, c) = u(rng);
    }
    layer.bias = VectorXd::Zero(out);
    layer.activation = activations[l];
    layers_.push_back(std::move(layer));
  }
}

DenseNet::DenseNet(std::vector<DenseLayer> layers) : layers_(std::move(layers)) {
  if (layers_.empty()) fail(ErrorCode::kInvalidArgument, "network has no layers");
  for (std::size_t l = 0; l < layers_.size(); ++l) {
    if (layers_[l].bias.size() != layers_[l].weights.rows() ||
        (l > 0 && layers_[l].weights.cols() != layers_[l - 1].weights.rows())) {
      fail(ErrorCode::kDimensionMismatch, "layer " + std::to_string(l) + " does not chain");
    }
  }
}

std::size_t DenseNet::input_dim() const {
  return layers_.empty() ? 0 : static_cast<std::size_t>(layers_.front().weights.cols());
}

std::size_t DenseNet::output_dim() const {
  return layers_.empty() ? 0 : static_cast<std::size_t>(layers_.back().weights.rows());
}

VectorXd DenseNet::forward(const VectorXd& input) const {
  return forward_batch(input);
}

MatrixXd DenseNet::forward_batch(const MatrixXd& inputs) const {
  if (static_cast<std::size_t>(inputs.rows()) != input_dim()) {
    fail(ErrorCode::kDimensionMismatch, "input has " + std::to_string(inputs.rows()) +
                                            " values, network expects " +
                                            std::to_string(input_dim()));
  }
  MatrixXd a = inputs;
  for (const auto& layer : layers_) {
    MatrixXd z = layer.weights * a;
    z.colwise() += layer.bias;
    activate(z, layer.activation);
    a = std::move(z);
  }
  return a;
}

double DenseNet::loss(const MatrixXd& inputs, const MatrixXd& targets,
                      std::vector<LayerGradient>* gradients) const {
  if (static_cast<std::size_t>(inputs.rows()) != input_dim() ||
      static_cast<std::size_t>(targets.rows()) != output_dim() ||
      inputs.cols() != targets.cols()) {
    fail(ErrorCode::kDimensionMismatch, "batch shape does not match the network");
  }
  // Keep every activation for the backward pass.
  std::vector<MatrixXd> acts;
  acts.reserve(layers_.size() + 1);
  acts.push_back(inputs);
  for (const auto& layer : layers_) {
    MatrixXd z = layer.weights * acts.back();
    z.colwise() += layer.bias;
    activate(z, layer.activation);
    acts.push_back(std::move(z));
  }
  const double count = static_cast<double>(targets.size());
  const MatrixXd diff = acts.back() - targets;
  const double value = diff.squaredNorm() / count;
  if (!gradients) return value;

  gradients->resize(layers_.size());
  MatrixXd delta = (2.0 / count) * diff;
  for (std::size_t l = layers_.size(); l-- > 0;) {
    const DenseLayer& layer = layers_[l];
    if (layer.activation == Activation::kRelu) {
      delta = delta.cwiseProduct((acts[l + 1].array() > 0.0).cast<double>().matrix());
    }
    (*gradients)[l].weights = delta * acts[l].transpose();
    (*gradients)[l].bias = delta.rowwise().sum();
    if (l > 0) delta = layer.weights.transpose() * delta;
  }
  return value;
}

std::vector<double> net_train(DenseNet& net, const MatrixXd& inputs, const MatrixXd& targets,
                              const TrainSpec& spec) {
  if (spec.batch_size < 1 || spec.epochs < 1) {
    fail(ErrorCode::kInvalidArgument, "batch size and epochs must be >= 1");
  }
  const auto n = static_cast<std::size_t>(inputs.cols());
  if (n == 0) fail(ErrorCode::kInvalidArgument, "no training samples");

  auto& layers = net.layers();
  std::vector<LayerGradient> m(layers.size()), v(layers.size()), grads;
  for (std::size_t l = 0; l < layers.size(); ++l) {
    m[l].weights = MatrixXd::Zero(layers[l].weights.rows(), layers[l].weights.cols());
    m[l].bias = VectorXd::Zero(layers[l].bias.size());
    v[l] = m[l];
  }
  std::mt19937_64 rng(spec.seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<double> history;
  long step = 0;
  MatrixXd bx, by;
  for (std::size_t epoch = 0; epoch < spec.epochs; ++epoch) {
    std::shuffle(order.begin(), order.end(), rng);
    double total = 0.0;
    for (std::size_t start = 0; start < n; start += spec.batch_size) {
      const std::size_t size = std::min(spec.batch_size, n - start);
      bx.resize(inputs.rows(), static_cast<Eigen::Index>(size));
      by.resize(targets.rows(), static_cast<Eigen::Index>(size));
      for (std::size_t i = 0; i < size; ++i) {
        const auto c = static_cast<Eigen::Index>(order[start + i]);
        bx.col(static_cast<Eigen::Index>(i)) = inputs.col(c);
        by.col(static_cast<Eigen::Index>(i)) = targets.col(c);
      }
      const double batch_loss = net.loss(bx, by, &grads);
      if (!std::isfinite(batch_loss)) {
        fail(ErrorCode::kNumericalDivergence,
             "training loss became non-finite in epoch " + std::to_string(epoch + 1));
      }
      total += batch_loss * static_cast<double>(size);
      ++step;
      const double c1 = 1.0 - std::pow(spec.beta1, static_cast<double>(step));
      const double c2 = 1.0 - std::pow(spec.beta2, static_cast<double>(step));
      auto update = [&](auto& param, auto& mom, auto& vel, const auto& g) {
        mom = spec.beta1 * mom + (1.0 - spec.beta1) * g;
        vel = spec.beta2 * vel + (1.0 - spec.beta2) * g.cwiseAbs2();
        param.array() -= spec.learning_rate * (mom.array() / c1) /
                         ((vel.array() / c2).sqrt() + spec.epsilon);
      };
      for (std::size_t l = 0; l < layers.size(); ++l) {
        update(layers[l].weights, m[l].weights, v[l].weights, grads[l].weights);
        update(layers[l].bias, m[l].bias, v[l].bias, grads[l].bias);
      }
    }
    const double mean = total / static_cast<double>(n);
    if (!std::isfinite(mean)) {
      fail(ErrorCode::kNumericalDivergence,
           "training loss became non-finite in epoch " + std::to_string(epoch + 1));
    }
    history.push_back(mean);
  }
  return history;
}

}  // namespace tsad
