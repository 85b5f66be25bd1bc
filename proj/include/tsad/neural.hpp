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


#ifndef TSAD_NEURAL_HPP
#define TSAD_NEURAL_HPP

#include <Eigen/Dense>
#include <cstdint>
#include <vector>

namespace tsad {

enum class Activation { kLinear, kRelu };

struct DenseLayer {
  Eigen::MatrixXd weights;  // out x in
  Eigen::VectorXd bias;
  Activation activation = Activation::kLinear;
};

struct LayerGradient {
  Eigen::MatrixXd weights;
  Eigen::VectorXd bias;
};

struct TrainSpec {
  std::size_t batch_size = 32;
  std::size_t epochs = 50;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::uint64_t seed = 0;
};

class DenseNet {
 public:
  DenseNet() = default;
  /// Glorot-uniform weights, zero biases. `dims` has one more entry than
  /// `activations`.
  DenseNet(const std::vector<std::size_t>& dims, const std::vector<Activation>& activations,
           std::uint64_t seed);
  explicit DenseNet(std::vector<DenseLayer> layers);

  std::size_t input_dim() const;
  std::size_t output_dim() const;
  const std::vector<DenseLayer>& layers() const noexcept { return layers_; }
  std::vector<DenseLayer>& layers() noexcept { return layers_; }

  /// Throws kDimensionMismatch on a wrong input length.
  Eigen::VectorXd forward(const Eigen::VectorXd& input) const;
  /// One sample per column.
  Eigen::MatrixXd forward_batch(const Eigen::MatrixXd& inputs) const;

  /// Mean squared error over all samples and outputs (one sample per column)
  /// and, when `gradients` is non-null, its gradient for every layer.
  double loss(const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& targets,
              std::vector<LayerGradient>* gradients = nullptr) const;

 private:
  std::vector<DenseLayer> layers_;
};

/// Mini-batch Adam on the squared error; samples are columns. Rows are
/// shuffled each epoch with the seeded RNG. Returns the mean loss of each
/// epoch. Throws kNumericalDivergence when the loss turns non-finite and
/// kInvalidArgument for an invalid spec or empty data.
std::vector<double> net_train(DenseNet& net, const Eigen::MatrixXd& inputs,
                              const Eigen::MatrixXd& targets, const TrainSpec& spec);

}  // namespace tsad

#endif  // TSAD_NEURAL_HPP
