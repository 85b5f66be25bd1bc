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

#ifndef TSAD_SRC_LINEAR_REGRESSION_HPP
#define TSAD_SRC_LINEAR_REGRESSION_HPP

#include <Eigen/Dense>

namespace tsad::detail {

struct OlsResult {
  Eigen::VectorXd beta;
  double rss = 0.0;
};

// Least squares via column-pivoted QR. Throws kSingularDesign when the design
// is rank deficient.
OlsResult least_squares(const Eigen::MatrixXd& design, const Eigen::VectorXd& target);

}  // namespace tsad::detail

#endif  // TSAD_SRC_LINEAR_REGRESSION_HPP
