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

#include "linear_regression.hpp"

#include "tsad/error.hpp"

namespace tsad::detail {

OlsResult least_squares(const Eigen::MatrixXd& design, const Eigen::VectorXd& target) {
  if (design.rows() < design.cols()) {
    fail(ErrorCode::kSingularDesign, "fewer equations than unknowns");
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(design);
  qr.setThreshold(1e-10);
  if (qr.rank() < design.cols()) {
    fail(ErrorCode::kSingularDesign, "design matrix is rank deficient (rank " +
                                         std::to_string(qr.rank()) + " of " +
                                         std::to_string(design.cols()) + ")");
  }
  OlsResult out;
  out.beta = qr.solve(target);
  out.rss = (target - design * out.beta).squaredNorm();
  return out;
}

}  // namespace tsad::detail
