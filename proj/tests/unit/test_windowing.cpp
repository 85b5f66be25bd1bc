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

#include "doctest.h"
#include "support.hpp"
#include "tsad/windowing.hpp"

using namespace tsad;
using tsad::testing::code_of;

TEST_CASE("frame enumerates windows and next-point targets") {
  const WindowFrame f = frame(TimeSeries({1, 2, 3, 4}), 2);
  CHECK(f.rows() == 2);
  CHECK(f.data == std::vector<double>{1, 2, 2, 3});
  CHECK(f.targets == std::vector<double>{3, 4});
  CHECK(f.target_indices == std::vector<std::size_t>{2, 3});
}

TEST_CASE("frame count is length minus width") {
  std::vector<double> v(1421);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = static_cast<double>(i % 17);
  CHECK(frame(TimeSeries(v), 30).rows() == 1391);
  CHECK(frame(TimeSeries(v), 30, 1).rows() == v.size() - 30);
}

TEST_CASE("frame rejects series without a target") {
  CHECK(code_of([] { frame(TimeSeries({5, 5}), 2); }) == ErrorCode::kSeriesTooShort);
  CHECK(code_of([] { frame(TimeSeries({1, 2, 3}), 0); }) != ErrorCode::kOk);
}

TEST_CASE("frame round-trips the series suffix at stride 1") {
  const auto x = tsad::testing::gaussian(97, 11);
  for (std::size_t w : {1u, 5u, 30u}) {
    const WindowFrame f = frame(TimeSeries(x), w);
    std::vector<double> rebuilt(f.window(0).begin(), f.window(0).end());
    for (std::size_t i = 0; i < f.rows(); ++i) rebuilt.push_back(f.targets[i]);
    CHECK(rebuilt == x);
    for (std::size_t i = 0; i < f.rows(); ++i) {
      CHECK(f.target_indices[i] == i + w);
      CHECK(f.window(i)[w - 1] == x[i + w - 1]);
    }
  }
}

TEST_CASE("frame honours the stride") {
  const WindowFrame f = frame(TimeSeries({0, 1, 2, 3, 4, 5, 6}), 2, 2);
  CHECK(f.target_indices == std::vector<std::size_t>{2, 4, 6});
  CHECK(f.stride == 2);
}

TEST_CASE("with_targets appends the target as the last column") {
  const WindowFrame f = with_targets(frame(TimeSeries({1, 2, 3, 4}), 2));
  CHECK(f.width == 3);
  CHECK(f.data == std::vector<double>{1, 2, 3, 2, 3, 4});
  CHECK(f.target_indices == std::vector<std::size_t>{2, 3});
}

TEST_CASE("binarize uses a strict inequality") {
  CHECK(binarize(std::vector<double>{0.1, 0.9, 0.5}, {0.5}) == std::vector<Label>{0, 1, 0});
  CHECK(binarize(std::vector<double>{-1, -2}, {0.0}) == std::vector<Label>{0, 0});
  CHECK(binarize(std::vector<double>{3, 3, 3}, {2.999}) == std::vector<Label>{1, 1, 1});
}

TEST_CASE("raising delta never adds a positive") {
  const auto s = tsad::testing::gaussian(300, 5);
  std::vector<Label> prev = binarize(s, {-4.0});
  for (double d = -4.0; d <= 4.0; d += 0.25) {
    const auto cur = binarize(s, {d});
    for (std::size_t i = 0; i < s.size(); ++i) CHECK(cur[i] <= prev[i]);
    prev = cur;
  }
}
