// Copyright 2026 The tdcr-learn Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tdcr/ad/tensor.hpp"

#include <cmath>
#include <stdexcept>

namespace tdcr::ad {

Tensor::Tensor(int rows, int cols) : rows_(rows), cols_(cols) {
  if (rows <= 0 || cols <= 0) {
    throw std::invalid_argument("Tensor: dimensions must be positive");
  }
  data_.assign(static_cast<std::size_t>(rows) * cols, 0.0);
}

Tensor::Tensor(int rows, int cols, std::vector<double> values)
    : rows_(rows), cols_(cols), data_(std::move(values)) {
  if (rows <= 0 || cols <= 0) {
    throw std::invalid_argument("Tensor: dimensions must be positive");
  }
  if (data_.size() != static_cast<std::size_t>(rows) * cols) {
    throw std::invalid_argument("Tensor: data length does not match shape");
  }
  if (!all_finite()) {
    throw std::invalid_argument("Tensor: non-finite entry rejected");
  }
}

Tensor Tensor::scalar(double v) { return Tensor(1, 1, {v}); }

Tensor Tensor::row(std::initializer_list<double> v) {
  return Tensor(1, static_cast<int>(v.size()), std::vector<double>(v));
}

Tensor Tensor::row(const std::vector<double>& v) {
  return Tensor(1, static_cast<int>(v.size()), v);
}

Tensor Tensor::filled(int rows, int cols, double v) {
  Tensor t(rows, cols);
  for (auto& x : t.data_) x = v;
  if (!t.all_finite()) throw std::invalid_argument("Tensor: non-finite fill");
  return t;
}

Tensor Tensor::scaled_uniform(int rows, int cols, int fan_in, Rng& rng) {
  Tensor t(rows, cols);
  const double bound = 1.0 / std::sqrt(static_cast<double>(fan_in > 0 ? fan_in : 1));
  for (auto& x : t.data_) x = rng.uniform(-bound, bound);
  return t;
}

void Tensor::set_zero() {
  for (auto& x : data_) x = 0.0;
}

bool Tensor::all_finite() const {
  for (double x : data_) {
    if (!std::isfinite(x)) return false;
  }
  return true;
}

}  // namespace tdcr::ad
