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

#ifndef TDCR_AD_TENSOR_HPP_
#define TDCR_AD_TENSOR_HPP_

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "tdcr/util/rng.hpp"

namespace tdcr::ad {

// Dense row-major matrix of f64. Rank-2 covers every shape in this codebase;
// vectors are 1xN rows. Construction from explicit data rejects NaN/Inf.
class Tensor {
 public:
  Tensor() = default;
  Tensor(int rows, int cols);  // zero-filled
  Tensor(int rows, int cols, std::vector<double> values);

  static Tensor scalar(double v);
  static Tensor row(std::initializer_list<double> v);
  static Tensor row(const std::vector<double>& v);
  static Tensor filled(int rows, int cols, double v);
  // Uniform in [-1/sqrt(fan_in), 1/sqrt(fan_in)].
  static Tensor scaled_uniform(int rows, int cols, int fan_in, Rng& rng);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  std::size_t size() const { return data_.size(); }
  bool empty() const { return data_.empty(); }
  bool same_shape(const Tensor& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_;
  }

  double& operator()(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
  const double& operator()(int r, int c) const {
    return data_[static_cast<std::size_t>(r) * cols_ + c];
  }
  double* data() { return data_.data(); }
  const double* data() const { return data_.data(); }

  void set_zero();
  bool all_finite() const;

  bool operator==(const Tensor& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

}  // namespace tdcr::ad

#endif  // TDCR_AD_TENSOR_HPP_
