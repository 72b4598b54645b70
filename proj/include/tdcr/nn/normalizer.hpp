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

#ifndef TDCR_NN_NORMALIZER_HPP_
#define TDCR_NN_NORMALIZER_HPP_

#include <span>
#include <vector>

#include "tdcr/ad/tensor.hpp"

namespace tdcr::nn {

// Per-feature z-scoring from dataset statistics. Features with zero variance
// get std = 1 so constant channels pass through unscaled.
class Normalizer {
 public:
  Normalizer() = default;
  Normalizer(std::vector<double> mean, std::vector<double> stddev);

  int features() const { return static_cast<int>(mean_.size()); }
  const std::vector<double>& mean() const { return mean_; }
  const std::vector<double>& stddev() const { return stddev_; }

  void normalize(std::span<const double> in, std::span<double> out) const;
  void denormalize(std::span<const double> in, std::span<double> out) const;
  std::vector<double> normalize(std::span<const double> in) const;
  std::vector<double> denormalize(std::span<const double> in) const;

  // Row tensors over a feature range [start, start+len), for tape constants.
  ad::Tensor mean_row(int start, int len) const;
  ad::Tensor inv_std_row(int start, int len) const;
  ad::Tensor std_row(int start, int len) const;

 private:
  std::vector<double> mean_;
  std::vector<double> stddev_;
};

// Streaming per-feature mean/variance (Welford).
class RunningStats {
 public:
  explicit RunningStats(int features);
  void add(std::span<const double> sample);
  long long count() const { return count_; }
  Normalizer finalize() const;

 private:
  long long count_ = 0;
  std::vector<double> mean_;
  std::vector<double> m2_;
};

}  // namespace tdcr::nn

#endif  // TDCR_NN_NORMALIZER_HPP_
