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

#include "tdcr/nn/normalizer.hpp"

#include <cmath>
#include <stdexcept>

namespace tdcr::nn {

Normalizer::Normalizer(std::vector<double> mean, std::vector<double> stddev)
    : mean_(std::move(mean)), stddev_(std::move(stddev)) {
  if (mean_.size() != stddev_.size()) {
    throw std::invalid_argument("Normalizer: mean/std length mismatch");
  }
  for (double s : stddev_) {
    if (!(s > 0.0)) throw std::invalid_argument("Normalizer: std must be positive");
  }
}

void Normalizer::normalize(std::span<const double> in, std::span<double> out) const {
  if (in.size() != mean_.size() || out.size() != mean_.size()) {
    throw std::invalid_argument("Normalizer: feature count mismatch");
  }
  for (std::size_t i = 0; i < mean_.size(); ++i) {
    out[i] = (in[i] - mean_[i]) / stddev_[i];
  }
}

void Normalizer::denormalize(std::span<const double> in, std::span<double> out) const {
  if (in.size() != mean_.size() || out.size() != mean_.size()) {
    throw std::invalid_argument("Normalizer: feature count mismatch");
  }
  for (std::size_t i = 0; i < mean_.size(); ++i) {
    out[i] = in[i] * stddev_[i] + mean_[i];
  }
}

std::vector<double> Normalizer::normalize(std::span<const double> in) const {
  std::vector<double> out(mean_.size());
  normalize(in, out);
  return out;
}

std::vector<double> Normalizer::denormalize(std::span<const double> in) const {
  std::vector<double> out(mean_.size());
  denormalize(in, out);
  return out;
}

ad::Tensor Normalizer::mean_row(int start, int len) const {
  if (start < 0 || len <= 0 || start + len > features()) {
    throw std::invalid_argument("Normalizer: range out of bounds");
  }
  ad::Tensor t(1, len);
  for (int i = 0; i < len; ++i) t(0, i) = mean_[start + i];
  return t;
}

ad::Tensor Normalizer::inv_std_row(int start, int len) const {
  if (start < 0 || len <= 0 || start + len > features()) {
    throw std::invalid_argument("Normalizer: range out of bounds");
  }
  ad::Tensor t(1, len);
  for (int i = 0; i < len; ++i) t(0, i) = 1.0 / stddev_[start + i];
  return t;
}

ad::Tensor Normalizer::std_row(int start, int len) const {
  if (start < 0 || len <= 0 || start + len > features()) {
    throw std::invalid_argument("Normalizer: range out of bounds");
  }
  ad::Tensor t(1, len);
  for (int i = 0; i < len; ++i) t(0, i) = stddev_[start + i];
  return t;
}

RunningStats::RunningStats(int features) : mean_(features, 0.0), m2_(features, 0.0) {
  if (features <= 0) throw std::invalid_argument("RunningStats: features must be positive");
}

void RunningStats::add(std::span<const double> sample) {
  if (sample.size() != mean_.size()) {
    throw std::invalid_argument("RunningStats: feature count mismatch");
  }
  ++count_;
  for (std::size_t i = 0; i < mean_.size(); ++i) {
    const double delta = sample[i] - mean_[i];
    mean_[i] += delta / static_cast<double>(count_);
    m2_[i] += delta * (sample[i] - mean_[i]);
  }
}

Normalizer RunningStats::finalize() const {
  if (count_ == 0) throw std::runtime_error("RunningStats: no samples");
  std::vector<double> stddev(mean_.size(), 1.0);
  for (std::size_t i = 0; i < mean_.size(); ++i) {
    const double var = m2_[i] / static_cast<double>(count_);
    if (var > 0.0) stddev[i] = std::sqrt(var);
  }
  return Normalizer(mean_, std::move(stddev));
}

}  // namespace tdcr::nn
