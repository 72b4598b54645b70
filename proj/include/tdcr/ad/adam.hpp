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

#ifndef TDCR_AD_ADAM_HPP_
#define TDCR_AD_ADAM_HPP_

#include <cstdint>
#include <vector>

#include "tdcr/ad/tape.hpp"

namespace tdcr::ad {

struct AdamConfig {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

// Adam with bias correction over a ParamStore. Moment tensors mirror the
// parameter shapes; the step count is shared across parameters.
class Adam {
 public:
  Adam(AdamConfig cfg, const ParamStore& store);

  // Applies one update from the store's accumulated gradients.
  void step(ParamStore& store);

  std::int64_t step_count() const { return t_; }
  const AdamConfig& config() const { return cfg_; }
  void set_lr(double lr) { cfg_.lr = lr; }

 private:
  AdamConfig cfg_;
  std::int64_t t_ = 0;
  std::vector<Tensor> m_;
  std::vector<Tensor> v_;
};

}  // namespace tdcr::ad

#endif  // TDCR_AD_ADAM_HPP_
