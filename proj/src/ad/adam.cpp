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

#include "tdcr/ad/adam.hpp"

#include <cmath>
#include <stdexcept>

namespace tdcr::ad {

Adam::Adam(AdamConfig cfg, const ParamStore& store) : cfg_(cfg) {
  if (cfg_.lr <= 0.0 || cfg_.eps <= 0.0 || cfg_.beta1 < 0.0 || cfg_.beta1 >= 1.0 ||
      cfg_.beta2 < 0.0 || cfg_.beta2 >= 1.0) {
    throw std::invalid_argument("Adam: invalid hyperparameters");
  }
  m_.reserve(store.count());
  v_.reserve(store.count());
  for (int i = 0; i < store.count(); ++i) {
    m_.emplace_back(store.value(i).rows(), store.value(i).cols());
    v_.emplace_back(store.value(i).rows(), store.value(i).cols());
  }
}

void Adam::step(ParamStore& store) {
  if (static_cast<int>(m_.size()) != store.count()) {
    throw std::invalid_argument("Adam: store layout changed");
  }
  ++t_;
  const double bc1 = 1.0 - std::pow(cfg_.beta1, static_cast<double>(t_));
  const double bc2 = 1.0 - std::pow(cfg_.beta2, static_cast<double>(t_));
  for (int i = 0; i < store.count(); ++i) {
    Tensor& p = store.value(i);
    const Tensor& g = store.grad(i);
    if (!p.same_shape(g)) throw std::invalid_argument("Adam: gradient shape mismatch");
    Tensor& m = m_[i];
    Tensor& v = v_[i];
    for (std::size_t k = 0; k < p.size(); ++k) {
      const double gk = g.data()[k];
      m.data()[k] = cfg_.beta1 * m.data()[k] + (1.0 - cfg_.beta1) * gk;
      v.data()[k] = cfg_.beta2 * v.data()[k] + (1.0 - cfg_.beta2) * gk * gk;
      const double m_hat = m.data()[k] / bc1;
      const double v_hat = v.data()[k] / bc2;
      p.data()[k] -= cfg_.lr * m_hat / (std::sqrt(v_hat) + cfg_.eps);
    }
  }
}

}  // namespace tdcr::ad
