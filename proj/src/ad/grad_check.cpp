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

#include "tdcr/ad/grad_check.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace tdcr::ad {

GradCheckReport grad_check(const std::function<Var(Tape&)>& build,
                           ParamStore& params, double h, double atol) {
  if (h <= 0.0) throw std::invalid_argument("grad_check: h must be positive");

  params.zero_grads();
  {
    Tape tape;
    Var loss = build(tape);
    tape.backward(loss);
  }
  std::vector<Tensor> analytic;
  analytic.reserve(params.count());
  for (int i = 0; i < params.count(); ++i) analytic.push_back(params.grad(i));

  auto eval = [&]() {
    Tape tape;
    Var loss = build(tape);
    return tape.value(loss)(0, 0);
  };

  GradCheckReport report;
  for (int i = 0; i < params.count(); ++i) {
    Tensor& value = params.value(i);
    for (std::size_t k = 0; k < value.size(); ++k) {
      const double original = value.data()[k];
      value.data()[k] = original + h;
      const double up = eval();
      value.data()[k] = original - h;
      const double down = eval();
      value.data()[k] = original;

      const double fd = (up - down) / (2.0 * h);
      const double bp = analytic[i].data()[k];
      const double num = std::max(0.0, std::abs(bp - fd) - atol);
      const double rel = num / (std::abs(bp) + std::abs(fd) + atol);
      ++report.checked;
      if (rel > report.max_rel_err) {
        report.max_rel_err = rel;
        report.worst_param = params.name(i);
        report.worst_flat_index = static_cast<int>(k);
        report.backward_value = bp;
        report.central_diff_value = fd;
      }
    }
  }
  params.zero_grads();
  return report;
}

}  // namespace tdcr::ad
