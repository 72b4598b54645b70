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

#ifndef TDCR_AD_GRAD_CHECK_HPP_
#define TDCR_AD_GRAD_CHECK_HPP_

#include <functional>
#include <string>

#include "tdcr/ad/tape.hpp"

namespace tdcr::ad {

struct GradCheckReport {
  double max_rel_err = 0.0;
  std::string worst_param;
  int worst_flat_index = -1;
  double backward_value = 0.0;
  double central_diff_value = 0.0;
  std::size_t checked = 0;
};

// Compares backward() gradients against central finite differences for every
// scalar in `params`. `build` must construct a scalar loss on the given tape
// from the store's current values; it is re-invoked per perturbation.
//
// Relative error uses the damped form |a-b| clamped by atol over |a|+|b|+atol,
// which ignores differences below the finite-difference noise floor.
GradCheckReport grad_check(const std::function<Var(Tape&)>& build,
                           ParamStore& params, double h = 1e-5,
                           double atol = 1e-7);

}  // namespace tdcr::ad

#endif  // TDCR_AD_GRAD_CHECK_HPP_
