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

#ifndef TDCR_NN_STACKED_HPP_
#define TDCR_NN_STACKED_HPP_

#include <string>
#include <vector>

#include "tdcr/ad/tape.hpp"
#include "tdcr/nn/cells.hpp"
#include "tdcr/util/rng.hpp"

namespace tdcr::nn {

struct StackedRnnConfig {
  CellKind cell = CellKind::kGru;
  int layers = 4;
  int input_dim = 0;
  int hidden_dim = 64;
  double dropout = 0.3;
  double ln_eps = 1e-5;
};

// Inverted dropout: zeros entries with probability `rate` and rescales
// survivors by 1/(1-rate) when training; identity in eval mode.
ad::Var dropout_apply(ad::Tape& tape, double rate, ad::Var x, Rng& rng,
                      bool training);

// Stack of recurrent layers; after each layer LayerNorm is applied, and the
// stream feeding the next layer additionally passes tanh and dropout. The
// top layer's LayerNorm output is the stack output; hidden states propagate
// unnormalized.
class StackedRnn {
 public:
  StackedRnn(ad::ParamStore& store, StackedRnnConfig cfg, std::string prefix,
             Rng& init_rng);

  const StackedRnnConfig& config() const { return cfg_; }

  // Per-tape leaf bindings. When frozen, parameters bind as constants so no
  // gradient is accumulated for them.
  struct Bound {
    std::vector<GruVars> gru;
    std::vector<LstmVars> lstm;
    std::vector<RnnVars> rnn;
    std::vector<std::pair<ad::Var, ad::Var>> ln;  // gain, shift per layer
  };
  Bound bind(ad::Tape& tape, bool frozen = false) const;

  // Hidden state handles on a tape (one per layer; cell states for LSTM).
  struct StateVars {
    std::vector<ad::Var> h;
    std::vector<ad::Var> c;
  };
  StateVars zero_state(ad::Tape& tape, int batch) const;
  // Re-enters previously computed state values as constants on a new tape.
  StateVars state_from_values(ad::Tape& tape,
                              const std::vector<ad::Tensor>& h,
                              const std::vector<ad::Tensor>& c) const;

  // One time step; returns the top-layer output and updates `state` in place.
  ad::Var step(ad::Tape& tape, const Bound& bound, ad::Var x, StateVars& state,
               bool training, Rng* dropout_rng) const;

 private:
  ad::ParamStore* store_;
  StackedRnnConfig cfg_;
  std::string prefix_;
  struct LayerIds {
    std::vector<int> cell;  // gate parameter indices, kind-dependent order
    int ln_gain = -1;
    int ln_shift = -1;
  };
  std::vector<LayerIds> layers_;
};

}  // namespace tdcr::nn

#endif  // TDCR_NN_STACKED_HPP_
