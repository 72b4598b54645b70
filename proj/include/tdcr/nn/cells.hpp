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

#ifndef TDCR_NN_CELLS_HPP_
#define TDCR_NN_CELLS_HPP_

#include <string>
#include <utility>

#include "tdcr/ad/tape.hpp"

namespace tdcr::nn {

enum class CellKind { kGru, kLstm, kRnn };

CellKind cell_kind_from_string(const std::string& s);
std::string to_string(CellKind kind);

// Gate parameters bound to one tape. Update/reset gates act on [x; h];
// the candidate keeps separate input and recurrent maps so the reset gate
// can be applied inside the recurrent term.
struct GruVars {
  ad::Var wz, bz;  // update gate, (I+H)xH and 1xH
  ad::Var wr, br;  // reset gate
  ad::Var wn, bn;  // candidate input map, IxH
  ad::Var un, cn;  // candidate recurrent map, HxH
};

struct LstmVars {
  ad::Var wi, bi;  // input gate over [x; h]
  ad::Var wf, bf;  // forget gate
  ad::Var wo, bo;  // output gate
  ad::Var wg, bg;  // cell candidate
};

struct RnnVars {
  ad::Var w, b;  // (I+H)xH and 1xH
};

// z = s(Wz[x;h]+bz); r = s(Wr[x;h]+br); n = tanh(Wn x + bn + r*(Un h + cn));
// h' = (1-z)*n + z*h.
ad::Var gru_cell_step(ad::Tape& tape, const GruVars& p, ad::Var x, ad::Var h);

// Standard LSTM; returns (h', c').
std::pair<ad::Var, ad::Var> lstm_cell_step(ad::Tape& tape, const LstmVars& p,
                                           ad::Var x, ad::Var h, ad::Var c);

// h' = tanh(W[x;h] + b).
ad::Var rnn_cell_step(ad::Tape& tape, const RnnVars& p, ad::Var x, ad::Var h);

}  // namespace tdcr::nn

#endif  // TDCR_NN_CELLS_HPP_
