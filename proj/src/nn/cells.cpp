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

#include "tdcr/nn/cells.hpp"

#include <stdexcept>

namespace tdcr::nn {

CellKind cell_kind_from_string(const std::string& s) {
  if (s == "gru") return CellKind::kGru;
  if (s == "lstm") return CellKind::kLstm;
  if (s == "rnn") return CellKind::kRnn;
  throw std::invalid_argument("unknown cell kind: " + s);
}

std::string to_string(CellKind kind) {
  switch (kind) {
    case CellKind::kGru:
      return "gru";
    case CellKind::kLstm:
      return "lstm";
    case CellKind::kRnn:
      return "rnn";
  }
  return "?";
}

ad::Var gru_cell_step(ad::Tape& t, const GruVars& p, ad::Var x, ad::Var h) {
  ad::Var xh = t.concat_cols(x, h);
  ad::Var z = t.sigmoid(t.add_row(t.matmul(xh, p.wz), p.bz));
  ad::Var r = t.sigmoid(t.add_row(t.matmul(xh, p.wr), p.br));
  ad::Var rec = t.mul(r, t.add_row(t.matmul(h, p.un), p.cn));
  ad::Var n = t.tanh(t.add(t.add_row(t.matmul(x, p.wn), p.bn), rec));
  // (1-z)*n + z*h written as n + z*(h - n)
  return t.add(n, t.mul(z, t.sub(h, n)));
}

std::pair<ad::Var, ad::Var> lstm_cell_step(ad::Tape& t, const LstmVars& p,
                                           ad::Var x, ad::Var h, ad::Var c) {
  ad::Var xh = t.concat_cols(x, h);
  ad::Var i = t.sigmoid(t.add_row(t.matmul(xh, p.wi), p.bi));
  ad::Var f = t.sigmoid(t.add_row(t.matmul(xh, p.wf), p.bf));
  ad::Var o = t.sigmoid(t.add_row(t.matmul(xh, p.wo), p.bo));
  ad::Var g = t.tanh(t.add_row(t.matmul(xh, p.wg), p.bg));
  ad::Var c_next = t.add(t.mul(f, c), t.mul(i, g));
  ad::Var h_next = t.mul(o, t.tanh(c_next));
  return {h_next, c_next};
}

ad::Var rnn_cell_step(ad::Tape& t, const RnnVars& p, ad::Var x, ad::Var h) {
  return t.tanh(t.add_row(t.matmul(t.concat_cols(x, h), p.w), p.b));
}

}  // namespace tdcr::nn
