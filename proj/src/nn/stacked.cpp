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

#include "tdcr/nn/stacked.hpp"

#include <stdexcept>

namespace tdcr::nn {

using ad::Tensor;
using ad::Var;

ad::Var dropout_apply(ad::Tape& tape, double rate, ad::Var x, Rng& rng,
                      bool training) {
  if (rate < 0.0 || rate >= 1.0) {
    throw std::invalid_argument("dropout: rate must be in [0, 1)");
  }
  if (!training || rate == 0.0) return x;
  const Tensor& xv = tape.value(x);
  Tensor mask(xv.rows(), xv.cols());
  const double keep_scale = 1.0 / (1.0 - rate);
  for (std::size_t i = 0; i < mask.size(); ++i) {
    mask.data()[i] = rng.uniform() < rate ? 0.0 : keep_scale;
  }
  return tape.mul(x, tape.constant(std::move(mask)));
}

StackedRnn::StackedRnn(ad::ParamStore& store, StackedRnnConfig cfg,
                       std::string prefix, Rng& init_rng)
    : store_(&store), cfg_(cfg), prefix_(std::move(prefix)) {
  if (cfg_.layers < 1) throw std::invalid_argument("StackedRnn: layers must be >= 1");
  if (cfg_.input_dim < 1 || cfg_.hidden_dim < 1) {
    throw std::invalid_argument("StackedRnn: dimensions must be positive");
  }
  if (cfg_.dropout < 0.0 || cfg_.dropout >= 1.0) {
    throw std::invalid_argument("StackedRnn: dropout must be in [0, 1)");
  }
  const int hid = cfg_.hidden_dim;
  for (int l = 0; l < cfg_.layers; ++l) {
    const int in = l == 0 ? cfg_.input_dim : hid;
    const int cat = in + hid;
    const std::string base = prefix_ + ".layer" + std::to_string(l) + ".";
    LayerIds ids;
    auto mat = [&](const std::string& g, int rows, int cols, int fan_in) {
      return store.add(base + g, Tensor::scaled_uniform(rows, cols, fan_in, init_rng));
    };
    switch (cfg_.cell) {
      case CellKind::kGru:
        ids.cell = {mat("wz", cat, hid, cat), mat("bz", 1, hid, cat),
                    mat("wr", cat, hid, cat), mat("br", 1, hid, cat),
                    mat("wn", in, hid, in),   mat("bn", 1, hid, in),
                    mat("un", hid, hid, hid), mat("cn", 1, hid, hid)};
        break;
      case CellKind::kLstm:
        ids.cell = {mat("wi", cat, hid, cat), mat("bi", 1, hid, cat),
                    mat("wf", cat, hid, cat), mat("bf", 1, hid, cat),
                    mat("wo", cat, hid, cat), mat("bo", 1, hid, cat),
                    mat("wg", cat, hid, cat), mat("bg", 1, hid, cat)};
        break;
      case CellKind::kRnn:
        ids.cell = {mat("w", cat, hid, cat), mat("b", 1, hid, cat)};
        break;
    }
    ids.ln_gain = store.add(base + "ln_g", Tensor::filled(1, hid, 1.0));
    ids.ln_shift = store.add(base + "ln_b", Tensor(1, hid));
    layers_.push_back(ids);
  }
}

StackedRnn::Bound StackedRnn::bind(ad::Tape& tape, bool frozen) const {
  Bound b;
  auto leaf = [&](int idx) {
    return frozen ? tape.constant(store_->value(idx)) : tape.param(*store_, idx);
  };
  for (const auto& ids : layers_) {
    switch (cfg_.cell) {
      case CellKind::kGru: {
        GruVars v{leaf(ids.cell[0]), leaf(ids.cell[1]), leaf(ids.cell[2]),
                  leaf(ids.cell[3]), leaf(ids.cell[4]), leaf(ids.cell[5]),
                  leaf(ids.cell[6]), leaf(ids.cell[7])};
        b.gru.push_back(v);
        break;
      }
      case CellKind::kLstm: {
        LstmVars v{leaf(ids.cell[0]), leaf(ids.cell[1]), leaf(ids.cell[2]),
                   leaf(ids.cell[3]), leaf(ids.cell[4]), leaf(ids.cell[5]),
                   leaf(ids.cell[6]), leaf(ids.cell[7])};
        b.lstm.push_back(v);
        break;
      }
      case CellKind::kRnn: {
        RnnVars v{leaf(ids.cell[0]), leaf(ids.cell[1])};
        b.rnn.push_back(v);
        break;
      }
    }
    b.ln.emplace_back(leaf(ids.ln_gain), leaf(ids.ln_shift));
  }
  return b;
}

StackedRnn::StateVars StackedRnn::zero_state(ad::Tape& tape, int batch) const {
  StateVars s;
  for (int l = 0; l < cfg_.layers; ++l) {
    s.h.push_back(tape.constant(Tensor(batch, cfg_.hidden_dim)));
    if (cfg_.cell == CellKind::kLstm) {
      s.c.push_back(tape.constant(Tensor(batch, cfg_.hidden_dim)));
    }
  }
  return s;
}

StackedRnn::StateVars StackedRnn::state_from_values(
    ad::Tape& tape, const std::vector<Tensor>& h, const std::vector<Tensor>& c) const {
  if (static_cast<int>(h.size()) != cfg_.layers) {
    throw std::invalid_argument("state_from_values: layer count mismatch");
  }
  StateVars s;
  for (const auto& t : h) s.h.push_back(tape.constant(t));
  if (cfg_.cell == CellKind::kLstm) {
    if (c.size() != h.size()) {
      throw std::invalid_argument("state_from_values: missing cell states");
    }
    for (const auto& t : c) s.c.push_back(tape.constant(t));
  }
  return s;
}

ad::Var StackedRnn::step(ad::Tape& tape, const Bound& bound, ad::Var x,
                         StateVars& state, bool training, Rng* dropout_rng) const {
  if (static_cast<int>(state.h.size()) != cfg_.layers) {
    throw std::invalid_argument("StackedRnn::step: layer count mismatch");
  }
  if (training && cfg_.dropout > 0.0 && dropout_rng == nullptr) {
    throw std::invalid_argument("StackedRnn::step: dropout requires an rng");
  }
  Var stream = x;
  Var output;
  for (int l = 0; l < cfg_.layers; ++l) {
    Var h_next;
    switch (cfg_.cell) {
      case CellKind::kGru:
        h_next = gru_cell_step(tape, bound.gru[l], stream, state.h[l]);
        break;
      case CellKind::kLstm: {
        auto [h2, c2] = lstm_cell_step(tape, bound.lstm[l], stream, state.h[l],
                                       state.c[l]);
        h_next = h2;
        state.c[l] = c2;
        break;
      }
      case CellKind::kRnn:
        h_next = rnn_cell_step(tape, bound.rnn[l], stream, state.h[l]);
        break;
    }
    state.h[l] = h_next;
    Var normed = tape.layer_norm(h_next, bound.ln[l].first, bound.ln[l].second,
                                 cfg_.ln_eps);
    if (l + 1 < cfg_.layers) {
      stream = tape.tanh(normed);
      if (training && cfg_.dropout > 0.0) {
        stream = dropout_apply(tape, cfg_.dropout, stream, *dropout_rng, true);
      }
    } else {
      output = normed;
    }
  }
  return output;
}

}  // namespace tdcr::nn
