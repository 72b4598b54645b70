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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "tdcr/ad/grad_check.hpp"
#include "tdcr/nn/cells.hpp"
#include "tdcr/nn/normalizer.hpp"
#include "tdcr/nn/stacked.hpp"
#include "tdcr/util/rng.hpp"

using tdcr::Rng;
using tdcr::ad::grad_check;
using tdcr::ad::ParamStore;
using tdcr::ad::Tape;
using tdcr::ad::Tensor;
using tdcr::ad::Var;
using namespace tdcr::nn;

namespace {

double sigma(double x) { return 1.0 / (1.0 + std::exp(-x)); }

GruVars gru_all(Tape& t, double w) {
  auto c = [&](int r, int cc, double v) { return t.constant(Tensor::filled(r, cc, v)); };
  return GruVars{c(2, 1, w), c(1, 1, 0), c(2, 1, w), c(1, 1, 0),
                 c(1, 1, w), c(1, 1, 0), c(1, 1, w), c(1, 1, 0)};
}

}  // namespace

TEST_CASE("gru cell: zero parameters give zero next state") {
  Tape t;
  GruVars p = gru_all(t, 0.0);
  Var x = t.constant(Tensor::scalar(0.37));
  Var h = t.constant(Tensor::scalar(0.0));
  CHECK(t.value(gru_cell_step(t, p, x, h))(0, 0) == 0.0);
}

TEST_CASE("gru cell matches the scripted formula oracle at 1e-12") {
  // 1-dim cell, all weights 1, biases 0, x = 1, h = 0:
  //   z = r = sigma(1), n = tanh(1), h' = (1 - sigma(1)) * tanh(1).
  const double expected = (1.0 - sigma(1.0)) * std::tanh(1.0);
  Tape t;
  GruVars p = gru_all(t, 1.0);
  Var x = t.constant(Tensor::scalar(1.0));
  Var h = t.constant(Tensor::scalar(0.0));
  CHECK(t.value(gru_cell_step(t, p, x, h))(0, 0) ==
        doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("gru cell gradcheck vs finite differences") {
  ParamStore store;
  Rng rng(3);
  const int in = 3, hid = 4, cat = in + hid;
  int wz = store.add("wz", Tensor::scaled_uniform(cat, hid, cat, rng));
  int bz = store.add("bz", Tensor::scaled_uniform(1, hid, cat, rng));
  int wr = store.add("wr", Tensor::scaled_uniform(cat, hid, cat, rng));
  int br = store.add("br", Tensor::scaled_uniform(1, hid, cat, rng));
  int wn = store.add("wn", Tensor::scaled_uniform(in, hid, in, rng));
  int bn = store.add("bn", Tensor::scaled_uniform(1, hid, in, rng));
  int un = store.add("un", Tensor::scaled_uniform(hid, hid, hid, rng));
  int cn = store.add("cn", Tensor::scaled_uniform(1, hid, hid, rng));
  Tensor xv = Tensor::scaled_uniform(2, in, 1, rng);
  Tensor hv = Tensor::scaled_uniform(2, hid, 1, rng);
  auto build = [&](Tape& t) {
    GruVars p{t.param(store, wz), t.param(store, bz), t.param(store, wr),
              t.param(store, br), t.param(store, wn), t.param(store, bn),
              t.param(store, un), t.param(store, cn)};
    return t.sum(gru_cell_step(t, p, t.constant(xv), t.constant(hv)));
  };
  CHECK(grad_check(build, store).max_rel_err < 1e-5);
}

TEST_CASE("lstm cell matches the scripted formula oracle at 1e-12") {
  Tape t;
  auto c = [&](int r, int cc, double v) { return t.constant(Tensor::filled(r, cc, v)); };
  LstmVars p{c(2, 1, 1．0), c(1, 1, 0), c(2, 1, 1.0), c(1, 1, 0),
             c(2, 1, 1.0), c(1, 1, 0), c(2, 1, 1.0), c(1, 1, 0)};
  Var x = t.constant(Tensor::scalar(1.0));
  Var h = t.constant(Tensor::scalar(0.0));
  Var cc = t.constant(Tensor::scalar(0.0));
  auto [h2, c2] = lstm_cell_step(t, p, x, h, cc);
  const double c_expected = sigma(1.0) * std::tanh(1.0);
  const double h_expected = sigma(1.0) * std::tanh(c_expected);
  CHECK(t.value(c2)(0, 0) == doctest::Approx(c_expected).epsilon(1e-12));
  CHECK(t.value(h2)(0, 0) == doctest::Approx(h_expected).epsilon(1e-12));
}

TEST_CASE("vanilla rnn cell: zero weights give zero state") {
  Tape t;
  RnnVars p{t.constant(Tensor(3, 2)), t.constant(Tensor(1, 2))};
  Var x = t.constant(Tensor::row({0.5}));
  Var h = t.constant(Tensor::row({0.2, -0.7}));
  const Tensor& out = t.value(rnn_cell_step(t, p, x, h));
  CHECK(out(0, 0) == 0.0);
  CHECK(out(0, 1) == 0.0);
}

TEST_CASE("lstm and rnn cells gradcheck vs finite differences") {
  Rng rng(17);
  const int in = 2, hid = 3, cat = in + hid;
  Tensor xv = Tensor::scaled_uniform(2, in, 1, rng);
  Tensor hv = Tensor::scaled_uniform(2, hid, 1, rng);
  Tensor cv = Tensor::scaled_uniform(2, hid, 1, rng);

  {
    ParamStore store;
    std::vector<int> ids;
    for (const char* g : {"wi", "wf", "wo", "wg"}) {
      ids.push_back(store.add(std::string(g), Tensor::scaled_uniform(cat, hid, cat, rng)));
      ids.push_back(store.add(std::string(g) + "_b",
                              Tensor::scaled_uniform(1, hid, cat, rng)));
    }
    auto build = [&](Tape& t) {
      LstmVars p{t.param(store, ids[0]), t.param(store, ids[1]),
                 t.param(store, ids[2]), t.param(store, ids[3]),
                 t.param(store, ids[4]), t.param(store, ids[5]),
                 t.param(store, ids[6]), t.param(store, ids[7])};
      auto [h2, c2] = lstm_cell_step(t, p, t.constant(xv), t.constant(hv),
                                     t.constant(cv));
      return t.add(t.sum(h2), t.scale(t.sum(c2), 0.5));
    };
    CHECK(grad_check(build, store).max_rel_err < 1e-5);
  }
  {
    ParamStore store;
    int w = store.add("w", Tensor::scaled_uniform(cat, hid, cat, rng));
    int b = store.add("b", Tensor::scaled_uniform(1, hid, cat, rng));
    auto build = [&](Tape& t) {
      RnnVars p{t.param(store, w), t.param(store, b)};
      return t.sum(rnn_cell_step(t, p, t.constant(xv), t.constant(hv)));
    };
    CHECK(grad_check(build, store).max_rel_err < 1e-5);
  }
}

TEST_CASE("layer_norm values") {
  Tape t;
  Var gain = t.constant(Tensor::filled(1, 3, 1.0));
  Var shift = t.constant(Tensor(1, 3));
  Var constant_in = t.constant(Tensor::filled(1, 3, 4.2));
  const Tensor& zeroed = t.value(t.layer_norm(constant_in, gain, shift, 1e-5));
  for (int c = 0; c < 3; ++c) CHECK(zeroed(0, c) == doctest::Approx(0.0));

  Var gain2 = t.constant(Tensor::filled(1, 2, 1.0));
  Var shift2 = t.constant(Tensor(1, 2));
  Var x = t.constant(Tensor::row({1.0, 3.0}));
  const Tensor& out = t.value(t.layer_norm(x, gain2, shift2, 1e-12));
  CHECK(out(0, 0) == doctest::Approx(-1.0).epsilon(1e-5));
  CHECK(out(0, 1) == doctest::Approx(1.0).epsilon(1e-5));
}

TEST_CASE("layer_norm gradcheck") {
  ParamStore store;
  Rng rng(29);
  int x = store.add("x", Tensor::scaled_uniform(3, 5, 1, rng));
  int g = store.add("g", Tensor::scaled_uniform(1, 5, 1, rng));
  int b = store.add("b", Tensor::scaled_uniform(1, 5, 1, rng));
  Tensor target = Tensor::scaled_uniform(3, 5, 1, rng);
  auto build = [&](Tape& t) {
    Var ln = t.layer_norm(t.param(store, x), t.param(store, g), t.param(store, b), 1e-5);
    return t.squared_error(ln, t.constant(target));
  };
  CHECK(grad_check(build, store).max_rel_err < 1e-5);
}

TEST_CASE("dropout: identity at rate 0 and in eval mode; unbiased at rate 0.3") {
  Rng rng(101);
  Tape t;
  Var x = t.constant(Tensor::filled(1, 8, 2.0));
  CHECK(t.value(dropout_apply(t, 0.0, x, rng, true)) == t.value(x));
  CHECK(t.value(dropout_apply(t, 0.9, x, rng, false)) == t.value(x));

  const int n = 100000;
  Var big = t.constant(Tensor::filled(1, n, 1.0));
  const Tensor& dropped = t.value(dropout_apply(t, 0.3, big, rng, true));
  double mean = 0.0;
  for (int i = 0; i < n; ++i) mean += dropped(0, i);
  mean /= n;
  CHECK(mean == doctest::Approx(1.0).epsilon(0.01));
  CHECK_THROWS_AS(dropout_apply(t, 1.0, x, rng, true), std::invalid_argument);
}

TEST_CASE("normalizer: center, inverse, and z-scored statistics") {
  std::vector<double> mean = {1.0, -2.0, 0.5};
  std::vector<double> stddev = {2.0, 0.5, 1.5};
  Normalizer nrm(mean, stddev);

  auto z = nrm.normalize(std::vector<double>{1.0, -2.0, 0.5});
  for (double v : z) CHECK(v == 0.0);

  Rng rng(7);
  std::vector<double> o = {rng.uniform(), rng.uniform(), rng.uniform()};
  auto round = nrm.denormalize(nrm.normalize(o));
  for (std::size_t i = 0; i < o.size(); ++i) {
    CHECK(round[i] == doctest::Approx(o[i]).epsilon(1e-12));
  }

  // Z-scoring a dataset through fitted statistics recenters it.
  RunningStats stats(2);
  std::vector<std::vector<double>> dataset;
  for (int i = 0; i < 5000; ++i) {
    dataset.push_back({rng.normal(3.0, 2.0), rng.normal(-1.0, 0.2)});
    stats.add(dataset.back());
  }
  Normalizer fitted = stats.finalize();
  double m0 = 0, m1 = 0, s0 = 0, s1 = 0;
  for (const auto& row : dataset) {
    auto zz = fitted.normalize(row);
    m0 += zz[0];
    m1 += zz[1];
    s0 += zz[0] * zz[0];
    s1 += zz[1] * zz[1];
  }
  const int n = static_cast<int>(dataset.size());
  CHECK(std::abs(m0 / n) < 1e-10);
  CHECK(std::abs(m1 / n) < 1e-10);
  CHECK(s0 / n == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(s1 / n == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("running stats match a two-pass computation to 1e-12") {
  Rng rng(55);
  const int n = 2000, f = 4;
  std::vector<std::vector<double>> rows;
  RunningStats stats(f);
  for (int i = 0; i < n; ++i) {
    std::vector<double> r(f);
    for (auto& v : r) v = rng.uniform(-3.0, 5.0);
    stats.add(r);
    rows.push_back(std::move(r));
  }
  Normalizer fitted = stats.finalize();
  for (int j = 0; j < f; ++j) {
    double mean = 0.0;
    for (const auto& r : rows) mean += r[j];
    mean /= n;
    double var = 0.0;
    for (const auto& r : rows) var += (r[j] - mean) * (r[j] - mean);
    var /= n;
    CHECK(fitted.mean()[j] == doctest::Approx(mean).epsilon(1e-12));
    CHECK(fitted.stddev()[j] == doctest::Approx(std::sqrt(var)).epsilon(1e-12));
  }
}

TEST_CASE("normalizer: zero-variance feature falls back to std 1") {
  RunningStats stats(2);
  for (int i = 0; i < 10; ++i) stats.add(std::vector<double>{5.0, static_cast<double>(i)});
  Normalizer nrm = stats.finalize();
  CHECK(nrm.stddev()[0] == 1.0);
  CHECK(nrm.stddev()[1] > 0.0);
  auto z = nrm.normalize(std::vector<double>{5.0, 4.5});
  CHECK(z[0] == 0.0);
}

TEST_CASE("stacked forward: eval mode is deterministic and shapes hold") {
  ParamStore store;
  Rng init(5);
  StackedRnnConfig cfg;
  cfg.cell = CellKind::kGru;
  cfg.layers = 4;
  cfg.input_dim = 7;
  cfg.hidden_dim = 32;
  cfg.dropout = 0.0;
  StackedRnn net(store, cfg, "dyn", init);

  auto run = [&]() {
    Tape t;
    auto bound = net.bind(t);
    auto state = net.zero_state(t, 3);
    Rng rng(1);
    Var x = t.constant(Tensor::filled(3, 7, 0.3));
    Var out = net.step(t, bound, x, state, false, &rng);
    return std::make_pair(t.value(out), state.h.size());
  };
  auto [o1, nh1] = run();
  auto [o2, nh2] = run();
  CHECK(o1 == o2);
  CHECK(nh1 == 4);
  CHECK(o1.rows() == 3);
  CHECK(o1.cols() == 32);
}

TEST_CASE("1-layer stack equals bare cell plus layer_norm") {
  ParamStore store;
  Rng init(9);
  StackedRnnConfig cfg;
  cfg.cell = CellKind::kGru;
  cfg.layers = 1;
  cfg.input_dim = 4;
  cfg.hidden_dim = 5;
  cfg.dropout = 0.0;
  StackedRnn net(store, cfg, "m", init);

  Rng data(2);
  Tensor xv = Tensor::scaled_uniform(2, 4, 1, data);
  Tensor hv = Tensor::scaled_uniform(2, 5, 1, data);

  Tape t;
  auto bound = net.bind(t);
  StackedRnn::StateVars state = net.state_from_values(t, {hv}, {});
  Var stacked_out = net.step(t, bound, t.constant(xv), state, false, nullptr);

  auto leaf = [&](const char* name) {
    return t.constant(store.value(store.find(std::string("m.layer0.") + name)));
  };
  GruVars p{leaf("wz"), leaf("bz"), leaf("wr"), leaf("br"),
            leaf("wn"), leaf("bn"), leaf("un"), leaf("cn")};
  Var manual_h = gru_cell_step(t, p, t.constant(xv), t.constant(hv));
  Var manual_out = t.layer_norm(manual_h, leaf("ln_g"), leaf("ln_b"), cfg.ln_eps);

  CHECK(t.value(stacked_out) == t.value(manual_out));
  CHECK(t.value(state.h[0]) == t.value(manual_h));
}

TEST_CASE("stacked forward gradchecks for all cell kinds") {
  for (CellKind kind : {CellKind::kGru, CellKind::kLstm, CellKind::kRnn}) {
    CAPTURE(to_string(kind));
    ParamStore store;
    Rng init(13);
    StackedRnnConfig cfg;
    cfg.cell = kind;
    cfg.layers = 2;
    cfg.input_dim = 3;
    cfg.hidden_dim = 4;
    cfg.dropout = 0.0;
    StackedRnn net(store, cfg, "t", init);
    Rng data(4);
    Tensor xv = Tensor::scaled_uniform(2, 3, 1, data);
    auto build = [&](Tape& t) {
      auto bound = net.bind(t);
      auto state = net.zero_state(t, 2);
      Var out = net.step(t, bound, t.constant(xv), state, false, nullptr);
      // Two steps so recurrent paths get exercised.
      out = net.step(t, bound, t.constant(xv), state, false, nullptr);
      return t.sum(t.mul(out, out));
    };
    CHECK(grad_check(build, store).max_rel_err < 1e-5);
  }
}

TEST_CASE("repeated stepping on bounded inputs never produces NaN") {
  ParamStore store;
  Rng init(21);
  StackedRnnConfig cfg;
  cfg.cell = CellKind::kGru;
  cfg.layers = 4;
  cfg.input_dim = 6;
  cfg.hidden_dim = 16;
  cfg.dropout = 0.0;
  StackedRnn net(store, cfg, "s", init);

  Rng data(77);
  std::vector<Tensor> h(4, Tensor(1, 16));
  for (int step = 0; step < 200; ++step) {
    Tape t;
    auto bound = net.bind(t);
    auto state = net.state_from_values(t, h, {});
    Tensor xv(1, 6);
    for (int i = 0; i < 6; ++i) xv(0, i) = data.uniform(-2.0, 2.0);
    net.step(t, bound, t.constant(xv), state, false, nullptr);
    for (int l = 0; l < 4; ++l) {
      h[l] = t.value(state.h[l]);
      REQUIRE(h[l].all_finite());
    }
  }
}
