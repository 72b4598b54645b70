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

#include "tdcr/ad/tape.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <utility>

namespace tdcr::ad {
namespace {

using MatMap = Eigen::Map<
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;
using ConstMatMap = Eigen::Map<
    const Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>;

MatMap map(Tensor& t) { return MatMap(t.data(), t.rows(), t.cols()); }
ConstMatMap map(const Tensor& t) { return ConstMatMap(t.data(), t.rows(), t.cols()); }

void require(bool cond, const char* msg) {
  if (!cond) throw std::invalid_argument(msg);
}

}  // namespace

// ---------------------------------------------------------------------------
// ParamStore

int ParamStore::add(std::string name, Tensor init) {
  if (find(name) >= 0) {
    throw std::invalid_argument("ParamStore: duplicate parameter name " + name);
  }
  names_.push_back(std::move(name));
  grads_.emplace_back(init.rows(), init.cols());
  values_.push_back(std::move(init));
  return static_cast<int>(values_.size()) - 1;
}

int ParamStore::find(const std::string& name) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

void ParamStore::zero_grads() {
  for (auto& g : grads_) g.set_zero();
}

std::size_t ParamStore::scalar_count() const {
  std::size_t n = 0;
  for (const auto& v : values_) n += v.size();
  return n;
}

std::vector<ParamStore::Named> ParamStore::named_values() const {
  std::vector<Named> out;
  out.reserve(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) {
    out.push_back({names_[i], values_[i]});
  }
  return out;
}

void ParamStore::load_named(const std::vector<Named>& entries) {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    const Named* found = nullptr;
    for (const auto& e : entries) {
      if (e.name == names_[i]) {
        found = &e;
        break;
      }
    }
    if (found == nullptr) {
      throw std::runtime_error("ParamStore: missing parameter " + names_[i]);
    }
    if (!found->value.same_shape(values_[i])) {
      throw std::runtime_error("ParamStore: shape mismatch for " + names_[i]);
    }
    values_[i] = found->value;
  }
}

// ---------------------------------------------------------------------------
// Tape

int Tape::push(Node node) {
  nodes_.push_back(std::move(node));
  return static_cast<int>(nodes_.size()) - 1;
}

const Tape::Node& Tape::node(Var v) const { return nodes_[v.id]; }

void Tape::check_valid(Var v, const char* op) const {
  if (!v.valid() || v.id >= static_cast<int>(nodes_.size())) {
    throw std::invalid_argument(std::string(op) + ": invalid tape handle");
  }
}

Var Tape::param(ParamStore& store, int index) {
  if (index < 0 || index >= store.count()) {
    throw std::invalid_argument("param: index out of range");
  }
  Node n;
  n.kind = OpKind::kParam;
  n.needs_grad = true;
  n.store = &store;
  n.param_index = index;
  n.val = store.value(index);
  return {push(std::move(n))};
}

Var Tape::constant(Tensor value) {
  require(value.all_finite(), "constant: non-finite value");
  Node n;
  n.kind = OpKind::kConstant;
  n.needs_grad = false;
  n.val = std::move(value);
  return {push(std::move(n))};
}

Var Tape::matmul(Var a, Var b) {
  check_valid(a, "matmul");
  check_valid(b, "matmul");
  const Tensor& av = nodes_[a.id].val;
  const Tensor& bv = nodes_[b.id].val;
  require(av.cols() == bv.rows(), "matmul: inner dimensions do not match");
  Node n;
  n.kind = OpKind::kMatmul;
  n.a = a.id;
  n.b = b.id;
  n.needs_grad = nodes_[a.id].needs_grad || nodes_[b.id].needs_grad;
  n.val = Tensor(av.rows(), bv.cols());
  map(n.val).noalias() = map(av) * map(bv);
  return {push(std::move(n))};
}

Var Tape::add(Var a, Var b) {
  check_valid(a, "add");
  check_valid(b, "add");
  const Tensor& av = nodes_[a.id].val;
  const Tensor& bv = nodes_[b.id].val;
  require(av.same_shape(bv), "add: shape mismatch");
  Node n;
  n.kind = OpKind::kAdd;
  n.a = a.id;
  n.b = b.id;
  n.needs_grad = nodes_[a.id].needs_grad || nodes_[b.id].needs_grad;
  n.val = Tensor(av.rows(), av.cols());
  for (std::size_t i = 0; i < av.size(); ++i) n.val.data()[i] = av.data()[i] + bv.data()[i];
  return {push(std::move(n))};
}

Var Tape::sub(Var a, Var b) {
  check_valid(a, "sub");
  check_valid(b, "sub");
  const Tensor& av = nodes_[a.id].val;
  const Tensor& bv = nodes_[b.id].val;
  require(av.same_shape(bv), "sub: shape mismatch");
  Node n;
  n.kind = OpKind::kSub;
  n.a = a.id;
  n.b = b.id;
  n.needs_grad = nodes_[a.id].needs_grad || nodes_[b.id].needs_grad;
  n.val = Tensor(av.rows(), av.cols());
  for (std::size_t i = 0; i < av.size(); ++i) n.val.data()[i] = av.data()[i] - bv.data()[i];
  return {push(std::move(n))};
}

Var Tape::mul(Var a, Var b) {
  check_valid(a, "mul");
  check_valid(b, "mul");
  const Tensor& av = nodes_[a.id].val;
  const Tensor& bv = nodes_[b.id].val;
  require(av.same_shape(bv), "mul: shape mismatch");
  Node n;
  n.kind = OpKind::kMul;
  n.a = a.id;
  n.b = b.id;
  n.needs_grad = nodes_[a.id].needs_grad || nodes_[b.id].needs_grad;
  n.val = Tensor(av.rows(), av.cols());
  for (std::size_t i = 0; i < av.size(); ++i) n.val.data()[i] = av.data()[i] * bv.data()[i];
  return {push(std::move(n))};
}

Var Tape::add_row(Var x, Var row) {
  check_valid(x, "add_row");
  check_valid(row, "add_row");
  const Tensor& xv = nodes_[x.id].val;
  const Tensor& rv = nodes_[row.id].val;
  require(rv.rows() == 1 && rv.cols() == xv.cols(), "add_row: row shape mismatch");
  Node n;
  n.kind = OpKind::kAddRow;
  n.a = x.id;
  n.b = row.id;
  n.needs_grad = nodes_[x.id].needs_grad || nodes_[row.id].needs_grad;
  n.val = Tensor(xv.rows(), xv.cols());
  for (int r = 0; r < xv.rows(); ++r) {
    for (int c = 0; c < xv.cols(); ++c) n.val(r, c) = xv(r, c) + rv(0, c);
  }
  return {push(std::move(n))};
}

Var Tape::mul_row(Var x, Var row) {
  check_valid(x, "mul_row");
  check_valid(row, "mul_row");
  const Tensor& xv = nodes_[x.id].val;
  const Tensor& rv = nodes_[row.id].val;
  require(rv.rows() == 1 && rv.cols() == xv.cols(), "mul_row: row shape mismatch");
  Node n;
  n.kind = OpKind::kMulRow;
  n.a = x.id;
  n.b = row.id;
  n.needs_grad = nodes_[x.id].needs_grad || nodes_[row.id].needs_grad;
  n.val = Tensor(xv.rows(), xv.cols());
  for (int r = 0; r < xv.rows(); ++r) {
    for (int c = 0; c < xv.cols(); ++c) n.val(r, c) = xv(r, c) * rv(0, c);
  }
  return {push(std::move(n))};
}

Var Tape::sigmoid(Var x) {
  check_valid(x, "sigmoid");
  const Tensor& xv = nodes_[x.id].val;
  Node n;
  n.kind = OpKind::kSigmoid;
  n.a = x.id;
  n.needs_grad = nodes_[x.id].needs_grad;
  n.val = Tensor(xv.rows(), xv.cols());
  for (std::size_t i = 0; i < xv.size(); ++i) {
    n.val.data()[i] = 1.0 / (1.0 + std::exp(-xv.data()[i]));
  }
  return {push(std::move(n))};
}

Var Tape::tanh(Var x) {
  check_valid(x, "tanh");
  const Tensor& xv = nodes_[x.id].val;
  Node n;
  n.kind = OpKind::kTanh;
  n.a = x.id;
  n.needs_grad = nodes_[x.id].needs_grad;
  n.val = Tensor(xv.rows(), xv.cols());
  for (std::size_t i = 0; i < xv.size(); ++i) n.val.data()[i] = std::tanh(xv.data()[i]);
  return {push(std::move(n))};
}

Var Tape::clip(Var x, double lo, double hi) {
  check_valid(x, "clip");
  require(lo <= hi, "clip: lo must not exceed hi");
  const Tensor& xv = nodes_[x.id].val;
  Node n;
  n.kind = OpKind::kClip;
  n.a = x.id;
  n.p0 = lo;
  n.p1 = hi;
  n.needs_grad = nodes_[x.id].needs_grad;
  n.val = Tensor(xv.rows(), xv.cols());
  for (std::size_t i = 0; i < xv.size(); ++i) {
    const double v = xv.data()[i];
    n.val.data()[i] = v < lo ? lo : (v > hi ? hi : v);
  }
  return {push(std::move(n))};
}

Var Tape::scale(Var x, double factor) {
  check_valid(x, "scale");
  require(std::isfinite(factor), "scale: non-finite factor");
  const Tensor& xv = nodes_[x.id].val;
  Node n;
  n.kind = OpKind::kScale;
  n.a = x.id;
  n.p0 = factor;
  n.needs_grad = nodes_[x.id].needs_grad;
  n.val = Tensor(xv.rows(), xv.cols());
  for (std::size_t i = 0; i < xv.size(); ++i) n.val.data()[i] = factor * xv.data()[i];
  return {push(std::move(n))};
}

Var Tape::sum(Var x) {
  check_valid(x, "sum");
  const Tensor& xv = nodes_[x.id].val;
  Node n;
  n.kind = OpKind::kSum;
  n.a = x.id;
  n.needs_grad = nodes_[x.id].needs_grad;
  double s = 0.0;
  for (std::size_t i = 0; i < xv.size(); ++i) s += xv.data()[i];
  n.val = Tensor::scalar(s);
  return {push(std::move(n))};
}

Var Tape::squared_error(Var pred, Var target) {
  check_valid(pred, "squared_error");
  check_valid(target, "squared_error");
  const Tensor& pv = nodes_[pred.id].val;
  const Tensor& tv = nodes_[target.id].val;
  require(pv.same_shape(tv), "squared_error: shape mismatch");
  Node n;
  n.kind = OpKind::kSquaredError;
  n.a = pred.id;
  n.b = target.id;
  n.needs_grad = nodes_[pred.id].needs_grad || nodes_[target.id].needs_grad;
  double s = 0.0;
  for (std::size_t i = 0; i < pv.size(); ++i) {
    const double d = pv.data()[i] - tv.data()[i];
    s += d * d;
  }
  n.val = Tensor::scalar(s);
  return {push(std::move(n))};
}

Var Tape::concat_cols(Var a, Var b) {
  check_valid(a, "concat_cols");
  check_valid(b, "concat_cols");
  const Tensor& av = nodes_[a.id].val;
  const Tensor& bv = nodes_[b.id].val;
  require(av.rows() == bv.rows(), "concat_cols: row count mismatch");
  Node n;
  n.kind = OpKind::kConcatCols;
  n.a = a.id;
  n.b = b.id;
  n.i0 = av.cols();
  n.needs_grad = nodes_[a.id].needs_grad || nodes_[b.id].needs_grad;
  n.val = Tensor(av.rows(), av.cols() + bv.cols());
  for (int r = 0; r < av.rows(); ++r) {
    for (int c = 0; c < av.cols(); ++c) n.val(r, c) = av(r, c);
    for (int c = 0; c < bv.cols(); ++c) n.val(r, av.cols() + c) = bv(r, c);
  }
  return {push(std::move(n))};
}

Var Tape::slice_cols(Var x, int start, int len) {
  check_valid(x, "slice_cols");
  const Tensor& xv = nodes_[x.id].val;
  require(start >= 0 && len > 0 && start + len <= xv.cols(),
          "slice_cols: range out of bounds");
  Node n;
  n.kind = OpKind::kSliceCols;
  n.a = x.id;
  n.i0 = start;
  n.i1 = len;
  n.needs_grad = nodes_[x.id].needs_grad;
  n.val = Tensor(xv.rows(), len);
  for (int r = 0; r < xv.rows(); ++r) {
    for (int c = 0; c < len; ++c) n.val(r, c) = xv(r, start + c);
  }
  return {push(std::move(n))};
}

Var Tape::layer_norm(Var x, Var gain, Var shift, double eps) {
  check_valid(x, "layer_norm");
  check_valid(gain, "layer_norm");
  check_valid(shift, "layer_norm");
  require(eps > 0.0, "layer_norm: epsilon must be positive");
  const Tensor& xv = nodes_[x.id].val;
  const Tensor& gv = nodes_[gain.id].val;
  const Tensor& sv = nodes_[shift.id].val;
  require(gv.rows() == 1 && gv.cols() == xv.cols(), "layer_norm: gain shape mismatch");
  require(sv.rows() == 1 && sv.cols() == xv.cols(), "layer_norm: shift shape mismatch");
  Node n;
  n.kind = OpKind::kLayerNorm;
  n.a = x.id;
  n.b = gain.id;
  n.c = shift.id;
  n.p0 = eps;
  n.needs_grad = nodes_[x.id].needs_grad || nodes_[gain.id].needs_grad ||
                 nodes_[shift.id].needs_grad;
  n.val = Tensor(xv.rows(), xv.cols());
  n.saved.resize(static_cast<std::size_t>(xv.rows()) * 2);
  const int f = xv.cols();
  for (int r = 0; r < xv.rows(); ++r) {
    double mean = 0.0;
    for (int c = 0; c < f; ++c) mean += xv(r, c);
    mean /= f;
    double var = 0.0;
    for (int c = 0; c < f; ++c) {
      const double d = xv(r, c) - mean;
      var += d * d;
    }
    var /= f;
    const double inv_std = 1.0 / std::sqrt(var + eps);
    n.saved[2 * r] = mean;
    n.saved[2 * r + 1] = inv_std;
    for (int c = 0; c < f; ++c) {
      n.val(r, c) = (xv(r, c) - mean) * inv_std * gv(0, c) + sv(0, c);
    }
  }
  return {push(std::move(n))};
}

Var Tape::detach(Var x) {
  check_valid(x, "detach");
  Node n;
  n.kind = OpKind::kDetach;
  n.a = x.id;
  n.needs_grad = false;
  n.val = nodes_[x.id].val;
  return {push(std::move(n))};
}

const Tensor& Tape::value(Var v) const {
  check_valid(v, "value");
  return nodes_[v.id].val;
}

bool Tape::needs_grad(Var v) const {
  check_valid(v, "needs_grad");
  return nodes_[v.id].needs_grad;
}

void Tape::backward(Var loss) {
  std::vector<Tensor> grads(nodes_.size());
  run_backward(loss, grads, /*release=*/true, /*into_stores=*/true);
}

Tensor Tape::grad_of(Var loss, Var node) {
  check_valid(node, "grad_of");
  std::vector<Tensor> grads(nodes_.size());
  run_backward(loss, grads, /*release=*/false, /*into_stores=*/false);
  if (grads[node.id].empty()) {
    return Tensor(nodes_[node.id].val.rows(), nodes_[node.id].val.cols());
  }
  return grads[node.id];
}

void Tape::run_backward(Var loss, std::vector<Tensor>& grads, bool release,
                        bool into_stores) {
  check_valid(loss, "backward");
  const Node& top = nodes_[loss.id];
  if (top.val.rows() != 1 || top.val.cols() != 1) {
    throw std::invalid_argument("backward: loss must be scalar");
  }
  grads[loss.id] = Tensor::scalar(1.0);

  auto ensure = [&](int id) -> Tensor& {
    if (grads[id].empty()) {
      grads[id] = Tensor(nodes_[id].val.rows(), nodes_[id].val.cols());
    }
    return grads[id];
  };
  auto wants = [&](int id) { return id >= 0 && nodes_[id].needs_grad; };

  for (int i = loss.id; i >= 0; --i) {
    Node& n = nodes_[i];
    if (grads[i].empty() || !n.needs_grad) continue;
    const Tensor& g = grads[i];
    switch (n.kind) {
      case OpKind::kParam:
        if (into_stores) {
          Tensor& pg = n.store->grad(n.param_index);
          for (std::size_t k = 0; k < pg.size(); ++k) pg.data()[k] += g.data()[k];
        }
        break;
      case OpKind::kConstant:
      case OpKind::kDetach:
        break;
      case OpKind::kMatmul: {
        const Tensor& av = nodes_[n.a].val;
        const Tensor& bv = nodes_[n.b].val;
        if (wants(n.a)) map(ensure(n.a)).noalias() += map(g) * map(bv).transpose();
        if (wants(n.b)) map(ensure(n.b)).noalias() += map(av).transpose() * map(g);
        break;
      }
      case OpKind::kAdd: {
        if (wants(n.a)) {
          Tensor& ga = ensure(n.a);
          for (std::size_t k = 0; k < ga.size(); ++k) ga.data()[k] += g.data()[k];
        }
        if (wants(n.b)) {
          Tensor& gb = ensure(n.b);
          for (std::size_t k = 0; k < gb.size(); ++k) gb.data()[k] += g.data()[k];
        }
        break;
      }
      case OpKind::kSub: {
        if (wants(n.a)) {
          Tensor& ga = ensure(n.a);
          for (std::size_t k = 0; k < ga.size(); ++k) ga.data()[k] += g.data()[k];
        }
        if (wants(n.b)) {
          Tensor& gb = ensure(n.b);
          for (std::size_t k = 0; k < gb.size(); ++k) gb.data()[k] -= g.data()[k];
        }
        break;
      }
      case OpKind::kMul: {
        const Tensor& av = nodes_[n.a].val;
        const Tensor& bv = nodes_[n.b].val;
        if (wants(n.a)) {
          Tensor& ga = ensure(n.a);
          for (std::size_t k = 0; k < ga.size(); ++k)
            ga.data()[k] += g.data()[k] * bv.data()[k];
        }
        if (wants(n.b)) {
          Tensor& gb = ensure(n.b);
          for (std::size_t k = 0; k < gb.size(); ++k)
            gb.data()[k] += g.data()[k] * av.data()[k];
        }
        break;
      }
      case OpKind::kAddRow: {
        if (wants(n.a)) {
          Tensor& ga = ensure(n.a);
          for (std::size_t k = 0; k < ga.size(); ++k) ga.data()[k] += g.data()[k];
        }
        if (wants(n.b)) {
          Tensor& gb = ensure(n.b);
          for (int r = 0; r < g.rows(); ++r) {
            for (int c = 0; c < g.cols(); ++c) gb(0, c) += g(r, c);
          }
        }
        break;
      }
      case OpKind::kMulRow: {
        const Tensor& xv = nodes_[n.a].val;
        const Tensor& rv = nodes_[n.b].val;
        if (wants(n.a)) {
          Tensor& ga = ensure(n.a);
          for (int r = 0; r < g.rows(); ++r) {
            for (int c = 0; c < g.cols(); ++c) ga(r, c) += g(r, c) * rv(0, c);
          }
        }
        if (wants(n.b)) {
          Tensor& gb = ensure(n.b);
          for (int r = 0; r < g.rows(); ++r) {
            for (int c = 0; c < g.cols(); ++c) gb(0, c) += g(r, c) * xv(r, c);
          }
        }
        break;
      }
      case OpKind::kSigmoid: {
        if (wants(n.a)) {
          Tensor& ga = ensure(n.a);
          for (std::size_t k = 0; k < ga.size(); ++k) {
            const double y = n.val.data()[k];
            ga.data()[k] += g.data()[k] * y * (1.0 - y);
          }
        }
        break;
      }
      case OpKind::kTanh: {
        if (wants(n.a)) {
          Tensor& ga = ensure(n.a);
          for (std::size_t k = 0; k < ga.size(); ++k) {
            const double y = n.val.data()[k];
            ga.data()[k] += g.data()[k] * (1.0 - y * y);
          }
        }
        break;
      }
      case OpKind::kClip: {
        // Pass-through subgradient on the closed interval [lo, hi].
        if (wants(n.a)) {
          const Tensor& xv = nodes_[n.a].val;
          Tensor& ga = ensure(n.a);
          for (std::size_t k = 0; k < ga.size(); ++k) {
            const double x = xv.data()[k];
            if (x >= n.p0 && x <= n.p1) ga.data()[k] += g.data()[k];
          }
        }
        break;
      }
      case OpKind::kScale: {
        if (wants(n.a)) {
          Tensor& ga = ensure(n.a);
          for (std::size_t k = 0; k < ga.size(); ++k) ga.data()[k] += n.p0 * g.data()[k];
        }
        break;
      }
      case OpKind::kSum: {
        if (wants(n.a)) {
          Tensor& ga = ensure(n.a);
          const double gs = g(0, 0);
          for (std::size_t k = 0; k < ga.size(); ++k) ga.data()[k] += gs;
        }
        break;
      }
      case OpKind::kSquaredError: {
        const Tensor& pv = nodes_[n.a].val;
        const Tensor& tv = nodes_[n.b].val;
        const double gs = g(0, 0);
        if (wants(n.a)) {
          Tensor& ga = ensure(n.a);
          for (std::size_t k = 0; k < ga.size(); ++k)
            ga.data()[k] += 2.0 * gs * (pv.data()[k] - tv.data()[k]);
        }
        if (wants(n.b)) {
          Tensor& gb = ensure(n.b);
          for (std::size_t k = 0; k < gb.size(); ++k)
            gb.data()[k] -= 2.0 * gs * (pv.data()[k] - tv.data()[k]);
        }
        break;
      }
      case OpKind::kConcatCols: {
        const int ca = n.i0;
        if (wants(n.a)) {
          Tensor& ga = ensure(n.a);
          for (int r = 0; r < ga.rows(); ++r) {
            for (int c = 0; c < ca; ++c) ga(r, c) += g(r, c);
          }
        }
        if (wants(n.b)) {
          Tensor& gb = ensure(n.b);
          for (int r = 0; r < gb.rows(); ++r) {
            for (int c = 0; c < gb.cols(); ++c) gb(r, c) += g(r, ca + c);
          }
        }
        break;
      }
      case OpKind::kSliceCols: {
        if (wants(n.a)) {
          Tensor& ga = ensure(n.a);
          for (int r = 0; r < g.rows(); ++r) {
            for (int c = 0; c < n.i1; ++c) ga(r, n.i0 + c) += g(r, c);
          }
        }
        break;
      }
      case OpKind::kLayerNorm: {
        const Tensor& xv = nodes_[n.a].val;
        const Tensor& gv = nodes_[n.b].val;
        const int f = xv.cols();
        for (int r = 0; r < xv.rows(); ++r) {
          const double mean = n.saved[2 * r];
          const double inv_std = n.saved[2 * r + 1];
          // dxhat = g * gain; dx = inv_std*(dxhat - mean(dxhat) - xhat*mean(dxhat*xhat))
          double m1 = 0.0;
          double m2 = 0.0;
          for (int c = 0; c < f; ++c) {
            const double xhat = (xv(r, c) - mean) * inv_std;
            const double dxh = g(r, c) * gv(0, c);
            m1 += dxh;
            m2 += dxh * xhat;
          }
          m1 /= f;
          m2 /= f;
          if (wants(n.a)) {
            Tensor& ga = ensure(n.a);
            for (int c = 0; c < f; ++c) {
              const double xhat = (xv(r, c) - mean) * inv_std;
              const double dxh = g(r, c) * gv(0, c);
              ga(r, c) += inv_std * (dxh - m1 - xhat * m2);
            }
          }
          if (wants(n.b)) {
            Tensor& gb = ensure(n.b);
            for (int c = 0; c < f; ++c) {
              const double xhat = (xv(r, c) - mean) * inv_std;
              gb(0, c) += g(r, c) * xhat;
            }
          }
          if (wants(n.c)) {
            Tensor& gc = ensure(n.c);
            for (int c = 0; c < f; ++c) gc(0, c) += g(r, c);
          }
        }
        break;
      }
    }
    if (release) grads[i] = Tensor();
  }
}

void Tape::clear() { nodes_.clear(); }

}  // namespace tdcr::ad
