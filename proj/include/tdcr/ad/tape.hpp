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

#ifndef TDCR_AD_TAPE_HPP_
#define TDCR_AD_TAPE_HPP_

#include <cstdint>
#include <string>
#include <vector>

#include "tdcr/ad/tensor.hpp"

namespace tdcr::ad {

// Trainable parameters with stable indices and canonical names. Gradients
// accumulate here across backward() calls until zero_grads().
class ParamStore {
 public:
  int add(std::string name, Tensor init);
  int count() const { return static_cast<int>(values_.size()); }
  const std::string& name(int i) const { return names_[i]; }
  Tensor& value(int i) { return values_[i]; }
  const Tensor& value(int i) const { return values_[i]; }
  Tensor& grad(int i) { return grads_[i]; }
  const Tensor& grad(int i) const { return grads_[i]; }
  int find(const std::string& name) const;  // -1 if absent
  void zero_grads();
  std::size_t scalar_count() const;

  struct Named {
    std::string name;
    Tensor value;
  };
  std::vector<Named> named_values() const;
  // Assigns by name; every store parameter must be present with equal shape.
  void load_named(const std::vector<Named>& entries);

 private:
  std::vector<std::string> names_;
  std::vector<Tensor> values_;
  std::vector<Tensor> grads_;
};

// Handle to a tape node.
struct Var {
  int id = -1;
  bool valid() const { return id >= 0; }
};

enum class OpKind : std::uint8_t {
  kParam,
  kConstant,
  kMatmul,
  kAdd,
  kSub,
  kMul,
  kAddRow,
  kMulRow,
  kSigmoid,
  kTanh,
  kClip,
  kScale,
  kSum,
  kSquaredError,
  kConcatCols,
  kSliceCols,
  kLayerNorm,
  kDetach,
};

// Append-only reverse-mode tape over dense tensors. Nodes are recorded in
// evaluation order, so the list is topological by construction; backward()
// walks it once in reverse. One tape is single-threaded; independent tapes
// may run concurrently.
class Tape {
 public:
  // Leaves.
  Var param(ParamStore& store, int index);
  Var constant(Tensor value);
  Var constant_scalar(double v) { return constant(Tensor::scalar(v)); }

  // Ops. Shape violations throw std::invalid_argument.
  Var matmul(Var a, Var b);
  Var add(Var a, Var b);
  Var sub(Var a, Var b);
  Var mul(Var a, Var b);
  Var add_row(Var x, Var row);  // x: BxF, row: 1xF
  Var mul_row(Var x, Var row);
  Var sigmoid(Var x);
  Var tanh(Var x);
  Var clip(Var x, double lo, double hi);
  Var scale(Var x, double factor);
  Var sum(Var x);                           // 1x1
  Var squared_error(Var pred, Var target);  // sum of squared diffs, 1x1
  Var concat_cols(Var a, Var b);
  Var slice_cols(Var x, int start, int len);
  Var layer_norm(Var x, Var gain, Var shift, double eps);
  Var detach(Var x);  // value copy, gradient barrier

  const Tensor& value(Var v) const;
  bool needs_grad(Var v) const;

  // Accumulates d(loss)/d(param) into every bound ParamStore. The loss must
  // be a 1x1 node. Repeated calls accumulate.
  void backward(Var loss);

  // Gradient of `loss` with respect to an arbitrary node (diagnostic path;
  // does not release intermediates and does not touch ParamStore grads).
  Tensor grad_of(Var loss, Var node);

  void clear();
  std::size_t node_count() const { return nodes_.size(); }

 private:
  struct Node {
    OpKind kind;
    int a = -1;
    int b = -1;
    int c = -1;
    double p0 = 0.0;
    double p1 = 0.0;
    int i0 = 0;
    int i1 = 0;
    bool needs_grad = false;
    ParamStore* store = nullptr;
    int param_index = -1;
    Tensor val;
    std::vector<double> saved;  // layer_norm per-row (mean, inv_std)
  };

  int push(Node node);
  const Node& node(Var v) const;
  void check_valid(Var v, const char* op) const;
  void run_backward(Var loss, std::vector<Tensor>& grads, bool release,
                    bool into_stores);

  std::vector<Node> nodes_;
};

}  // namespace tdcr::ad

#endif  // TDCR_AD_TAPE_HPP_
