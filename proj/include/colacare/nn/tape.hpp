#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "colacare/nn/params.hpp"
#include "colacare/nn/tensor.hpp"

namespace colacare::nn {

/// Handle to a value recorded on a Tape.
struct Var {
  std::size_t id = 0;
};

/// Reverse-mode autodiff over Tensor2 values.
///
/// Every op appends a node holding its forward value and, when gradients are
/// recorded, a closure that pushes the node's gradient into its inputs.
/// backward() walks nodes in reverse creation order.
class Tape {
 public:
  explicit Tape(bool record_gradients = true) : record_(record_gradients) {}

  Var constant(Tensor2 value);
  /// Leaf bound to a named parameter; its gradient is reported by name.
  Var parameter(const ParamStore& store, const std::string& name);

  const Tensor2& value(Var v) const { return nodes_[v.id].value; }
  std::size_t size() const { return nodes_.size(); }

  Var matmul(Var a, Var b);
  Var add(Var a, Var b);
  Var sub(Var a, Var b);
  /// a (n x m) plus a 1 x m row broadcast over every row.
  Var add_row(Var a, Var row);
  Var mul(Var a, Var b);
  /// Scales row i of a (n x m) by c(i, 0), c being n x 1.
  Var mul_col(Var a, Var c);
  Var scale(Var a, double factor);
  /// 1 - a elementwise.
  Var one_minus(Var a);
  Var sigmoid(Var a);
  Var tanh(Var a);
  Var relu(Var a);
  Var slice_cols(Var a, Eigen::Index start, Eigen::Index count);
  Var concat_cols(const std::vector<Var>& parts);
  /// Row-wise softmax. `additive_mask` (same shape, constant) is added to the
  /// logits first; use a large negative number to exclude an entry.
  Var softmax_rows(Var a, const Tensor2& additive_mask);
  Var softmax_rows(Var a);
  /// Sum of all entries as a 1 x 1 value.
  Var sum(Var a);
  /// Mean binary cross-entropy of probabilities (n x 1) against labels, with
  /// probabilities clamped to [1e-7, 1 - 1e-7]. Returns 1 x 1.
  Var bce_mean(Var probs, const std::vector<double>& labels);

  /// Runs reverse mode from `output` (seeded with `upstream`, or ones when
  /// empty) and returns gradients for every parameter leaf that was used.
  Gradients backward(Var output, const Tensor2& upstream = Tensor2());

 private:
  struct Node {
    Tensor2 value;
    Tensor2 grad;
    std::function<void(Tape&, std::size_t)> backprop;
    std::string param_name;
  };

  Var push(Tensor2 value, std::function<void(Tape&, std::size_t)> backprop = {});
  void accumulate(std::size_t id, const Tensor2& g);
  const Tensor2& grad(std::size_t id) const { return nodes_[id].grad; }

  bool record_;
  std::vector<Node> nodes_;
};

inline constexpr double kSigmoidClamp = 30.0;
inline constexpr double kProbabilityClamp = 1e-7;

}  // namespace colacare::nn
