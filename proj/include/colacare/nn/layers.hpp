#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "colacare/nn/params.hpp"
#include "colacare/nn/tape.hpp"

namespace colacare::nn {

/// x W + b with W stored as in x out. Parameters: <prefix>.W, <prefix>.b.
void init_linear(ParamStore& store, const std::string& prefix, Eigen::Index in, Eigen::Index out,
                 std::uint64_t seed);
Var forward_linear(Tape& tape, const ParamStore& store, const std::string& prefix, Var x);

/// GRU cell with fused gate weights (update | reset | candidate):
///   z  = sigmoid(x Wz + h Uz + bz)
///   r  = sigmoid(x Wr + h Ur + br)
///   n  = tanh(x Wn + bn + r * (h Un + bhn))
///   h' = (1 - z) * n + z * h
/// Parameters: <prefix>.W (in x 3H), <prefix>.U (H x 3H), <prefix>.b and
/// <prefix>.bh (1 x 3H).
void init_gru(ParamStore& store, const std::string& prefix, Eigen::Index in, Eigen::Index hidden,
              std::uint64_t seed);
Var forward_gru_cell(Tape& tape, const ParamStore& store, const std::string& prefix, Var x, Var h);

/// Softmax attention over time: score_t = h_t . w + b, weights masked by
/// `additive_mask` (batch x T). Returns the weighted sum of states and the
/// weights. Parameters: <prefix>.w (H x 1), <prefix>.b (1 x 1).
struct AttentionOutput {
  Var pooled;
  Var weights;
};
void init_attention(ParamStore& store, const std::string& prefix, Eigen::Index hidden,
                    std::uint64_t seed);
AttentionOutput forward_attention_pool(Tape& tape, const ParamStore& store,
                                       const std::string& prefix, const std::vector<Var>& states,
                                       const Tensor2& additive_mask);

/// Squeeze-style recalibration gate: sigmoid(tanh(s W1 + b1) W2 + b2), mapping
/// summary statistics (batch x S) to one weight per feature (batch x F).
void init_gate(ParamStore& store, const std::string& prefix, Eigen::Index summary_dim,
               Eigen::Index hidden, Eigen::Index features, std::uint64_t seed);
Var forward_gate(Tape& tape, const ParamStore& store, const std::string& prefix, Var summary);

inline constexpr double kMaskedLogit = -1e9;

}  // namespace colacare::nn
