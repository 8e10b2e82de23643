#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>

#include "colacare/json_io.hpp"
#include "colacare/nn/tensor.hpp"

namespace colacare::nn {

using Gradients = std::map<std::string, Tensor2>;

struct AdamWOptions {
  double lr = 1e-3;
  double weight_decay = 1e-2;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
};

/// Named parameters plus AdamW moment estimates keyed by the same names.
class ParamStore {
 public:
  /// Adds a parameter initialised uniformly in +-1/sqrt(fan_in). The draw is
  /// seeded by (seed, name) so models sharing a layer name and seed start
  /// from identical weights regardless of declaration order.
  Tensor2& add_uniform(const std::string& name, Eigen::Index rows, Eigen::Index cols,
                       Eigen::Index fan_in, std::uint64_t seed);
  Tensor2& add(const std::string& name, Tensor2 value);

  bool contains(const std::string& name) const { return params_.contains(name); }
  const Tensor2& at(const std::string& name) const;
  Tensor2& at(const std::string& name);

  const std::map<std::string, Tensor2>& params() const { return params_; }
  std::map<std::string, Tensor2>& params() { return params_; }
  std::size_t parameter_count() const;

  std::int64_t step() const { return step_; }

  /// Drops optimizer moments and resets the step counter.
  void reset_optimizer();

  Json to_json() const;
  static ParamStore from_json(const Json& doc);
  void save(const std::filesystem::path& path) const;
  static ParamStore load(const std::filesystem::path& path);

 private:
  friend void adamw_step(ParamStore&, const Gradients&, const AdamWOptions&);

  std::map<std::string, Tensor2> params_;
  std::map<std::string, Tensor2> first_moment_;
  std::map<std::string, Tensor2> second_moment_;
  std::int64_t step_ = 0;
};

/// One decoupled-weight-decay Adam update:
///   p <- p - lr*wd*p - lr * m_hat / (sqrt(v_hat) + eps)
/// Parameters without a gradient entry are still decayed. Throws
/// TrainingError naming the parameter if a gradient is not finite.
void adamw_step(ParamStore& store, const Gradients& grads, const AdamWOptions& options);

}  // namespace colacare::nn
