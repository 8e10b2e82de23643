#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "colacare/agents.hpp"
#include "colacare/ehr_data.hpp"
#include "colacare/nn/params.hpp"
#include "colacare/nn/tape.hpp"
#include "colacare/retrieval.hpp"

namespace colacare::fusion {

struct FusionConfig {
  int hidden_dim = 128;
  double lr = 1e-3;
  double weight_decay = 1e-4;
  int batch_size = 128;
  int max_epochs = 50;
  int patience = 10;
  std::uint64_t seed = 0;

  void validate() const;
};

Json config_to_json(const FusionConfig& c);
FusionConfig config_from_json(const Json& doc);

struct FusionSample {
  std::string patient_id;
  std::vector<std::string> expert_names;
  std::vector<std::vector<double>> expert_hiddens;
  std::vector<double> report_embedding;
  int label = 0;
};

/// Input layout: expert hidden states in this order, then the report.
struct FusionSchema {
  std::vector<std::string> expert_names;
  std::vector<std::size_t> expert_dims;
  std::size_t report_dim = 0;

  std::size_t input_dim() const;
  /// Throws SchemaError on a different expert order and DimensionError on
  /// a length mismatch.
  void check(const FusionSample& sample) const;
  static FusionSchema of(const FusionSample& sample);
  friend bool operator==(const FusionSchema&, const FusionSchema&) = default;
};

Json schema_to_json(const FusionSchema& s);
FusionSchema schema_from_json(const Json& doc);

/// Text embedded for the report channel: the risk category and narrative.
std::string report_text(const agents::MetaReport& report);

/// Unit-norm embedding of a report; empty text is an EmbeddingError.
std::vector<double> embed_report(std::string_view text, const retrieval::Embedder& embedder);

/// concat -> tanh hidden layer -> sigmoid. Parameters fc1.*, fc2.*.
class FusionModel {
 public:
  FusionModel(FusionSchema schema, FusionConfig config);
  FusionModel(FusionSchema schema, FusionConfig config, nn::ParamStore params);

  const FusionSchema& schema() const { return schema_; }
  const FusionConfig& config() const { return config_; }
  const nn::ParamStore& params() const { return params_; }
  nn::ParamStore& params() { return params_; }

  /// Concatenated inputs, one row per sample.
  nn::Tensor2 inputs(const std::vector<FusionSample>& samples) const;
  nn::Var forward(nn::Tape& tape, const nn::Tensor2& x) const;
  std::vector<double> predict(const nn::Tensor2& x) const;

  /// <dir>/fusion.params.json and <dir>/fusion.schema.json
  void save(const std::filesystem::path& dir) const;
  static FusionModel load(const std::filesystem::path& dir);

 private:
  FusionSchema schema_;
  FusionConfig config_;
  nn::ParamStore params_;
};

double predict_fusion(const FusionModel& model, const FusionSample& sample);
std::vector<double> predict_fusion(const FusionModel& model, const std::vector<FusionSample>& samples);

/// Per-sample BCE with the probability clamped to [1e-7, 1 - 1e-7].
double bce(double p, int y);

struct FusionEpoch {
  int epoch = 0;
  double train_loss = 0.0;
  double val_auprc = 0.0;
  double val_auroc = 0.0;
  bool improved = false;
};

struct TrainedFusion {
  FusionModel model;
  std::vector<FusionEpoch> log;
  int best_epoch = 0;
};

/// AdamW on mean BCE with early stopping on validation AUPRC. Samples are
/// matched to the split by patient id.
TrainedFusion train_fusion(const FusionConfig& config, const std::vector<FusionSample>& samples,
                           const ehr::DatasetSplit& split);

}  // namespace colacare::fusion
