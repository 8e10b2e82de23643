#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "colacare/ehr_data.hpp"
#include "colacare/json_io.hpp"
#include "colacare/nn/params.hpp"
#include "colacare/nn/tape.hpp"

namespace colacare::experts {

/// gru_last:     GRU over visits, hidden = final state.
/// attn_pool:    GRU states pooled by softmax attention over time. Visits with
///               no observed cell are excluded from the attention unless every
///               visit is fully imputed.
/// recalib_gate: a sigmoid gate per feature, computed from the per-feature
///               mean and last value, rescales every visit before the GRU.
/// All three end in the same linear + sigmoid head.
enum class Architecture { gru_last, attn_pool, recalib_gate };

std::string to_string(Architecture a);
Architecture architecture_from_string(const std::string& name);

struct ExpertConfig {
  std::string name;
  Architecture architecture = Architecture::gru_last;
  int hidden_dim = 64;
  double lr = 1e-3;
  double weight_decay = 1e-4;
  int max_epochs = 50;
  int patience = 10;
  int batch_size = 128;
  std::uint64_t seed = 0;

  /// Throws ParameterError on non-positive sizes or patience >= max_epochs.
  void validate() const;
};

Json config_to_json(const ExpertConfig& config);
ExpertConfig config_from_json(const Json& doc);

struct ExpertOutput {
  std::vector<double> hidden;       // h_EHR, pre-head representation
  double logit = 0.5;               // post-sigmoid probability z
  std::vector<double> importances;  // alpha, filled by attribution
};

/// Visits of several prepared records laid out for one batched forward pass.
struct SequenceBatch {
  std::vector<nn::Tensor2> steps;  // T_max entries of batch x F, zero padded
  nn::Tensor2 valid;               // batch x T_max, 1 where the visit exists
  nn::Tensor2 attention_mask;      // batch x T_max additive mask
  nn::Tensor2 summary;             // batch x 2F: per-feature mean and last value
  Eigen::Index batch() const { return valid.rows(); }
};

/// Builds a batch from T x F matrices. `observed_visit`, when given, marks
/// visits with at least one observed cell (one vector per record).
SequenceBatch make_batch(std::span<const nn::Tensor2> series,
                         std::span<const std::vector<bool>> observed_visit = {});

class Expert {
 public:
  Expert(ExpertConfig config, std::vector<ehr::FeatureSpec> specs);
  Expert(ExpertConfig config, std::vector<ehr::FeatureSpec> specs, nn::ParamStore params);

  const ExpertConfig& config() const { return config_; }
  const std::string& name() const { return config_.name; }
  const std::vector<ehr::FeatureSpec>& specs() const { return specs_; }
  std::size_t n_features() const { return specs_.size(); }
  const nn::ParamStore& params() const { return params_; }
  nn::ParamStore& params() { return params_; }

  struct Forward {
    nn::Var hidden;
    nn::Var prob;
    std::optional<nn::Var> gate;
  };
  /// Records the full architecture on `tape` for a batch.
  Forward forward(nn::Tape& tape, const SequenceBatch& batch) const;

  /// Same computation as forward() in plain Eigen, without recording.
  /// Returns batch x 1 probabilities; optionally the hidden states and gate.
  nn::Tensor2 evaluate(const SequenceBatch& batch, nn::Tensor2* hidden = nullptr,
                       nn::Tensor2* gate = nullptr) const;

  /// Probabilities for a batch of T x F inputs without recording gradients.
  /// `observed_visit` is forwarded to make_batch.
  std::vector<double> predict_proba(std::span<const nn::Tensor2> series,
                                    std::span<const std::vector<bool>> observed_visit = {}) const;

  void save(const std::filesystem::path& dir) const;
  static Expert load(const std::filesystem::path& dir, const std::string& name);

 private:
  ExpertConfig config_;
  std::vector<ehr::FeatureSpec> specs_;
  nn::ParamStore params_;
};

struct EpochLog {
  int epoch = 0;
  double train_loss = 0.0;
  double val_auprc = 0.0;
  double val_auroc = 0.0;
  bool improved = false;
};

struct TrainedExpert {
  Expert expert;
  std::vector<EpochLog> log;
  int best_epoch = 0;
};

/// Trains with AdamW on BCE, evaluating validation AUPRC after every epoch and
/// keeping the best checkpoint. Stops after `patience` epochs without
/// improvement or at max_epochs. `records` must already be prepared with the
/// fitted `specs`.
TrainedExpert train_expert(const ExpertConfig& config, const std::vector<ehr::FeatureSpec>& specs,
                           const std::vector<ehr::PatientRecord>& records,
                           const ehr::DatasetSplit& split);

/// Hidden state and probability for one prepared record.
ExpertOutput infer(const Expert& expert, const ehr::PatientRecord& record);

/// Recalibration gate for one prepared record (recalib_gate only).
std::vector<double> gate_vector(const Expert& expert, const ehr::PatientRecord& record);

std::vector<ExpertOutput> predict_batch(const Expert& expert,
                                        std::span<const ehr::PatientRecord> records);

/// The visit series of a prepared record as a tensor.
nn::Tensor2 as_tensor(const ehr::PatientRecord& record);
std::vector<bool> observed_visits(const ehr::PatientRecord& record);

}  // namespace colacare::experts
