#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "colacare/ehr_data.hpp"
#include "colacare/experts.hpp"
#include "colacare/json_io.hpp"
#include "colacare/nn/tensor.hpp"

namespace colacare::attribution {

/// Maps a batch of T x F inputs to one probability each.
using ModelFn = std::function<std::vector<double>(std::span<const nn::Tensor2>)>;

enum class Method { exact, sampled };

struct AttributionResult {
  std::vector<double> phi;
  double baseline_value = 0.0;
  double actual_value = 0.0;
  Method method = Method::exact;
  int n_permutations = 0;
  std::uint64_t seed = 0;
};

inline constexpr std::size_t kMaxExactFeatures = 14;
inline constexpr int kMinPermutations = 10;

/// The model as a function of its input, using the record's own visit
/// observation pattern for every coalition.
ModelFn expert_model(const experts::Expert& expert, const ehr::PatientRecord& record);

/// Exact Shapley values over all 2^F coalitions. Features outside a
/// coalition are set to 0 (the train mean after normalization) at every
/// visit. `record` must be prepared.
AttributionResult shapley_exact(const ModelFn& model, const ehr::PatientRecord& record,
                                const std::vector<ehr::FeatureSpec>& specs);

/// Antithetic permutation sampling: n_permutations / 2 (rounded up) random
/// orderings, each evaluated together with its reverse.
AttributionResult shapley_sampled(const ModelFn& model, const ehr::PatientRecord& record,
                                  const std::vector<ehr::FeatureSpec>& specs, int n_permutations,
                                  std::uint64_t seed);

struct RankedFeature {
  std::size_t index = 0;
  std::string name;
  double phi = 0.0;
  std::optional<double> last_value;  // last observed raw value, if any
};

/// Features sorted by |phi| descending, ties by index. `record` supplies the
/// last observed values and should be the raw (unnormalized) record.
std::vector<RankedFeature> top_features(const AttributionResult& result,
                                        const std::vector<ehr::FeatureSpec>& specs,
                                        const ehr::PatientRecord& record, std::size_t k);

std::string to_string(Method m);
Json result_to_json(const AttributionResult& result);
AttributionResult result_from_json(const Json& doc);

}  // namespace colacare::attribution
