#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "colacare/json_io.hpp"

namespace colacare::ehr {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using MaskMatrix = Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class FeatureKind { static_feature, dynamic_feature };

struct FeatureSpec {
  std::string name;
  FeatureKind kind = FeatureKind::dynamic_feature;
  std::string unit;
  // Train-split statistics over observed cells. Unset until fit_specs runs.
  std::optional<double> population_mean;
  std::optional<double> population_std;

  bool fitted() const { return population_mean.has_value() && population_std.has_value(); }
  friend bool operator==(const FeatureSpec&, const FeatureSpec&) = default;
};

/// Static info values are either numbers (age) or text (sex, condition).
using StaticValue = Json;

struct PatientRecord {
  std::string patient_id;
  std::map<std::string, StaticValue> static_info;
  Matrix series;    // T x F; unobserved cells hold NaN until imputed
  MaskMatrix mask;  // true = observed
  int label = 0;

  Eigen::Index visits() const { return series.rows(); }
  Eigen::Index features() const { return series.cols(); }
};

struct Dataset {
  std::vector<FeatureSpec> features;
  std::vector<PatientRecord> patients;
};

struct DatasetSplit {
  std::vector<std::string> train;
  std::vector<std::string> val;
  std::vector<std::string> test;
  std::uint64_t seed = 0;

  friend bool operator==(const DatasetSplit&, const DatasetSplit&) = default;
};

struct SplitRatios {
  double train = 0.8;
  double val = 0.15;
  double test = 0.05;
};

/// Checks one record against the feature list; throws ValidationError.
void validate_record(const PatientRecord& record, const std::vector<FeatureSpec>& specs);

Dataset dataset_from_json(const Json& doc);
Json dataset_to_json(const Dataset& dataset);

Dataset load_dataset(const std::filesystem::path& path);
void save_dataset(const std::filesystem::path& path, const Dataset& dataset);

/// Per-class largest-remainder apportionment of n items over the ratios.
/// Exposed for tests; split() uses it for both totals and positives.
std::vector<std::size_t> apportion(std::size_t n, const std::vector<double>& ratios);

DatasetSplit split(const std::vector<PatientRecord>& records, const SplitRatios& ratios,
                   std::uint64_t seed);

Json split_to_json(const DatasetSplit& split);
DatasetSplit split_from_json(const Json& doc);

/// Fills population mean/std from observed cells of the given patients.
/// Features never observed fall back to mean 0, std 1.
std::vector<FeatureSpec> fit_specs(const std::vector<FeatureSpec>& specs,
                                   const std::vector<PatientRecord>& records,
                                   const std::vector<std::string>& train_ids);

/// Forward fill along time per feature, then population mean. Mask untouched.
PatientRecord impute(const PatientRecord& record, const std::vector<FeatureSpec>& specs);

/// Z-normalizes every cell with the fitted statistics (std floored at 1e-6).
PatientRecord normalize(const PatientRecord& record, const std::vector<FeatureSpec>& specs);

/// impute then normalize; the form every model consumes.
PatientRecord prepare(const PatientRecord& record, const std::vector<FeatureSpec>& specs);

inline constexpr double kStdFloor = 1e-6;

// ---------------------------------------------------------------------------
// Synthetic cohort.
//
// Feature layout (F columns):
//   0..2  signal features; the label reads their last-visit values
//   3     trend feature; the label reads its per-patient slope
//   4..   noise features, with "age" and "sex" as the last two static
//         columns when F >= 6
//
// Each dynamic feature is generated as a latent standard-normal trajectory
//   latent[t] = base + slope * t / (T - 1) + 0.3 * noise[t]
// with base ~ N(0,1), slope ~ N(0,1) for the trend feature and 0 elsewhere,
// reported in clinical units as mean + sd * latent. T is uniform on
// [2, max_visits]. The outcome is Bernoulli(risk) with
//   risk = sigmoid(bias + 1.4*s0 + 1.1*s1 + 0.9*s2 - 2.2*slope)
// where s_i is the latent last-visit value of signal i. The bias is frozen
// so the positive rate lands near 12%. After labels are drawn each dynamic
// cell is hidden independently with probability 0.2 (mask=false, NaN).
// ---------------------------------------------------------------------------

struct SyntheticConfig {
  std::size_t n_patients = 2000;
  std::size_t n_features = 10;
  std::size_t max_visits = 8;
  std::uint64_t seed = 7;
};

inline constexpr double kSyntheticBias = -4.1;
inline constexpr double kSyntheticMissingRate = 0.20;
inline constexpr std::size_t kSignalFeatures = 3;
inline constexpr std::size_t kTrendFeature = 3;

Dataset generate_synthetic(const SyntheticConfig& config);

/// The latent risk the generator drew the label from; exposed for tests and
/// for building informative demo scripts.
std::vector<double> synthetic_latent_risk(const SyntheticConfig& config);

}  // namespace colacare::ehr
