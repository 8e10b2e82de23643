#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "colacare/json_io.hpp"

namespace colacare::eval {

/// P(score+ > score-) + 1/2 P(tie) over all positive/negative pairs.
/// Throws UndefinedMetricError unless both classes are present.
double auroc(std::span<const int> labels, std::span<const double> scores);

/// Average precision: sum over distinct thresholds (descending, ties grouped)
/// of recall increment times precision. Requires at least one positive.
double auprc(std::span<const int> labels, std::span<const double> scores);

/// max over thresholds tau in the distinct scores of min(precision, recall),
/// predicting positive when score >= tau.
double min_p_se(std::span<const int> labels, std::span<const double> scores);

struct MetricResult {
  double auroc = 0.0;
  double auprc = 0.0;
  double min_p_se = 0.0;
  std::size_t n_samples = 0;
  std::size_t n_positive = 0;
};

MetricResult evaluate(std::span<const int> labels, std::span<const double> scores);

struct MeanStd {
  double mean = 0.0;
  double std = 0.0;
};

struct BootstrapSummary {
  MeanStd auroc;
  MeanStd auprc;
  MeanStd min_p_se;
  std::size_t resamples = 0;  // resamples that contributed
  std::size_t skipped = 0;    // gave up after 10 single-class redraws
  std::uint64_t seed = 0;
};

inline constexpr std::size_t kDefaultBootstrapRounds = 100;
inline constexpr int kMaxRedraws = 10;

/// B resamples of size n with replacement. Resample i draws from its own
/// generator seeded with seed ^ i. A single-class resample is redrawn up to
/// 10 times, then skipped. Std is the population standard deviation.
BootstrapSummary bootstrap(std::span<const int> labels, std::span<const double> scores,
                           std::size_t rounds, std::uint64_t seed);

/// Table-style cell: both values multiplied by 100, e.g. "56.14 ± 4.16".
std::string format_cell(const MeanStd& value);

/// {"auroc": {"mean", "std"}, ...} with values multiplied by 100.
Json summary_to_json(const BootstrapSummary& summary);

}  // namespace colacare::eval
