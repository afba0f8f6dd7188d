#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slipstroke/stats.hpp"
#include "slipstroke/study.hpp"

namespace slipstroke {

/// Design factors a rating log can be split on.
enum class Factor { delay, angular_velocity, spacing, location };
std::string factor_name(Factor factor);
Factor factor_from_string(const std::string& name);

enum class Measure { continuity, pleasantness };
std::string measure_name(Measure measure);
Measure measure_from_string(const std::string& name);

/// Per-level summary of one measure.
struct LevelSummary {
  std::string label;
  SummaryRow row;
  std::optional<TTestResult> vs_zero; // unset when the level is degenerate
};

/// Everything `analyze` reports for one factor of one measure: level means
/// with standard errors, per-level one-sample tests against 0, and the
/// Bonferroni-adjusted pairwise matrix.
struct FactorAnalysis {
  Factor factor = Factor::delay;
  Measure measure = Measure::continuity;
  std::vector<LabeledSample> groups;
  std::vector<LevelSummary> levels;
  std::vector<PairwiseComparison> pairwise;
};

/// Splits the records on `factor` and keeps one value per pairing key and
/// level. The pairing key joins the participant id with every design factor
/// other than the compared one, so paired tests align repeated measures;
/// repetitions of one condition by one participant are averaged into a
/// single value first. Records lacking the factor (e.g. no location in a
/// spacing session) are dropped.
std::vector<LabeledSample> group_ratings(const std::vector<RatingRecord>& records,
                                         Factor factor, Measure measure);

FactorAnalysis analyze_factor(const std::vector<RatingRecord>& records, Factor factor,
                              Measure measure, double alpha = 0.05);

}  // namespace slipstroke
