#pragma once

#include <Eigen/Core>
#include <optional>
#include <string>
#include <vector>

namespace slipstroke {

/// Raised by the t-tests when a sample cannot support one (n < 2 or zero
/// variance).
class DegenerateSampleError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct SummaryRow {
  double mean = 0.0;
  std::optional<double> std_error; // unset for n = 1
  long n = 0;
};

/// Mean and standard error (sample sd over sqrt n). Empty input throws.
SummaryRow summarize_values(const Eigen::Ref<const Eigen::VectorXd>& values);

struct TTestResult {
  double t = 0.0;
  double df = 0.0;
  double p_two_sided = 0.0;
};

TTestResult one_sample_t(const Eigen::Ref<const Eigen::VectorXd>& values, double mu0);

/// Unequal-variance two-sample test with Welch-Satterthwaite df.
TTestResult welch_t(const Eigen::Ref<const Eigen::VectorXd>& a,
                    const Eigen::Ref<const Eigen::VectorXd>& b);

/// One-sample test on element-wise differences a - b.
TTestResult paired_t(const Eigen::Ref<const Eigen::VectorXd>& a,
                     const Eigen::Ref<const Eigen::VectorXd>& b);

/// Two-sided Student-t CDF, real-valued df > 0. Evaluated through the
/// regularized incomplete beta function.
double student_t_cdf(double t, double df);

/// Regularized incomplete beta I_x(a, b) by continued fraction.
double regularized_incomplete_beta(double a, double b, double x);

/// One group entering a pairwise comparison. When pairing_keys is non-empty
/// it must parallel values; groups whose key sets match are compared with a
/// paired test, everything else falls back to Welch.
struct LabeledSample {
  std::string label;
  Eigen::VectorXd values;
  std::vector<std::string> pairing_keys;
};

enum class PairwiseMethod { paired, welch };

struct PairwiseComparison {
  std::string label_a;
  std::string label_b;
  PairwiseMethod method = PairwiseMethod::welch;
  std::optional<TTestResult> test; // unset when the pair is degenerate
  double adjusted_p = 1.0;         // min(1, raw * pair count); NaN when degenerate
  bool significant = false;        // adjusted_p < alpha
  std::string degenerate_reason;   // empty unless the pair could not be tested
};

/// All unordered pairs with Bonferroni-adjusted p-values. Degenerate pairs
/// are reported in place, never thrown.
std::vector<PairwiseComparison> pairwise_bonferroni(const std::vector<LabeledSample>& groups,
                                                    double alpha = 0.05);

}  // namespace slipstroke
