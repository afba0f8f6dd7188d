#include "slipstroke/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>

namespace slipstroke {

namespace {

double sample_variance(const Eigen::Ref<const Eigen::VectorXd>& v) {
  const double mean = v.mean();
  return (v.array() - mean).square().sum() / static_cast<double>(v.size() - 1);
}

// Continued fraction for the incomplete beta (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 300;
  constexpr double kEps = std::numeric_limits<double>::epsilon();
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < 10.0 * kEps) return h;
  }
  throw std::runtime_error("incomplete beta continued fraction failed to converge");
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw std::invalid_argument("incomplete beta requires positive shape parameters");
  }
  if (x < 0.0 || x > 1.0) {
    throw std::invalid_argument("incomplete beta requires x in [0, 1]");
  }
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;

  const double log_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                           a * std::log(x) + b * std::log1p(-x);
  const double front = std::exp(log_front);
  // Use the representation that converges fastest.
  if (x < (a + 1.0) / (a + b + 2.0)) {
    return front * beta_continued_fraction(a, b, x) / a;
  }
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double student_t_cdf(double t, double df) {
  if (!(df > 0.0)) throw std::invalid_argument("student_t_cdf requires df > 0");
  if (t == 0.0) return 0.5;
  const double x = df / (df + t * t);
  const double tail = 0.5 * regularized_incomplete_beta(df / 2.0, 0.5, x);
  return t > 0.0 ? 1.0 - tail : tail;
}

SummaryRow summarize_values(const Eigen::Ref<const Eigen::VectorXd>& values) {
  if (values.size() == 0) {
    throw std::invalid_argument("summarize_values requires a non-empty sample");
  }
  SummaryRow row;
  row.n = values.size();
  row.mean = values.mean();
  if (row.n > 1) {
    row.std_error = std::sqrt(sample_variance(values) / static_cast<double>(row.n));
  }
  return row;
}

TTestResult one_sample_t(const Eigen::Ref<const Eigen::VectorXd>& values, double mu0) {
  const auto n = values.size();
  if (n < 2) throw DegenerateSampleError("degenerate sample: need at least 2 values");
  const double var = sample_variance(values);
  if (!(var > 0.0)) throw DegenerateSampleError("degenerate sample: zero variance");

  TTestResult r;
  r.t = (values.mean() - mu0) / std::sqrt(var / static_cast<double>(n));
  r.df = static_cast<double>(n - 1);
  r.p_two_sided = 2.0 * (1.0 - student_t_cdf(std::abs(r.t), r.df));
  return r;
}

TTestResult welch_t(const Eigen::Ref<const Eigen::VectorXd>& a,
                    const Eigen::Ref<const Eigen::VectorXd>& b) {
  if (a.size() < 2 || b.size() < 2) {
    throw DegenerateSampleError("degenerate sample: need at least 2 values per group");
  }
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  const double va = sample_variance(a) / na;
  const double vb = sample_variance(b) / nb;
  if (!(va + vb > 0.0)) {
    throw DegenerateSampleError("degenerate sample: zero variance in both groups");
  }

  TTestResult r;
  r.t = (a.mean() - b.mean()) / std::sqrt(va + vb);
  r.df = (va + vb) * (va + vb) / (va * va / (na - 1.0) + vb * vb / (nb - 1.0));
  r.p_two_sided = 2.0 * (1.0 - student_t_cdf(std::abs(r.t), r.df));
  return r;
}

TTestResult paired_t(const Eigen::Ref<const Eigen::VectorXd>& a,
                     const Eigen::Ref<const Eigen::VectorXd>& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("paired_t requires equal-length samples");
  }
  return one_sample_t(a - b, 0.0);
}

namespace {

// Paired comparison is valid when both groups carry unique keys and the key
// sets coincide; values are then aligned by key.
bool try_align_by_keys(const LabeledSample& a, const LabeledSample& b, Eigen::VectorXd& va,
                       Eigen::VectorXd& vb) {
  if (a.pairing_keys.empty() || b.pairing_keys.empty()) return false;
  if (a.pairing_keys.size() != b.pairing_keys.size()) return false;
  if (static_cast<Eigen::Index>(a.pairing_keys.size()) != a.values.size()) return false;
  if (static_cast<Eigen::Index>(b.pairing_keys.size()) != b.values.size()) return false;

  std::map<std::string, double> bv;
  for (size_t i = 0; i < b.pairing_keys.size(); ++i) {
    if (!bv.emplace(b.pairing_keys[i], b.values[static_cast<Eigen::Index>(i)]).second) {
      return false; // duplicate key
    }
  }
  std::map<std::string, double> av;
  for (size_t i = 0; i < a.pairing_keys.size(); ++i) {
    if (!av.emplace(a.pairing_keys[i], a.values[static_cast<Eigen::Index>(i)]).second) {
      return false;
    }
  }
  if (av.size() != bv.size()) return false;

  va.resize(static_cast<Eigen::Index>(av.size()));
  vb.resize(static_cast<Eigen::Index>(av.size()));
  Eigen::Index k = 0;
  for (const auto& [key, value] : av) {
    auto it = bv.find(key);
    if (it == bv.end()) return false;
    va[k] = value;
    vb[k] = it->second;
    ++k;
  }
  return true;
}

}  // namespace

std::vector<PairwiseComparison> pairwise_bonferroni(const std::vector<LabeledSample>& groups,
                                                    double alpha) {
  if (groups.size() < 2) {
    throw std::invalid_argument("pairwise_bonferroni requires at least 2 groups");
  }
  const size_t pair_count = groups.size() * (groups.size() - 1) / 2;
  std::vector<PairwiseComparison> out;
  out.reserve(pair_count);

  for (size_t i = 0; i < groups.size(); ++i) {
    for (size_t j = i + 1; j < groups.size(); ++j) {
      PairwiseComparison cmp;
      cmp.label_a = groups[i].label;
      cmp.label_b = groups[j].label;

      Eigen::VectorXd aligned_a, aligned_b;
      const bool paired = try_align_by_keys(groups[i], groups[j], aligned_a, aligned_b);
      cmp.method = paired ? PairwiseMethod::paired : PairwiseMethod::welch;
      try {
        const TTestResult t = paired ? paired_t(aligned_a, aligned_b)
                                     : welch_t(groups[i].values, groups[j].values);
        cmp.test = t;
        cmp.adjusted_p =
            std::min(1.0, t.p_two_sided * static_cast<double>(pair_count));
        cmp.significant = cmp.adjusted_p < alpha;
      } catch (const DegenerateSampleError& e) {
        cmp.degenerate_reason = e.what();
        cmp.adjusted_p = std::numeric_limits<double>::quiet_NaN();
      }
      out.push_back(std::move(cmp));
    }
  }
  return out;
}

}  // namespace slipstroke
