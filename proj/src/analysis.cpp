#include "slipstroke/analysis.hpp"

#include <algorithm>
#include <cstdio>
#include <map>
#include <stdexcept>

namespace slipstroke {

namespace {

std::string delay_label(double delay) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g%%", delay * 100.0);
  return buf;
}

std::string spacing_label(double spacing_mm) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%gmm", spacing_mm);
  return buf;
}

std::string level_label(const RatingRecord& r, Factor factor) {
  switch (factor) {
    case Factor::delay: return delay_label(r.condition.delay_fraction);
    case Factor::angular_velocity: return r.condition.angular_velocity_label;
    case Factor::spacing: return spacing_label(r.condition.spacing_mm);
    case Factor::location: return to_string(*r.condition.location);
  }
  return {};
}

// Participant plus every design factor except the compared one; repeats of
// the same condition share a key and get averaged.
std::string pairing_key(const RatingRecord& r, Factor factor) {
  std::string key = r.participant_id;
  auto add = [&key](const std::string& part) {
    key += '|';
    key += part;
  };
  if (factor != Factor::angular_velocity) add(r.condition.angular_velocity_label);
  if (factor != Factor::delay) add(delay_label(r.condition.delay_fraction));
  if (factor != Factor::spacing) add(spacing_label(r.condition.spacing_mm));
  if (factor != Factor::location && r.condition.location) {
    add(to_string(*r.condition.location));
  }
  return key;
}

double measure_value(const RatingRecord& r, Measure measure) {
  return measure == Measure::continuity ? static_cast<double>(r.continuity)
                                        : static_cast<double>(r.pleasantness);
}

// Sort levels the way the tables print them: delays and spacings ascending,
// angular velocities descending (fastest first), volar before dorsal.
double level_sort_value(const RatingRecord& r, Factor factor) {
  switch (factor) {
    case Factor::delay: return r.condition.delay_fraction;
    case Factor::angular_velocity: return -r.condition.angular_velocity_rad_s;
    case Factor::spacing: return r.condition.spacing_mm;
    case Factor::location:
      return r.condition.location == ForearmLocation::volar ? 0.0 : 1.0;
  }
  return 0.0;
}

}  // namespace

std::string factor_name(Factor factor) {
  switch (factor) {
    case Factor::delay: return "delay";
    case Factor::angular_velocity: return "velocity";
    case Factor::spacing: return "spacing";
    case Factor::location: return "location";
  }
  return {};
}

Factor factor_from_string(const std::string& name) {
  if (name == "delay") return Factor::delay;
  if (name == "velocity") return Factor::angular_velocity;
  if (name == "spacing") return Factor::spacing;
  if (name == "location") return Factor::location;
  throw std::invalid_argument("unknown factor: " + name);
}

std::string measure_name(Measure measure) {
  return measure == Measure::continuity ? "continuity" : "pleasantness";
}

Measure measure_from_string(const std::string& name) {
  if (name == "continuity") return Measure::continuity;
  if (name == "pleasantness") return Measure::pleasantness;
  throw std::invalid_argument("unknown measure: " + name);
}

std::vector<LabeledSample> group_ratings(const std::vector<RatingRecord>& records,
                                         Factor factor, Measure measure) {
  struct Accum {
    double sum = 0.0;
    int count = 0;
  };
  struct Level {
    double sort_value = 0.0;
    std::map<std::string, Accum> by_key;
  };
  std::map<std::string, Level> levels;

  for (const RatingRecord& r : records) {
    if (factor == Factor::location && !r.condition.location) continue;
    Level& level = levels[level_label(r, factor)];
    level.sort_value = level_sort_value(r, factor);
    Accum& acc = level.by_key[pairing_key(r, factor)];
    acc.sum += measure_value(r, measure);
    acc.count += 1;
  }

  std::vector<std::pair<std::string, const Level*>> ordered;
  ordered.reserve(levels.size());
  for (const auto& [label, level] : levels) ordered.emplace_back(label, &level);
  std::sort(ordered.begin(), ordered.end(), [](const auto& a, const auto& b) {
    return a.second->sort_value < b.second->sort_value;
  });

  std::vector<LabeledSample> groups;
  groups.reserve(ordered.size());
  for (const auto& [label, level] : ordered) {
    LabeledSample sample;
    sample.label = label;
    sample.values.resize(static_cast<Eigen::Index>(level->by_key.size()));
    Eigen::Index i = 0;
    for (const auto& [key, acc] : level->by_key) {
      sample.pairing_keys.push_back(key);
      sample.values(i++) = acc.sum / acc.count;
    }
    groups.push_back(std::move(sample));
  }
  return groups;
}

FactorAnalysis analyze_factor(const std::vector<RatingRecord>& records, Factor factor,
                              Measure measure, double alpha) {
  FactorAnalysis out;
  out.factor = factor;
  out.measure = measure;
  out.groups = group_ratings(records, factor, measure);

  out.levels.reserve(out.groups.size());
  for (const LabeledSample& g : out.groups) {
    LevelSummary level;
    level.label = g.label;
    level.row = summarize_values(g.values);
    try {
      level.vs_zero = one_sample_t(g.values, 0.0);
    } catch (const DegenerateSampleError&) {
      level.vs_zero.reset();
    }
    out.levels.push_back(std::move(level));
  }

  if (out.groups.size() >= 2) {
    out.pairwise = pairwise_bonferroni(out.groups, alpha);
  }
  return out;
}

}  // namespace slipstroke
