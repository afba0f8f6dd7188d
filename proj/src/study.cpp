#include "slipstroke/study.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace slipstroke {

namespace {

constexpr double kPi = std::numbers::pi;

// Bounded draw by rejection so shuffles do not depend on how the standard
// library maps engine output to a range (uniform_int_distribution is not
// pinned across implementations).
std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t v = rng();
  while (v >= limit) v = rng();
  return v % bound;
}

template <typename T>
void fisher_yates(std::vector<T>& items, std::mt19937_64& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(bounded_draw(rng, i));
    std::swap(items[i - 1], items[j]);
  }
}

std::mt19937_64 make_rng(std::uint64_t seed, int participant, int study) {
  std::seed_seq seq{static_cast<std::uint64_t>(seed),
                    static_cast<std::uint64_t>(participant),
                    static_cast<std::uint64_t>(study)};
  return std::mt19937_64(seq);
}

}  // namespace

std::string to_string(ForearmLocation location) {
  return location == ForearmLocation::volar ? "volar" : "dorsal";
}

ForearmLocation forearm_location_from_string(const std::string& name) {
  if (name == "volar") return ForearmLocation::volar;
  if (name == "dorsal") return ForearmLocation::dorsal;
  throw std::invalid_argument("unknown forearm location: " + name);
}

const std::vector<LabeledAngularVelocity>& stock_angular_velocities() {
  static const std::vector<LabeledAngularVelocity> v = {
      {"2pi", 2.0 * kPi},   {"4pi/3", 4.0 * kPi / 3.0}, {"pi", kPi},
      {"0.8pi", 0.8 * kPi}, {"2pi/3", 2.0 * kPi / 3.0},
  };
  return v;
}

const std::vector<double>& stock_delay_fractions() {
  static const std::vector<double> v = {0.0, 0.05, 0.10, 0.15, 0.20, 0.25};
  return v;
}

const std::vector<double>& stock_spacings_mm() {
  static const std::vector<double> v = {20.0, 30.0, 35.0, 40.0};
  return v;
}

TrialPlan generate_study1_plan(std::uint64_t seed, int participant) {
  if (participant < 0) {
    throw std::invalid_argument("participant index must be non-negative");
  }
  TrialPlan plan;
  plan.study = 1;
  plan.seed = seed;
  plan.participant = participant;

  // Even participants start on the volar surface, odd on the dorsal, so the
  // location order is counterbalanced across the pool.
  const ForearmLocation first =
      participant % 2 == 0 ? ForearmLocation::volar : ForearmLocation::dorsal;
  const ForearmLocation second =
      first == ForearmLocation::volar ? ForearmLocation::dorsal
                                      : ForearmLocation::volar;

  auto rng = make_rng(seed, participant, 1);

  int index = 0;
  for (ForearmLocation location : {first, second}) {
    std::vector<Trial> batch;
    batch.reserve(60);
    for (const auto& omega : stock_angular_velocities()) {
      for (double delay : stock_delay_fractions()) {
        for (int rep = 0; rep < 2; ++rep) {
          Trial t;
          t.repetition = rep;
          t.condition.angular_velocity_rad_s = omega.value_rad_s;
          t.condition.angular_velocity_label = omega.label;
          t.condition.delay_fraction = delay;
          t.condition.tactor_count = 5;
          t.condition.spacing_mm = 20.0;
          t.condition.location = location;
          batch.push_back(t);
        }
      }
    }
    fisher_yates(batch, rng);
    for (Trial& t : batch) {
      t.index = index;
      t.block = index / 30;
      plan.trials.push_back(t);
      ++index;
    }
  }
  return plan;
}

std::vector<double> latin_square_spacing_order(int participant) {
  if (participant < 0) {
    throw std::invalid_argument("participant index must be non-negative");
  }
  // Balanced 4x4 Latin square on positions {1,2,4,3}; successive rows add 1
  // mod 4, which also balances first-order carryover.
  static constexpr int base[4] = {1, 2, 4, 3};
  const auto& spacings = stock_spacings_mm();
  const int row = participant % 4;
  std::vector<double> order(4);
  for (int col = 0; col < 4; ++col) {
    const int pos = (base[col] - 1 + row) % 4;
    order[col] = spacings[pos];
  }
  return order;
}

TrialPlan generate_study2_plan(std::uint64_t seed, int participant) {
  if (participant < 0) {
    throw std::invalid_argument("participant index must be non-negative");
  }
  TrialPlan plan;
  plan.study = 2;
  plan.seed = seed;
  plan.participant = participant;

  auto rng = make_rng(seed, participant, 2);
  const std::vector<double> order = latin_square_spacing_order(participant);

  int index = 0;
  for (int set = 0; set < 4; ++set) {
    std::vector<Trial> batch;
    batch.reserve(10);
    for (const auto& omega : stock_angular_velocities()) {
      for (int rep = 0; rep < 2; ++rep) {
        Trial t;
        t.repetition = rep;
        t.condition.angular_velocity_rad_s = omega.value_rad_s;
        t.condition.angular_velocity_label = omega.label;
        t.condition.delay_fraction = 0.10;
        t.condition.tactor_count = 4;
        t.condition.spacing_mm = order[static_cast<std::size_t>(set)];
        batch.push_back(t);
      }
    }
    fisher_yates(batch, rng);
    for (Trial& t : batch) {
      t.index = index;
      t.block = set;
      plan.trials.push_back(t);
      ++index;
    }
  }
  return plan;
}

void validate_rating(const RatingRecord& record) {
  if (record.continuity < kContinuityMin || record.continuity > kContinuityMax) {
    throw std::invalid_argument(
        "continuity rating " + std::to_string(record.continuity) +
        " outside [" + std::to_string(kContinuityMin) + ", " +
        std::to_string(kContinuityMax) + "]");
  }
  if (record.pleasantness < kPleasantnessMin ||
      record.pleasantness > kPleasantnessMax) {
    throw std::invalid_argument(
        "pleasantness rating " + std::to_string(record.pleasantness) +
        " outside [" + std::to_string(kPleasantnessMin) + ", " +
        std::to_string(kPleasantnessMax) + "]");
  }
  if (record.trial_index < 0) {
    throw std::invalid_argument("trial_index must be non-negative");
  }
}

}  // namespace slipstroke
