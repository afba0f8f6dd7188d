#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace slipstroke {

enum class ForearmLocation { volar, dorsal };

std::string to_string(ForearmLocation location);
ForearmLocation forearm_location_from_string(const std::string& name);

/// One actuation condition as presented to a participant.
struct TrialCondition {
  double angular_velocity_rad_s = 0.0;
  std::string angular_velocity_label; // exact fraction string, e.g. "2pi/3"
  double delay_fraction = 0.0;
  int tactor_count = 0;
  double spacing_mm = 0.0;
  std::optional<ForearmLocation> location; // set for the two-location study
};

struct Trial {
  int index = 0;      // position in the session
  int block = 0;      // break boundaries fall between blocks
  int repetition = 0; // 0-based repeat of the same condition (per location/set)
  TrialCondition condition;
};

struct TrialPlan {
  int study = 0; // 1 = location x (velocity, delay); 2 = spacing x velocity
  std::uint64_t seed = 0;
  int participant = 0;
  std::vector<Trial> trials;
};

/// The five stock angular velocities with their exact-fraction labels.
struct LabeledAngularVelocity {
  std::string label;
  double value_rad_s;
};
const std::vector<LabeledAngularVelocity>& stock_angular_velocities();

/// The six stock onset-delay fractions.
const std::vector<double>& stock_delay_fractions();

/// The four contact spacings of the spacing study, in presentation-design
/// order {20, 30, 35, 40} mm.
const std::vector<double>& stock_spacings_mm();

/// Two-location session: 5 velocities x 6 delays x 2 repeats per location,
/// one location completed before the other, 4 blocks of 30. Which location
/// comes first alternates with participant parity; within a location the 60
/// trials are shuffled by the seeded generator. Deterministic in
/// (seed, participant).
TrialPlan generate_study1_plan(std::uint64_t seed, int participant);

/// Spacing session: 4 sets of 10 trials (5 velocities x 2 repeats), one
/// spacing per set, delay fixed at 10%, 4 tactors. The spacing order is the
/// balanced 4x4 Latin square row selected by participant index; trials
/// within a set are shuffled by the seeded generator.
TrialPlan generate_study2_plan(std::uint64_t seed, int participant);

/// Row of the balanced 4x4 Latin square used for the spacing order.
std::vector<double> latin_square_spacing_order(int participant);

inline constexpr int kContinuityMin = 1;
inline constexpr int kContinuityMax = 7;
inline constexpr int kPleasantnessMin = -7;
inline constexpr int kPleasantnessMax = 7;

/// A participant's response to one trial, denormalized with the trial's
/// condition so rating logs stand alone.
struct RatingRecord {
  int trial_index = 0;
  int continuity = 0;   // 1 = discrete .. 7 = continuous
  int pleasantness = 0; // -7 = very unpleasant .. +7 = very pleasant
  std::string participant_id;
  std::string timestamp; // ISO 8601, informational only
  TrialCondition condition;
};

/// Throws std::invalid_argument naming the offending field when a Likert
/// value is out of range.
void validate_rating(const RatingRecord& record);

}  // namespace slipstroke
