#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "slipstroke/kinematics.hpp"
#include "slipstroke/motor_sim.hpp"
#include "slipstroke/schedule.hpp"

namespace slipstroke {

/// Sampling and padding settings for generated command streams.
struct StreamConfig {
  double tick_rate_hz = 10000.0;
  double pre_roll_s = 0.2;
  double post_roll_s = 0.2;
  SweepDirection direction = SweepDirection::forward;
};

/// Everything the tools need to describe one rig: tactor geometry, motor
/// model, controller gains, and stream sampling. Serialized as a small
/// INI-style file so configs are hand-editable.
struct DeviceConfig {
  int format_version = 1;
  TactorGeometry geometry = derive_geometry(3.0, 9.0, 1.5);
  MotorModel motor;
  PidGains pid = default_pid_gains();
  StreamConfig stream;
};

DeviceConfig default_device_config();

/// Parses the INI text. Unknown sections or keys raise ParseError carrying
/// the source name and 1-based line number; so do malformed lines and
/// numbers. Missing keys keep their defaults.
DeviceConfig parse_device_config(std::istream& in, const std::string& source);

/// Reads a config file. IoError if the file cannot be opened.
DeviceConfig load_device_config(const std::string& path);

/// Serializes with full round-trip precision (every double as %.17g), so
/// save followed by load reproduces the struct bit for bit.
std::string format_device_config(const DeviceConfig& config);
void save_device_config(const DeviceConfig& config, const std::string& path);

/// FNV-1a over the canonical serialized form, printed as 16 hex digits.
/// Stream exports and plan files embed it so outputs can be matched to the
/// config that produced them.
std::uint64_t config_hash(const DeviceConfig& config);
std::string config_hash_hex(const DeviceConfig& config);

std::string to_string(SweepDirection direction);
SweepDirection sweep_direction_from_string(const std::string& name);

}  // namespace slipstroke
