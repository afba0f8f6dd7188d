// Command-line front end: speed tables, command-stream generation, closed
// loop simulation, trial planning, session running, and rating analysis.

#include <CLI11.hpp>
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "slipstroke/analysis.hpp"
#include "slipstroke/config.hpp"
#include "slipstroke/errors.hpp"
#include "slipstroke/kinematics.hpp"
#include "slipstroke/motor_sim.hpp"
#include "slipstroke/schedule.hpp"
#include "slipstroke/stats.hpp"
#include "slipstroke/stream_io.hpp"
#include "slipstroke/study.hpp"
#include "slipstroke/study_io.hpp"
#include "slipstroke/version.hpp"

namespace {

using namespace slipstroke;

// Exit codes shared by every subcommand.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;    // bad arguments or malformed input files
constexpr int kExitDomain = 3;   // physically invalid request
constexpr int kExitTracking = 4; // simulated controller diverged or missed the error budget
constexpr int kExitIo = 5;

constexpr double kPi = std::numbers::pi;

std::string trim_copy(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

double parse_full_double(const std::string& text, const std::string& what) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw ParseError("command line", 0, "bad " + what + ": '" + text + "'");
  }
  return v;
}

/// Angular velocity tokens: "2pi", "4pi/3", "pi", "0.8pi", "2pi/3", or a
/// plain rad/s number. "1.33pi" and "0.66pi" are accepted as the common
/// decimal spellings of 4pi/3 and 2pi/3 and normalized to the exact
/// fractions.
LabeledAngularVelocity parse_omega_token(const std::string& raw) {
  const std::string t = trim_copy(raw);
  if (t == "1.33pi") return {"4pi/3", 4.0 * kPi / 3.0};
  if (t == "0.66pi") return {"2pi/3", 2.0 * kPi / 3.0};
  const std::size_t pos = t.find("pi");
  if (pos == std::string::npos) {
    return {t, parse_full_double(t, "angular velocity")};
  }
  const std::string prefix = t.substr(0, pos);
  const std::string suffix = t.substr(pos + 2);
  const double coeff =
      prefix.empty() ? 1.0 : parse_full_double(prefix, "angular velocity");
  double denom = 1.0;
  if (!suffix.empty()) {
    if (suffix[0] != '/') {
      throw ParseError("command line", 0, "bad angular velocity: '" + t + "'");
    }
    denom = parse_full_double(suffix.substr(1), "angular velocity");
    if (denom == 0.0) {
      throw ParseError("command line", 0, "zero denominator in '" + t + "'");
    }
  }
  return {t, coeff * kPi / denom};
}

/// Delay tokens: "10%" or "0.10".
double parse_delay_token(const std::string& raw) {
  const std::string t = trim_copy(raw);
  if (!t.empty() && t.back() == '%') {
    return parse_full_double(t.substr(0, t.size() - 1), "delay") / 100.0;
  }
  return parse_full_double(t, "delay");
}

DeviceConfig load_config_or_default(const std::string& path) {
  if (path.empty()) return default_device_config();
  return load_device_config(path);
}

StreamProvenance make_provenance(const DeviceConfig& cfg) {
  StreamProvenance p;
  p.tool_version = kToolVersion;
  p.config_hash_hex = config_hash_hex(cfg);
  return p;
}

// Shared generation flags for `schedule` and `simulate`.
struct GenArgs {
  std::string config_path;
  std::string omega = "2pi";
  std::string delay = "10%";
  int tactors = 5;
  double spacing_mm = 20.0;
  double tip_radius_mm = 0.0;        // 0 = keep config
  double trajectory_radius_mm = 0.0; // 0 = keep config
  double max_indentation_mm = 0.0;   // 0 = keep config
  double tick_rate_hz = 0.0;         // 0 = keep config
  double pre_roll_s = -1.0;          // <0 = keep config
  double post_roll_s = -1.0;
  std::string direction; // empty = keep config
};

void add_gen_flags(CLI::App* cmd, GenArgs& a) {
  cmd->add_option("--config", a.config_path, "device config file (INI)");
  cmd->add_option("--omega", a.omega, "angular velocity, e.g. 2pi, 4pi/3, 0.8pi");
  cmd->add_option("--delay", a.delay, "onset delay, e.g. 10% or 0.1");
  cmd->add_option("--tactors", a.tactors, "number of tactors");
  cmd->add_option("--spacing", a.spacing_mm, "tactor spacing in mm");
  cmd->add_option("--tip-radius", a.tip_radius_mm, "tactor tip radius in mm");
  cmd->add_option("--trajectory-radius", a.trajectory_radius_mm,
                  "tip-center trajectory radius in mm");
  cmd->add_option("--max-indentation", a.max_indentation_mm, "peak indentation in mm");
  cmd->add_option("--tick-rate", a.tick_rate_hz, "samples per second");
  cmd->add_option("--pre-roll", a.pre_roll_s, "hold time before the first onset, s");
  cmd->add_option("--post-roll", a.post_roll_s, "hold time after the last rotation, s");
  cmd->add_option("--direction", a.direction, "sweep direction: forward or reverse");
}

struct GenSetup {
  DeviceConfig config;
  TactorGeometry geometry;
  ActuationParams params;
  ScheduleOptions options;
  std::string omega_label;
};

// Flag > config file > built-in default.
GenSetup resolve_gen(const GenArgs& a) {
  GenSetup s;
  s.config = load_config_or_default(a.config_path);

  double tip = s.config.geometry.tip_radius_mm;
  double traj = s.config.geometry.trajectory_radius_mm;
  double imax = s.config.geometry.max_indentation_mm;
  if (a.tip_radius_mm > 0.0) tip = a.tip_radius_mm;
  if (a.trajectory_radius_mm > 0.0) traj = a.trajectory_radius_mm;
  if (a.max_indentation_mm > 0.0) imax = a.max_indentation_mm;
  s.geometry = derive_geometry(tip, traj, imax);

  const LabeledAngularVelocity omega = parse_omega_token(a.omega);
  s.omega_label = omega.label;
  s.params.angular_velocity_rad_s = omega.value_rad_s;
  s.params.delay_fraction = parse_delay_token(a.delay);
  s.params.tactor_count = a.tactors;
  s.params.spacing_mm = a.spacing_mm;

  s.options.tick_rate_hz =
      a.tick_rate_hz > 0.0 ? a.tick_rate_hz : s.config.stream.tick_rate_hz;
  s.options.pre_roll_s = a.pre_roll_s >= 0.0 ? a.pre_roll_s : s.config.stream.pre_roll_s;
  s.options.post_roll_s =
      a.post_roll_s >= 0.0 ? a.post_roll_s : s.config.stream.post_roll_s;
  s.options.direction = a.direction.empty() ? s.config.stream.direction
                                            : sweep_direction_from_string(a.direction);
  return s;
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty() || path == "-") return std::cout;
  file.open(path);
  if (!file) throw IoError(path, "cannot open for writing");
  return file;
}

// ---------------------------------------------------------------- speeds --

int cmd_speeds(const std::string& config_path, std::vector<std::string> omega_tokens,
               std::vector<std::string> delay_tokens, int tactors,
               std::vector<double> spacings, bool full_precision, bool summary_only,
               const std::string& output) {
  const DeviceConfig cfg = load_config_or_default(config_path);

  std::vector<double> omegas;
  std::vector<std::string> labels;
  if (omega_tokens.empty()) {
    for (const auto& w : stock_angular_velocities()) {
      omegas.push_back(w.value_rad_s);
      labels.push_back(w.label);
    }
  } else {
    for (const auto& tok : omega_tokens) {
      const LabeledAngularVelocity w = parse_omega_token(tok);
      omegas.push_back(w.value_rad_s);
      labels.push_back(w.label);
    }
  }

  std::vector<double> delays;
  if (delay_tokens.empty()) {
    delays = stock_delay_fractions();
  } else {
    for (const auto& tok : delay_tokens) delays.push_back(parse_delay_token(tok));
  }
  if (spacings.empty()) spacings = {20.0};

  const SpeedGrid grid = speed_table(cfg.geometry, omegas, delays, tactors, spacings);

  std::ofstream file;
  std::ostream& out = open_output(file, output);
  if (!summary_only) {
    write_speed_grid_csv(out, grid, labels, full_precision);
  }
  // Min/max always land on stdout, even when the table goes to a file.
  std::printf("# apparent_speed_mm_s min=%.17g max=%.17g\n", grid.min_apparent_mm_s(),
              grid.max_apparent_mm_s());
  std::printf("# apparent_speed_cm_s min=%.1f max=%.1f\n",
              grid.min_apparent_mm_s() / 10.0, grid.max_apparent_mm_s() / 10.0);
  return kExitOk;
}

// -------------------------------------------------------------- schedule --

int cmd_schedule(const GenArgs& args, double hold_s, const std::string& output) {
  const GenSetup s = resolve_gen(args);

  TrajectorySet ts;
  if (hold_s > 0.0) {
    ts = hold_schedule(s.geometry, s.params.tactor_count, hold_s, s.options);
  } else {
    s.params.validate(s.config.motor.speed_cap_rad_s);
    ts = build_schedule(s.geometry, s.params, s.options);
  }

  export_command_stream(output, ts, make_provenance(s.config));

  std::printf("wrote %s: %lld rows at %g Hz, %d motors\n", output.c_str(),
              static_cast<long long>(ts.tick_count()), ts.tick_rate_hz, ts.motor_count);
  if (ts.rotates) {
    std::string onsets = "onsets_s:";
    for (double o : ts.onsets_s) {
      char buf[32];
      std::snprintf(buf, sizeof buf, " %.4f", o);
      onsets += buf;
    }
    std::printf("%s\n", onsets.c_str());
    const ContactProfile profile = contact_profile(ts, s.geometry);
    const SpeedSummary speeds = summarize_speeds(s.geometry, s.params);
    std::printf("actuation %.6f s, skin contact %.6f s (%.6f .. %.6f s)\n",
                ts.actuation_time_s, speeds.contact_time_s, profile.first_contact_s,
                profile.last_release_s);
    for (std::size_t m = 0; m < profile.events.size(); ++m) {
      std::printf("motor %zu contact %.4f .. %.4f s\n", m, profile.events[m].start_s,
                  profile.events[m].end_s);
    }
    std::printf("local speed %.2f mm/s, apparent speed %.2f mm/s, overlap=%s\n",
                speeds.local_speed_mm_s, speeds.apparent_speed_mm_s,
                profile.overlapping ? "true" : "false");
  }
  return kExitOk;
}

// -------------------------------------------------------------- simulate --

int cmd_simulate(const GenArgs& args, const std::string& input, double kp, double ki,
                 double kd, bool gains_set, double fail_above_rad,
                 const std::string& output) {
  const GenSetup s = resolve_gen(args);
  DeviceConfig cfg = s.config;
  if (gains_set) {
    cfg.pid.kp = kp;
    cfg.pid.ki = ki;
    cfg.pid.kd = kd;
  }

  TrajectorySet ts;
  if (!input.empty()) {
    ts = import_command_stream(input);
  } else {
    s.params.validate(cfg.motor.speed_cap_rad_s);
    ts = build_schedule(s.geometry, s.params, s.options);
  }

  if (ts.rotates) {
    const SpeedCapCheck cap = validate_speed_cap(ts.params, cfg.motor);
    if (!cap.ok) {
      std::fprintf(stderr,
                   "requested %.6f rad/s exceeds the %.6f rad/s speed cap\n",
                   ts.params.angular_velocity_rad_s, cfg.motor.speed_cap_rad_s);
      return kExitDomain;
    }
  }

  const double dt = 1.0 / ts.tick_rate_hz;
  std::vector<TrackingResult> results;
  results.reserve(static_cast<std::size_t>(ts.motor_count));
  bool any_unstable = false;
  double worst_error = 0.0;
  for (int m = 0; m < ts.motor_count; ++m) {
    results.push_back(simulate_tracking(cfg.motor, cfg.pid, ts.angle_rad.col(m), dt));
    const TrackingSummary& sum = results.back().summary;
    any_unstable = any_unstable || sum.unstable;
    worst_error = std::max(worst_error, sum.max_abs_error_rad);
    std::printf("motor %d: max|e| %.6f rad, rms %.6f rad, saturation %.3f%%%s\n", m,
                sum.max_abs_error_rad, sum.rms_error_rad,
                100.0 * sum.saturation_fraction,
                sum.unstable ? ", UNSTABLE" : "");
    if (sum.unstable) {
      std::printf("motor %d diverged at t=%.4f s\n", m, sum.first_divergence_s);
    }
  }

  if (!output.empty()) {
    export_tracking_log(output, ts, results, make_provenance(cfg));
    std::printf("wrote %s\n", output.c_str());
  }

  if (any_unstable) {
    std::fprintf(stderr, "tracking diverged\n");
    return kExitTracking;
  }
  if (fail_above_rad > 0.0 && worst_error > fail_above_rad) {
    std::fprintf(stderr, "max tracking error %.6f rad exceeds %.6f rad\n", worst_error,
                 fail_above_rad);
    return kExitTracking;
  }
  return kExitOk;
}

// ------------------------------------------------------------------ plan --

int cmd_plan(int study, std::uint64_t seed, int participant,
             const std::string& config_path, const std::string& output) {
  const DeviceConfig cfg = load_config_or_default(config_path);
  TrialPlan plan;
  if (study == 1) {
    plan = generate_study1_plan(seed, participant);
  } else if (study == 2) {
    plan = generate_study2_plan(seed, participant);
  } else {
    throw ParseError("command line", 0, "study must be 1 or 2");
  }

  StreamProvenance prov = make_provenance(cfg);
  prov.seed = seed;
  prov.has_seed = true;

  std::ofstream file;
  std::ostream& out = open_output(file, output);
  write_trial_plan(out, plan, prov);
  if (&out != &std::cout) {
    std::printf("wrote %s: %zu trials (study %d, participant %d, seed %llu)\n",
                output.c_str(), plan.trials.size(), study, participant,
                static_cast<unsigned long long>(seed));
  }
  return kExitOk;
}

// ------------------------------------------------------------------- run --

std::string iso8601_now() {
  const auto now = std::chrono::system_clock::now();
  const std::time_t tt = std::chrono::system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&tt, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

int prompt_rating(const std::string& prompt, int lo, int hi) {
  std::string line;
  while (true) {
    std::printf("%s [%d..%d]: ", prompt.c_str(), lo, hi);
    std::fflush(stdout);
    if (!std::getline(std::cin, line)) {
      throw ParseError("stdin", 0, "input ended before the session finished");
    }
    const std::string t = trim_copy(line);
    try {
      std::size_t used = 0;
      const int v = std::stoi(t, &used);
      if (used == t.size() && v >= lo && v <= hi) return v;
    } catch (const std::exception&) {
    }
    std::printf("  enter an integer between %d and %d\n", lo, hi);
  }
}

int cmd_run(const std::string& plan_path, const std::string& output,
            const std::string& participant_id, const std::string& config_path,
            const std::string& streams_dir) {
  const DeviceConfig cfg = load_config_or_default(config_path);
  const TrialPlan plan = load_trial_plan(plan_path);
  if (plan.trials.empty()) {
    throw ParseError(plan_path, 0, "plan has no trials");
  }

  // Resume: trials already in the log are skipped, the log is appended to.
  std::set<int> done;
  bool existing = false;
  {
    std::ifstream probe(output);
    if (probe.good()) {
      existing = true;
      for (const RatingRecord& r : read_rating_log(probe, output)) {
        done.insert(r.trial_index);
      }
    }
  }

  std::ofstream log(output, std::ios::app);
  if (!log) throw IoError(output, "cannot open rating log for writing");
  if (!existing) {
    StreamProvenance prov = make_provenance(cfg);
    prov.seed = plan.seed;
    prov.has_seed = true;
    write_rating_log_header(log, prov);
    log.flush();
  }

  const std::string pid =
      participant_id.empty() ? "P" + std::to_string(plan.participant) : participant_id;

  int presented = 0;
  for (const Trial& trial : plan.trials) {
    if (done.count(trial.index)) continue;
    const TrialCondition& c = trial.condition;

    if ((presented > 0 || !done.empty()) && trial.index % 30 == 0 && plan.study == 1) {
      std::printf("\n-- block %d: break point --\n", trial.block);
    }
    std::printf("\ntrial %d/%zu  omega=%s delay=%g%% tactors=%d spacing=%gmm%s%s\n",
                trial.index + 1, plan.trials.size(), c.angular_velocity_label.c_str(),
                c.delay_fraction * 100.0, c.tactor_count, c.spacing_mm,
                c.location ? " location=" : "",
                c.location ? to_string(*c.location).c_str() : "");

    if (!streams_dir.empty()) {
      ActuationParams params;
      params.angular_velocity_rad_s = c.angular_velocity_rad_s;
      params.delay_fraction = c.delay_fraction;
      params.tactor_count = c.tactor_count;
      params.spacing_mm = c.spacing_mm;
      params.validate(cfg.motor.speed_cap_rad_s);
      ScheduleOptions options;
      options.tick_rate_hz = cfg.stream.tick_rate_hz;
      options.pre_roll_s = cfg.stream.pre_roll_s;
      options.post_roll_s = cfg.stream.post_roll_s;
      options.direction = cfg.stream.direction;
      const TrajectorySet ts = build_schedule(cfg.geometry, params, options);
      char name[64];
      std::snprintf(name, sizeof name, "/trial_%03d.csv", trial.index);
      export_command_stream(streams_dir + name, ts, make_provenance(cfg));
    }

    RatingRecord record;
    record.trial_index = trial.index;
    record.condition = c;
    record.participant_id = pid;
    record.timestamp = iso8601_now();
    record.continuity =
        prompt_rating("continuity (1=discrete, 7=continuous)", kContinuityMin,
                      kContinuityMax);
    record.pleasantness =
        prompt_rating("pleasantness (-7=unpleasant, +7=pleasant)", kPleasantnessMin,
                      kPleasantnessMax);
    append_rating(log, record);
    log.flush();
    ++presented;
  }

  std::printf("\nsession complete: %d trials rated, log in %s\n", presented,
              output.c_str());
  return kExitOk;
}

// --------------------------------------------------------------- analyze --

void print_factor(const FactorAnalysis& fa) {
  std::printf("== %s by %s ==\n", measure_name(fa.measure).c_str(),
              factor_name(fa.factor).c_str());
  if (fa.levels.size() < 2) {
    std::printf("  factor not present in the log (need at least 2 levels)\n\n");
    return;
  }
  for (const LevelSummary& level : fa.levels) {
    std::string row = "  " + level.label;
    row.resize(std::max<std::size_t>(row.size(), 10), ' ');
    char buf[160];
    if (level.row.std_error) {
      std::snprintf(buf, sizeof buf, " n=%-3ld mean=%7.3f se=%6.3f", level.row.n,
                    level.row.mean, *level.row.std_error);
    } else {
      std::snprintf(buf, sizeof buf, " n=%-3ld mean=%7.3f", level.row.n,
                    level.row.mean);
    }
    row += buf;
    if (fa.measure == Measure::pleasantness && level.vs_zero) {
      std::snprintf(buf, sizeof buf, "  vs 0: t=%7.3f df=%.1f p=%.4g",
                    level.vs_zero->t, level.vs_zero->df, level.vs_zero->p_two_sided);
      row += buf;
    }
    std::printf("%s\n", row.c_str());
  }
  std::printf("  pairwise (Bonferroni over %zu pairs):\n", fa.pairwise.size());
  for (const PairwiseComparison& pc : fa.pairwise) {
    if (!pc.test) {
      std::printf("    %s vs %s: not testable (%s)\n", pc.label_a.c_str(),
                  pc.label_b.c_str(), pc.degenerate_reason.c_str());
      continue;
    }
    std::printf("    %s vs %s: %s t=%7.3f df=%6.2f p=%.4g adj=%.4g %s\n",
                pc.label_a.c_str(), pc.label_b.c_str(),
                pc.method == PairwiseMethod::paired ? "paired" : "welch ",
                pc.test->t, pc.test->df, pc.test->p_two_sided, pc.adjusted_p,
                pc.significant ? "*" : "ns");
  }
  std::printf("\n");
}

int cmd_analyze(const std::vector<std::string>& logs, const std::string& factor_arg,
                const std::string& measure_arg, double alpha) {
  std::vector<RatingRecord> records;
  for (const std::string& path : logs) {
    const std::vector<RatingRecord> part = load_rating_log(path);
    records.insert(records.end(), part.begin(), part.end());
  }
  if (records.empty()) {
    std::fprintf(stderr, "no rating records loaded\n");
    return kExitUsage;
  }
  std::printf("%zu rating records from %zu log(s)\n\n", records.size(), logs.size());

  std::vector<Measure> measures;
  if (measure_arg == "both") {
    measures = {Measure::continuity, Measure::pleasantness};
  } else {
    measures = {measure_from_string(measure_arg)};
  }
  std::vector<Factor> factors;
  if (factor_arg == "all") {
    factors = {Factor::delay, Factor::angular_velocity, Factor::spacing,
               Factor::location};
  } else {
    factors = {factor_from_string(factor_arg)};
  }

  for (Measure measure : measures) {
    for (Factor factor : factors) {
      const FactorAnalysis fa = analyze_factor(records, factor, measure, alpha);
      if (factor_arg == "all" && fa.levels.size() < 2) continue; // not in this design
      print_factor(fa);
    }
  }
  return kExitOk;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"rotating-tactor stroke renderer and simulator"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1);

  // speeds
  auto* speeds = app.add_subcommand("speeds", "print the apparent/local speed table");
  std::string sp_config, sp_output;
  std::vector<std::string> sp_omegas, sp_delays;
  std::vector<double> sp_spacings;
  int sp_tactors = 5;
  bool sp_full = false, sp_summary = false;
  speeds->add_option("--config", sp_config, "device config file (INI)");
  speeds->add_option("--omega", sp_omegas, "angular velocities (default: stock five)");
  speeds->add_option("--delay", sp_delays, "onset delays (default: stock six)");
  speeds->add_option("--tactors", sp_tactors, "number of tactors");
  speeds->add_option("--spacing", sp_spacings, "spacings in mm (default: 20)");
  speeds->add_flag("--full", sp_full, "full precision mm/s instead of cm/s");
  speeds->add_flag("--summary", sp_summary, "print only the min/max lines");
  speeds->add_option("-o,--output", sp_output, "output file (default stdout)");

  // schedule
  auto* schedule = app.add_subcommand("schedule", "generate a command stream CSV");
  GenArgs sc_args;
  add_gen_flags(schedule, sc_args);
  double sc_hold = 0.0;
  std::string sc_output;
  schedule->add_option("--hold", sc_hold, "emit an all-rest hold stream of this many seconds");
  schedule->add_option("-o,--output", sc_output, "output stream path")->required();

  // simulate
  auto* simulate = app.add_subcommand("simulate", "run the closed-loop motor simulation");
  GenArgs si_args;
  add_gen_flags(simulate, si_args);
  std::string si_input, si_output;
  double si_kp = 0.0, si_ki = 0.0, si_kd = 0.0, si_fail_above = 0.05;
  simulate->add_option("--input", si_input, "simulate an existing stream file");
  auto* kp_opt = simulate->add_option("--kp", si_kp, "proportional gain, A/rad");
  simulate->add_option("--ki", si_ki, "integral gain, A/(rad s)");
  simulate->add_option("--kd", si_kd, "derivative gain, A s/rad");
  simulate->add_option("--fail-above", si_fail_above,
                       "fail if max |error| exceeds this many rad (0 disables)");
  simulate->add_option("-o,--output", si_output, "write the tracking log here");

  // plan
  auto* plan = app.add_subcommand("plan", "generate a participant trial plan");
  int pl_study = 1, pl_participant = 0;
  std::uint64_t pl_seed = 1;
  std::string pl_config, pl_output = "-";
  plan->add_option("--study", pl_study, "1 = location study, 2 = spacing study")
      ->required();
  plan->add_option("--seed", pl_seed, "master RNG seed");
  plan->add_option("--participant", pl_participant, "participant index")->required();
  plan->add_option("--config", pl_config, "device config file (INI)");
  plan->add_option("-o,--output", pl_output, "plan path (default stdout)");

  // run
  auto* run = app.add_subcommand("run", "run a planned session and collect ratings");
  std::string rn_plan, rn_output, rn_pid, rn_config, rn_streams;
  run->add_option("--plan", rn_plan, "trial plan to execute")->required();
  run->add_option("-o,--output", rn_output, "rating log (appended on resume)")
      ->required();
  run->add_option("--participant-id", rn_pid, "label stored with each rating");
  run->add_option("--config", rn_config, "device config file (INI)");
  run->add_option("--streams-dir", rn_streams,
                  "also export each trial's command stream into this directory");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "summarize rating logs");
  std::vector<std::string> an_logs;
  std::string an_factor = "all", an_measure = "both";
  double an_alpha = 0.05;
  analyze->add_option("--log", an_logs, "rating log(s)")->required();
  analyze->add_option("--factor", an_factor,
                      "delay, velocity, spacing, location, or all");
  analyze->add_option("--measure", an_measure, "continuity, pleasantness, or both");
  analyze->add_option("--alpha", an_alpha, "significance level");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (speeds->parsed()) {
      return cmd_speeds(sp_config, sp_omegas, sp_delays, sp_tactors, sp_spacings,
                        sp_full, sp_summary, sp_output);
    }
    if (schedule->parsed()) return cmd_schedule(sc_args, sc_hold, sc_output);
    if (simulate->parsed()) {
      const bool gains_set = kp_opt->count() > 0;
      return cmd_simulate(si_args, si_input, si_kp, si_ki, si_kd, gains_set,
                          si_fail_above, si_output);
    }
    if (plan->parsed()) {
      return cmd_plan(pl_study, pl_seed, pl_participant, pl_config, pl_output);
    }
    if (run->parsed()) return cmd_run(rn_plan, rn_output, rn_pid, rn_config, rn_streams);
    if (analyze->parsed()) return cmd_analyze(an_logs, an_factor, an_measure, an_alpha);
  } catch (const ParseError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  } catch (const IoError& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitIo;
  } catch (const std::domain_error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDomain;
  } catch (const std::invalid_argument& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) { return dispatch(argc, argv); }
