#include "slipstroke/study_io.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "slipstroke/errors.hpp"
#include "slipstroke/version.hpp"

namespace slipstroke {

namespace {

using nlohmann::json;

constexpr int kPlanFormatVersion = 1;
constexpr int kRatingFormatVersion = 1;

void write_provenance(std::ostream& out, const StreamProvenance& p) {
  out << "# tool_version: " << (p.tool_version.empty() ? kToolVersion : p.tool_version)
      << "\n";
  if (!p.config_hash_hex.empty()) out << "# config_hash: " << p.config_hash_hex << "\n";
  if (p.has_seed) out << "# seed: " << p.seed << "\n";
}

json condition_to_json(const TrialCondition& c) {
  json j{{"omega_rad_s", c.angular_velocity_rad_s},
         {"omega_label", c.angular_velocity_label},
         {"delay", c.delay_fraction},
         {"tactors", c.tactor_count},
         {"spacing_mm", c.spacing_mm}};
  if (c.location) j["location"] = to_string(*c.location);
  return j;
}

TrialCondition condition_from_json(const json& j, const std::string& source, int line) {
  TrialCondition c;
  try {
    c.angular_velocity_rad_s = j.at("omega_rad_s").get<double>();
    c.angular_velocity_label = j.at("omega_label").get<std::string>();
    c.delay_fraction = j.at("delay").get<double>();
    c.tactor_count = j.at("tactors").get<int>();
    c.spacing_mm = j.at("spacing_mm").get<double>();
    if (j.contains("location")) {
      c.location = forearm_location_from_string(j.at("location").get<std::string>());
    }
  } catch (const std::exception& e) {
    throw ParseError(source, line, std::string("bad trial condition: ") + e.what());
  }
  return c;
}

// Parses "# key: value" header lines until the first record line, which is
// handed back through `pending`.
struct HeaderScan {
  std::string magic;
  std::vector<std::pair<std::string, std::string>> fields;
  std::string pending;
  bool has_pending = false;
  int lineno = 0;
};

HeaderScan scan_header(std::istream& in, const std::string& source) {
  HeaderScan scan;
  std::string line;
  if (!std::getline(in, line)) throw ParseError(source, 1, "empty file");
  scan.lineno = 1;
  if (line.rfind("# ", 0) != 0) throw ParseError(source, 1, "missing header line");
  scan.magic = line.substr(2);
  while (std::getline(in, line)) {
    ++scan.lineno;
    if (line.empty()) continue;
    if (line[0] != '#') {
      scan.pending = line;
      scan.has_pending = true;
      break;
    }
    const std::size_t colon = line.find(':');
    if (colon != std::string::npos && colon > 2) {
      scan.fields.emplace_back(line.substr(2, colon - 2), line.substr(colon + 2));
    }
  }
  return scan;
}

}  // namespace

void write_trial_plan(std::ostream& out, const TrialPlan& plan,
                      const StreamProvenance& provenance) {
  out << "# slipstroke_trial_plan_v" << kPlanFormatVersion << "\n";
  write_provenance(out, provenance);
  out << "# study: " << plan.study << "\n";
  out << "# plan_seed: " << plan.seed << "\n";
  out << "# participant: " << plan.participant << "\n";
  for (const Trial& t : plan.trials) {
    json j = condition_to_json(t.condition);
    j["index"] = t.index;
    j["block"] = t.block;
    j["repetition"] = t.repetition;
    out << j.dump() << "\n";
  }
}

void save_trial_plan(const std::string& path, const TrialPlan& plan,
                     const StreamProvenance& provenance) {
  std::ofstream out(path);
  if (!out) throw IoError(path, "cannot open plan for writing");
  write_trial_plan(out, plan, provenance);
  if (!out) throw IoError(path, "write failed");
}

TrialPlan read_trial_plan(std::istream& in, const std::string& source) {
  HeaderScan scan = scan_header(in, source);
  if (scan.magic != "slipstroke_trial_plan_v" + std::to_string(kPlanFormatVersion)) {
    throw ParseError(source, 1, "not a slipstroke trial plan: '" + scan.magic + "'");
  }
  TrialPlan plan;
  for (const auto& [key, value] : scan.fields) {
    try {
      if (key == "study") plan.study = std::stoi(value);
      else if (key == "plan_seed") plan.seed = std::stoull(value);
      else if (key == "participant") plan.participant = std::stoi(value);
    } catch (const std::exception&) {
      throw ParseError(source, scan.lineno, "bad header value for '" + key + "'");
    }
  }

  int lineno = scan.lineno;
  auto consume = [&](const std::string& line, int at) {
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(source, at, std::string("bad JSON: ") + e.what());
    }
    Trial t;
    t.condition = condition_from_json(j, source, at);
    try {
      t.index = j.at("index").get<int>();
      t.block = j.at("block").get<int>();
      t.repetition = j.at("repetition").get<int>();
    } catch (const std::exception& e) {
      throw ParseError(source, at, std::string("bad trial record: ") + e.what());
    }
    plan.trials.push_back(t);
  };

  if (scan.has_pending) consume(scan.pending, scan.lineno);
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    consume(line, lineno);
  }
  return plan;
}

TrialPlan load_trial_plan(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open plan for reading");
  return read_trial_plan(in, path);
}

void write_rating_log_header(std::ostream& out, const StreamProvenance& provenance) {
  out << "# slipstroke_rating_log_v" << kRatingFormatVersion << "\n";
  write_provenance(out, provenance);
}

void append_rating(std::ostream& out, const RatingRecord& record) {
  validate_rating(record);
  json j = condition_to_json(record.condition);
  j["trial_index"] = record.trial_index;
  j["continuity"] = record.continuity;
  j["pleasantness"] = record.pleasantness;
  j["participant_id"] = record.participant_id;
  j["timestamp"] = record.timestamp;
  out << j.dump() << "\n";
}

void write_rating_log(std::ostream& out, const std::vector<RatingRecord>& records,
                      const StreamProvenance& provenance) {
  write_rating_log_header(out, provenance);
  for (const RatingRecord& r : records) append_rating(out, r);
}

void save_rating_log(const std::string& path, const std::vector<RatingRecord>& records,
                     const StreamProvenance& provenance) {
  std::ofstream out(path);
  if (!out) throw IoError(path, "cannot open rating log for writing");
  write_rating_log(out, records, provenance);
  if (!out) throw IoError(path, "write failed");
}

std::vector<RatingRecord> read_rating_log(std::istream& in, const std::string& source) {
  HeaderScan scan = scan_header(in, source);
  if (scan.magic != "slipstroke_rating_log_v" + std::to_string(kRatingFormatVersion)) {
    throw ParseError(source, 1, "not a slipstroke rating log: '" + scan.magic + "'");
  }
  std::vector<RatingRecord> records;
  auto consume = [&](const std::string& line, int at) {
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw ParseError(source, at, std::string("bad JSON: ") + e.what());
    }
    RatingRecord r;
    r.condition = condition_from_json(j, source, at);
    try {
      r.trial_index = j.at("trial_index").get<int>();
      r.continuity = j.at("continuity").get<int>();
      r.pleasantness = j.at("pleasantness").get<int>();
      r.participant_id = j.value("participant_id", std::string());
      r.timestamp = j.value("timestamp", std::string());
    } catch (const std::exception& e) {
      throw ParseError(source, at, std::string("bad rating record: ") + e.what());
    }
    try {
      validate_rating(r);
    } catch (const std::invalid_argument& e) {
      throw ParseError(source, at, e.what());
    }
    records.push_back(r);
  };

  int lineno = scan.lineno;
  if (scan.has_pending) consume(scan.pending, scan.lineno);
  std::string line;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    consume(line, lineno);
  }
  return records;
}

std::vector<RatingRecord> load_rating_log(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open rating log for reading");
  return read_rating_log(in, path);
}

}  // namespace slipstroke
