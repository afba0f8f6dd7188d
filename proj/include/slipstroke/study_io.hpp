#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "slipstroke/stream_io.hpp"
#include "slipstroke/study.hpp"

namespace slipstroke {

/// Trial plans and rating logs are stored as JSON lines: `#` provenance
/// comments up front, then one JSON object per line. JSONL keeps the `run`
/// tool appendable mid-session (a crash loses at most the current trial)
/// and the records greppable.

void write_trial_plan(std::ostream& out, const TrialPlan& plan,
                      const StreamProvenance& provenance);
void save_trial_plan(const std::string& path, const TrialPlan& plan,
                     const StreamProvenance& provenance);

/// ParseError (with 1-based line numbers) for malformed headers, JSON, or
/// out-of-domain values.
TrialPlan read_trial_plan(std::istream& in, const std::string& source);
TrialPlan load_trial_plan(const std::string& path);

void write_rating_log_header(std::ostream& out, const StreamProvenance& provenance);
/// One JSONL line; validates the record first.
void append_rating(std::ostream& out, const RatingRecord& record);

void write_rating_log(std::ostream& out, const std::vector<RatingRecord>& records,
                      const StreamProvenance& provenance);
void save_rating_log(const std::string& path, const std::vector<RatingRecord>& records,
                     const StreamProvenance& provenance);

std::vector<RatingRecord> read_rating_log(std::istream& in, const std::string& source);
std::vector<RatingRecord> load_rating_log(const std::string& path);

}  // namespace slipstroke
