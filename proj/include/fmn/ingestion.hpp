#pragma once

#include <string>
#include <utility>
#include <vector>

#include "fmn/participant.hpp"

namespace fmn {

enum class DatasetFormat { csv, json };

/// Pick csv/json from the file extension; default json.
DatasetFormat format_from_path(const std::string& path);

enum class ExclusionReason { no_target_associations, excess_missing, malformed };
const char* to_string(ExclusionReason r);

/// Outcome of a cleaning pass: which participants survived and why the rest
/// were dropped. kept and excluded ids partition the input.
struct CleaningReport {
  std::vector<std::string> kept;
  std::vector<std::pair<std::string, ExclusionReason>> excluded;

  std::string to_json() const;
};

/// Whether the zero-association rule needs all target cues blank (the
/// default reading) or any one of them.
enum class TargetRule { all_blank, any_blank };
TargetRule target_rule_from_string(const std::string& s);

struct CleaningOptions {
  TargetRule target_rule = TargetRule::all_blank;
  /// Records without a complete questionnaire are excluded as malformed.
  bool require_mas = true;
};

/// Parse a dataset file into canonical records. Words are normalized
/// (trimmed, ASCII-lowercased, diacritics kept); blank response cells become
/// absent entries. Schema violations raise ParseError with a row/field
/// locus; domain violations (rating outside [1,5], short questionnaire)
/// raise ValidationError naming the participant.
std::vector<ParticipantRecord> parse_participants(const std::string& path, DatasetFormat format);
std::vector<ParticipantRecord> parse_participants(const std::string& path);

std::vector<ParticipantRecord> participants_from_json(const std::string& text);
std::vector<ParticipantRecord> participants_from_csv(const std::string& text);

std::string participants_to_json(const std::vector<ParticipantRecord>& records);
std::string participants_to_csv(const std::vector<ParticipantRecord>& records);

void write_participants(const std::vector<ParticipantRecord>& records,
                        const std::string& path);  // format from extension

/// Apply the exclusion rules, preserving input order of kept records:
///   1. malformed: incomplete questionnaire (when options.require_mas);
///   2. no_target_associations: every (or any, per options) target cue blank;
///   3. excess_missing: blank response slots exceed 1/3 of cues * 3.
/// Empty input gives an empty result, not an error.
std::pair<std::vector<ParticipantRecord>, CleaningReport> clean_participants(
    const std::vector<ParticipantRecord>& records,
    const std::vector<std::string>& target_cues,
    const CleaningOptions& options = {});

}  // namespace fmn
