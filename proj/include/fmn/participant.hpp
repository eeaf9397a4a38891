#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace fmn {

inline constexpr int kMasItemCount = 23;
inline constexpr int kResponsesPerCue = 3;
inline constexpr int kRatingMin = 1;
inline constexpr int kRatingMax = 5;

/// Randomized socio-demographic profile used for simulated participants.
struct StudentProfile {
  enum class Gender { male, female };
  enum class Education { high_school_final_year, bsc_year1, bsc_year2, bsc_year3 };
  enum class Socioeconomic { low, medium_low, medium, medium_high, high };

  Gender gender = Gender::male;
  int age = 18;  // [18, 25]
  Education education = Education::high_school_final_year;
  Socioeconomic socioeconomic = Socioeconomic::medium;
  std::uint64_t rng_seed = 0;

  bool operator==(const StudentProfile&) const = default;
};

const char* to_string(StudentProfile::Gender g);
const char* to_string(StudentProfile::Education e);
const char* to_string(StudentProfile::Socioeconomic s);
StudentProfile::Gender gender_from_string(const std::string& s);
StudentProfile::Education education_from_string(const std::string& s);
StudentProfile::Socioeconomic socioeconomic_from_string(const std::string& s);

/// Where a record came from: a human participant or a named model.
struct Provenance {
  enum class Kind { human, simulated };
  Kind kind = Kind::human;
  std::string model;  // set when kind == simulated

  static Provenance human() { return {Kind::human, {}}; }
  static Provenance simulated(std::string model_name) {
    return {Kind::simulated, std::move(model_name)};
  }
  bool operator==(const Provenance&) const = default;
};

/// One participant's full task output: cue -> responses (insertion-ordered,
/// up to 3 per cue, entries may be empty), valence ratings (a concept may
/// carry several ratings), the 23 questionnaire answers when present, and
/// an optional profile. All words are stored in normalized form.
struct ParticipantRecord {
  std::string participant_id;
  Provenance source;
  std::vector<std::pair<std::string, std::vector<std::string>>> cue_responses;
  std::map<std::string, std::vector<int>> valence_ratings;
  std::optional<std::vector<int>> mas_answers;
  std::optional<StudentProfile> profile;

  bool operator==(const ParticipantRecord&) const = default;

  /// Responses for one cue, or nullptr if the cue is not listed.
  const std::vector<std::string>* responses_for(const std::string& cue) const;

  /// Cue words in insertion order.
  std::vector<std::string> cues() const;

  /// Count of empty response slots over all listed cues (3 slots per cue).
  int missing_response_slots() const;
};

/// Throws ValidationError naming the participant and offending field if the
/// record violates any domain invariant (rating range, questionnaire length,
/// unrated cue, more than 3 responses per cue).
void validate(const ParticipantRecord& record);

}  // namespace fmn
