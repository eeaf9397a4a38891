#include "fmn/participant.hpp"

#include "fmn/errors.hpp"

namespace fmn {

const char* to_string(StudentProfile::Gender g) {
  return g == StudentProfile::Gender::male ? "male" : "female";
}

const char* to_string(StudentProfile::Education e) {
  switch (e) {
    case StudentProfile::Education::high_school_final_year: return "high_school_final_year";
    case StudentProfile::Education::bsc_year1: return "bsc_year1";
    case StudentProfile::Education::bsc_year2: return "bsc_year2";
    case StudentProfile::Education::bsc_year3: return "bsc_year3";
  }
  return "?";
}

const char* to_string(StudentProfile::Socioeconomic s) {
  switch (s) {
    case StudentProfile::Socioeconomic::low: return "low";
    case StudentProfile::Socioeconomic::medium_low: return "medium_low";
    case StudentProfile::Socioeconomic::medium: return "medium";
    case StudentProfile::Socioeconomic::medium_high: return "medium_high";
    case StudentProfile::Socioeconomic::high: return "high";
  }
  return "?";
}

StudentProfile::Gender gender_from_string(const std::string& s) {
  if (s == "male") return StudentProfile::Gender::male;
  if (s == "female") return StudentProfile::Gender::female;
  throw ArgumentError("unknown gender: " + s);
}

StudentProfile::Education education_from_string(const std::string& s) {
  if (s == "high_school_final_year") return StudentProfile::Education::high_school_final_year;
  if (s == "bsc_year1") return StudentProfile::Education::bsc_year1;
  if (s == "bsc_year2") return StudentProfile::Education::bsc_year2;
  if (s == "bsc_year3") return StudentProfile::Education::bsc_year3;
  throw ArgumentError("unknown education level: " + s);
}

StudentProfile::Socioeconomic socioeconomic_from_string(const std::string& s) {
  if (s == "low") return StudentProfile::Socioeconomic::low;
  if (s == "medium_low") return StudentProfile::Socioeconomic::medium_low;
  if (s == "medium") return StudentProfile::Socioeconomic::medium;
  if (s == "medium_high") return StudentProfile::Socioeconomic::medium_high;
  if (s == "high") return StudentProfile::Socioeconomic::high;
  throw ArgumentError("unknown socioeconomic level: " + s);
}

const std::vector<std::string>* ParticipantRecord::responses_for(const std::string& cue) const {
  for (const auto& [c, responses] : cue_responses) {
    if (c == cue) return &responses;
  }
  return nullptr;
}

std::vector<std::string> ParticipantRecord::cues() const {
  std::vector<std::string> out;
  out.reserve(cue_responses.size());
  for (const auto& [c, _] : cue_responses) out.push_back(c);
  return out;
}

int ParticipantRecord::missing_response_slots() const {
  int missing = 0;
  for (const auto& [_, responses] : cue_responses) {
    missing += kResponsesPerCue - static_cast<int>(responses.size());
  }
  return missing;
}

void validate(const ParticipantRecord& record) {
  const std::string who = "participant '" + record.participant_id + "': ";
  if (record.participant_id.empty()) {
    throw ValidationError("participant with empty id");
  }
  for (const auto& [cue, responses] : record.cue_responses) {
    if (responses.size() > kResponsesPerCue) {
      throw ValidationError(who + "more than 3 responses for cue '" + cue + "'");
    }
    if (!record.valence_ratings.count(cue)) {
      throw ValidationError(who + "cue '" + cue + "' has no valence rating");
    }
  }
  for (const auto& [word, ratings] : record.valence_ratings) {
    if (ratings.empty()) {
      throw ValidationError(who + "empty rating list for '" + word + "'");
    }
    for (int r : ratings) {
      if (r < kRatingMin || r > kRatingMax) {
        throw ValidationError(who + "rating " + std::to_string(r) + " for '" +
                              word + "' outside [1,5]");
      }
    }
  }
  if (record.mas_answers) {
    if (record.mas_answers->size() != kMasItemCount) {
      throw ValidationError(who + "questionnaire has " +
                            std::to_string(record.mas_answers->size()) +
                            " answers, expected 23");
    }
    for (size_t i = 0; i < record.mas_answers->size(); ++i) {
      const int a = (*record.mas_answers)[i];
      if (a < kRatingMin || a > kRatingMax) {
        throw ValidationError(who + "answer " + std::to_string(a) + " at item " +
                              std::to_string(i + 1) + " outside [1,5]");
      }
    }
  }
  if (record.profile) {
    if (record.profile->age < 18 || record.profile->age > 25) {
      throw ValidationError(who + "profile age outside [18,25]");
    }
  }
}

}  // namespace fmn
