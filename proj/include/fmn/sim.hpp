#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fmn/errors.hpp"
#include "fmn/participant.hpp"
#include "fmn/reference_data.hpp"

namespace fmn {

/// Missing API key, unreadable endpoint URL and similar setup problems.
class EnvironmentError : public Error {
 public:
  using Error::Error;
};

/// The remote endpoint kept failing (transport errors / non-200s).
class EndpointError : public Error {
 public:
  using Error::Error;
};

/// Uniform, seed-deterministic draw of a student profile.
StudentProfile sample_profile(std::uint64_t seed);

/// The Italian personification preamble with grammatical-gender suffixes,
/// age, enrolment year and socioeconomic adjective filled in.
std::string render_persona_prompt(const StudentProfile& profile);

enum class SimTask { mas, associations, valence };
const char* to_string(SimTask task);

/// Instruction text for one task. Materials are the 23 questionnaire item
/// texts (Italian), the cue list, or the word list to rate. Every prompt
/// directs the reply to be returned as comma-separated .txt content and
/// states the exact expected value count.
std::string render_task_prompt(SimTask task, const std::vector<std::string>& materials);

/// Values expected in a reply for the given materials (23 for the
/// questionnaire, 3 per cue for associations, one rating per word).
int expected_reply_count(SimTask task, const std::vector<std::string>& materials);

/// Parsed reply payload: trimmed fields for associations (empties allowed),
/// validated integers for the rating tasks.
struct ReplyPayload {
  std::vector<std::string> words;
  std::vector<int> ratings;
};

/// Split a reply on commas and validate it against the task shape. Throws
/// MalformedReplyError on count mismatch, non-integer / out-of-range
/// ratings, or instruction-echo fields (more than 6 words in one field).
ReplyPayload parse_llm_reply(SimTask task, const std::string& text, int expected_count);

struct SimConfig {
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  std::string model;
  std::string api_key_env = "OPENAI_API_KEY";
  int n_participants = 1;
  int max_concurrent = 4;
  int retry_budget = 2;
  double temperature = 1.0;
  std::vector<std::string> cues;
  std::uint64_t master_seed = 42;
  /// One conversation per participant (persona context persists across the
  /// three tasks); false sends each task as an independent exchange.
  bool single_conversation = true;
  int backoff_base_ms = 250;
};

struct RequestLogEntry {
  int participant = 0;  // 1-based index
  std::string task;
  int attempt = 1;
  std::string request_hash;
  std::string response_hash;
  std::string status;  // ok | malformed | transport_error
  std::string detail;
};

struct RunLog {
  std::string model;
  std::uint64_t master_seed = 0;
  double temperature = 1.0;
  std::vector<RequestLogEntry> entries;       // ordered by (participant, task, attempt)
  std::vector<int> failed_participants;       // exhausted their retry budget

  int retry_count() const;
  std::string to_jsonl() const;  // one JSON object per line
};

struct SimResult {
  std::vector<ParticipantRecord> records;  // ordered by participant index
  RunLog log;
};

/// Run the full protocol against a chat-completions endpoint: per
/// participant derive a seed, sample a profile, run questionnaire ->
/// associations -> valence as chat turns behind the persona prompt, retry
/// malformed replies up to the budget, and assemble validated records.
/// Participants run concurrently up to max_concurrent; output order and log
/// order are by participant index regardless of scheduling.
SimResult run_simulation(const SimConfig& config);

}  // namespace fmn
