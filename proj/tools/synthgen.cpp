// Generates the bundled synthetic dataset: 40-cue free-association +
// valence + questionnaire records with a planted anxiety structure
// (higher latent anxiety -> more links to "anxiety", lower "math" valence,
// higher questionnaire scores) plus, optionally, five rows that trip each
// cleaning rule. Fully deterministic for a given seed.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fmn/ingestion.hpp"
#include "fmn/participant.hpp"
#include "fmn/reference_data.hpp"
#include "fmn/rng.hpp"

namespace {

using namespace fmn;

std::vector<std::string> synthetic_cue_list() {
  // Unique inventory variant: "mathematics" shortened to "math" so the
  // analysis defaults apply, "mathematics" kept as the 40th cue.
  std::vector<std::string> cues = unique_words(cues_exp1());
  for (auto& cue : cues) {
    if (cue == "mathematics") cue = "math";
  }
  cues.push_back("mathematics");
  return cues;
}

const std::vector<std::string>& response_vocabulary() {
  static const std::vector<std::string> vocab = {
      "exam",      "fear",      "numbers",   "formulas",  "boring",   "panic",
      "study",     "books",     "logic",     "grades",    "stress",   "teacher",
      "blackboard", "homework", "failure",   "success",   "effort",   "brain",
      "school",    "future",    "job",       "joy",       "discovery", "research",
      "worry",     "mistake",   "problem",   "thinking",  "friends",  "family",
      "lab",       "theory",    "practice",  "memory",    "focus",    "sleep",
      "coffee",    "deadline",  "pressure",  "curiosity", "dread",    "sweat",
      "silence",   "doubt",     "hope",      "growth",    "change",   "ideas",
      "therapist", "calm",      "support",   "listening",
  };
  return vocab;
}

int clamp_rating(double v) {
  return std::max(1, std::min(5, static_cast<int>(v + 0.5)));
}

ParticipantRecord make_participant(int index, const std::vector<std::string>& cues,
                                   std::uint64_t seed) {
  Rng rng(seed);
  const double anxiety_level = rng.uniform();  // latent trait in [0, 1]
  const auto& vocab = response_vocabulary();

  ParticipantRecord record;
  char id[16];
  std::snprintf(id, sizeof id, "p%03d", index + 1);
  record.participant_id = id;
  record.source = Provenance::human();

  // Extra "anxiety" mentions as responses to other cues scale with the trait.
  const int extra_anxiety_links = static_cast<int>(anxiety_level * 5.0 + rng.uniform() * 1.5);
  std::vector<int> anxiety_hosts;
  for (int k = 0; k < extra_anxiety_links; ++k) {
    anxiety_hosts.push_back(rng.uniform_int(0, static_cast<int>(cues.size()) - 1));
  }

  for (size_t c = 0; c < cues.size(); ++c) {
    const std::string& cue = cues[c];
    std::vector<std::string> responses;
    int slots = cue == "anxiety" ? 3 : (rng.uniform() < 0.12 ? 2 : 3);
    const bool host_anxiety =
        cue != "anxiety" &&
        std::find(anxiety_hosts.begin(), anxiety_hosts.end(), static_cast<int>(c)) !=
            anxiety_hosts.end();
    for (int s = 0; s < slots; ++s) {
      if (host_anxiety && s == 0) {
        responses.push_back("anxiety");
        continue;
      }
      responses.push_back(vocab[rng.uniform_int(0, static_cast<int>(vocab.size()) - 1)]);
    }
    record.cue_responses.emplace_back(cue, std::move(responses));
  }

  // Every cue and response gets rated; "math" and "anxiety" carry the
  // planted affective signal.
  auto rate = [&](const std::string& word) {
    if (record.valence_ratings.count(word)) return;
    double value;
    if (word == "math") {
      value = 4.3 - 2.8 * anxiety_level + rng.normal() * 0.6;
    } else if (word == "anxiety") {
      value = 2.6 - 1.2 * anxiety_level + rng.normal() * 0.6;
    } else {
      value = 1.0 + 4.0 * rng.uniform();
    }
    record.valence_ratings[word].push_back(clamp_rating(value));
    if (rng.uniform() < 0.05) {  // occasional repeat rating
      record.valence_ratings[word].push_back(clamp_rating(value + rng.normal()));
    }
  };
  for (const auto& [cue, responses] : record.cue_responses) {
    rate(cue);
    for (const auto& r : responses) rate(r);
  }

  // Item answers drawn so the expected total tracks the latent trait.
  const double p = std::min(0.95, std::max(0.05, 0.15 + 0.6 * anxiety_level));
  std::vector<int> answers;
  for (int item = 0; item < kMasItemCount; ++item) {
    int a = 1;
    for (int t = 0; t < 4; ++t) {
      if (rng.uniform() < p) ++a;
    }
    answers.push_back(a);
  }
  record.mas_answers = std::move(answers);
  return record;
}

void break_target_associations(ParticipantRecord& record) {
  for (auto& [cue, responses] : record.cue_responses) {
    if (cue == "math" || cue == "anxiety") responses.clear();
  }
}

void break_missing_fraction(ParticipantRecord& record) {
  // Blank out whole cues (except the targets) until well past 1/3 missing.
  int blanked = 0;
  for (auto& [cue, responses] : record.cue_responses) {
    if (cue == "math" || cue == "anxiety") continue;
    if (blanked >= 18) break;
    responses.clear();
    ++blanked;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"synthetic dataset generator"};
  int n = 75;
  std::uint64_t seed = 20240;
  std::string out = "students_synthetic.csv";
  bool with_bad_rows = true;
  app.add_option("--n", n, "number of participants");
  app.add_option("--seed", seed, "master seed");
  app.add_option("--out", out, "output file (.csv or .json)");
  app.add_flag("--with-bad-rows,!--no-bad-rows", with_bad_rows,
               "include five rows that trip the cleaning rules");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::string> cues = synthetic_cue_list();
  std::vector<ParticipantRecord> records;
  for (int i = 0; i < n; ++i) {
    records.push_back(make_participant(i, cues, Rng::derive_seed(seed, i)));
  }

  if (with_bad_rows && n >= 20) {
    // Two rows with no target associations, two with too many blanks, one
    // without questionnaire answers.
    break_target_associations(records[n / 7]);
    break_target_associations(records[2 * n / 7]);
    break_missing_fraction(records[3 * n / 7]);
    break_missing_fraction(records[4 * n / 7]);
    records[5 * n / 7].mas_answers.reset();
  }

  write_participants(records, out);
  std::printf("wrote %zu records to %s\n", records.size(), out.c_str());
  return 0;
}
