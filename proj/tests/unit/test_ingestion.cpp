#include <doctest.h>

#include <random>
#include <sstream>

#include "fmn/errors.hpp"
#include "fmn/ingestion.hpp"

using namespace fmn;

namespace {

std::string tiny_csv(const std::string& math_r2 = "", const std::string& rating_math = "4") {
  std::ostringstream os;
  os << "participant_id,cue_math_resp_1,cue_math_resp_2,cue_math_resp_3,"
        "cue_anxiety_resp_1,cue_anxiety_resp_2,cue_anxiety_resp_3,"
        "val_math,val_anxiety,val_exam,val_numbers,val_fear,";
  for (int i = 1; i <= 23; ++i) {
    os << "mas_" << (i < 10 ? "0" : "") << i << (i < 23 ? "," : "\n");
  }
  os << "p1,exam," << math_r2 << ",numbers,fear,,," << rating_math << ",2,3,3,1,";
  for (int i = 1; i <= 23; ++i) os << "3" << (i < 23 ? "," : "\n");
  return os.str();
}

ParticipantRecord make_record(const std::string& id, int math_responses, int anxiety_responses,
                              int other_cues, int other_responses_each) {
  ParticipantRecord r;
  r.participant_id = id;
  auto add_cue = [&](const std::string& cue, int count) {
    std::vector<std::string> responses;
    for (int i = 0; i < count; ++i) responses.push_back(cue + "r" + std::to_string(i));
    r.cue_responses.emplace_back(cue, responses);
    r.valence_ratings[cue] = {3};
    for (const auto& resp : r.cue_responses.back().second) r.valence_ratings[resp] = {3};
  };
  add_cue("math", math_responses);
  add_cue("anxiety", anxiety_responses);
  for (int c = 0; c < other_cues; ++c) {
    add_cue("cue" + std::to_string(c), other_responses_each);
  }
  r.mas_answers = std::vector<int>(23, 3);
  return r;
}

}  // namespace

TEST_CASE("csv row with a blank response cell yields two responses") {
  const auto records = participants_from_csv(tiny_csv());
  REQUIRE(records.size() == 1);
  const auto* responses = records[0].responses_for("math");
  REQUIRE(responses);
  CHECK(*responses == std::vector<std::string>{"exam", "numbers"});
  CHECK(records[0].responses_for("anxiety")->size() == 1);
  CHECK(records[0].mas_answers->size() == 23);
}

TEST_CASE("csv normalizes words") {
  const auto records = participants_from_csv(tiny_csv(" BORING "));
  CHECK(*records[0].responses_for("math") ==
        std::vector<std::string>{"exam", "boring", "numbers"});
}

TEST_CASE("out of range rating is a validation error naming the concept") {
  CHECK_THROWS_WITH_AS(static_cast<void>(participants_from_csv(tiny_csv("", "7"))),
                       doctest::Contains("math"), ValidationError);
}

TEST_CASE("non-integer rating is a parse error with locus") {
  CHECK_THROWS_AS(static_cast<void>(participants_from_csv(tiny_csv("", "often"))), ParseError);
}

TEST_CASE("unknown header column is rejected") {
  CHECK_THROWS_AS(static_cast<void>(participants_from_csv("participant_id,bogus\np1,x\n")),
                  ParseError);
}

TEST_CASE("row width mismatch is rejected with the row number") {
  CHECK_THROWS_WITH_AS(
      static_cast<void>(participants_from_csv("participant_id,val_math\np1\n")),
      doctest::Contains("row 2"), ParseError);
}

TEST_CASE("json dataset round trip is identical") {
  const auto records = participants_from_csv(tiny_csv());
  const std::string once = participants_to_json(records);
  const auto reparsed = participants_from_json(once);
  CHECK(reparsed == records);
  CHECK(participants_to_json(reparsed) == once);
}

TEST_CASE("csv dataset round trip is identical") {
  auto records = participants_from_csv(tiny_csv());
  records[0].source = Provenance::simulated("mock-1");
  const std::string once = participants_to_csv(records);
  const auto reparsed = participants_from_csv(once);
  CHECK(reparsed == records);
  CHECK(participants_to_csv(reparsed) == once);
}

TEST_CASE("json with invalid mas length fails validation") {
  const std::string text = R"([{"participant_id":"p1","cue_responses":{"math":["exam"]},
    "valence_ratings":{"math":[4],"exam":[3]},"mas_answers":[1,2,3]}])";
  CHECK_THROWS_AS(static_cast<void>(participants_from_json(text)), ValidationError);
}

TEST_CASE("json cue without rating fails validation") {
  const std::string text = R"([{"participant_id":"p1","cue_responses":{"math":["exam"]},
    "valence_ratings":{"exam":[3]}}])";
  CHECK_THROWS_WITH_AS(static_cast<void>(participants_from_json(text)),
                       doctest::Contains("no valence rating"), ValidationError);
}

TEST_CASE("cleaning: one answered target cue is enough under the default rule") {
  auto with_math = make_record("keep", 2, 0, 3, 3);
  auto [kept, report] = clean_participants({with_math}, {"math", "anxiety"});
  CHECK(kept.size() == 1);
  CHECK(report.kept == std::vector<std::string>{"keep"});
}

TEST_CASE("cleaning: all target cues blank is excluded") {
  auto record = make_record("drop", 0, 0, 3, 3);
  auto [kept, report] = clean_participants({record}, {"math", "anxiety"});
  CHECK(kept.empty());
  REQUIRE(report.excluded.size() == 1);
  CHECK(report.excluded[0].second == ExclusionReason::no_target_associations);
}

TEST_CASE("cleaning: any-blank rule excludes a record with one blank target") {
  auto record = make_record("drop", 2, 0, 3, 3);
  CleaningOptions options;
  options.target_rule = TargetRule::any_blank;
  auto [kept, report] = clean_participants({record}, {"math", "anxiety"}, options);
  CHECK(kept.empty());
  CHECK(report.excluded[0].second == ExclusionReason::no_target_associations);
}

TEST_CASE("cleaning: 41 blanks out of 120 slots exceeds one third") {
  // 40 cues x 3 slots = 120. Participant answers math+anxiety fully and 25
  // other cues with 2 responses each: missing = 13*3 + 25*1 = 64 > 40.
  // Build exactly 41 blanks instead: 38 other cues, 27 full, 11 with 0
  // responses -> missing = 33 + ... simpler to count directly below.
  auto record = make_record("p", 3, 3, 38, 3);
  // blank out 41 slots: 13 whole cues (39 slots) + one cue loses 2 slots
  int to_blank = 41;
  for (auto& [cue, responses] : record.cue_responses) {
    if (cue == "math" || cue == "anxiety") continue;
    while (!responses.empty() && to_blank > 0) {
      responses.pop_back();
      --to_blank;
    }
    if (to_blank == 0) break;
  }
  REQUIRE(record.missing_response_slots() == 41);
  auto [kept, report] = clean_participants({record}, {"math", "anxiety"});
  CHECK(kept.empty());
  CHECK(report.excluded[0].second == ExclusionReason::excess_missing);

  // exactly 40 blanks (= 1/3) is kept: the rule is strict
  auto borderline = make_record("q", 3, 3, 38, 3);
  to_blank = 40;
  for (auto& [cue, responses] : borderline.cue_responses) {
    if (cue == "math" || cue == "anxiety") continue;
    while (!responses.empty() && to_blank > 0) {
      responses.pop_back();
      --to_blank;
    }
    if (to_blank == 0) break;
  }
  REQUIRE(borderline.missing_response_slots() == 40);
  auto [kept2, report2] = clean_participants({borderline}, {"math", "anxiety"});
  CHECK(kept2.size() == 1);
}

TEST_CASE("cleaning: record without questionnaire is malformed") {
  auto record = make_record("m", 3, 3, 2, 3);
  record.mas_answers.reset();
  auto [kept, report] = clean_participants({record}, {"math"});
  CHECK(kept.empty());
  CHECK(report.excluded[0].second == ExclusionReason::malformed);

  CleaningOptions lenient;
  lenient.require_mas = false;
  auto [kept2, _] = clean_participants({record}, {"math"}, lenient);
  CHECK(kept2.size() == 1);
}

TEST_CASE("cleaning: empty input is an empty result") {
  auto [kept, report] = clean_participants({}, {"math"});
  CHECK(kept.empty());
  CHECK(report.kept.empty());
  CHECK(report.excluded.empty());
}

TEST_CASE("cleaning preserves order, partitions ids, and is idempotent") {
  std::vector<ParticipantRecord> records;
  records.push_back(make_record("a", 1, 1, 4, 3));
  records.push_back(make_record("b", 0, 0, 4, 3));
  records.push_back(make_record("c", 3, 0, 4, 3));
  records.push_back(make_record("d", 0, 3, 4, 3));
  auto [kept, report] = clean_participants(records, {"math", "anxiety"});
  CHECK(report.kept == std::vector<std::string>{"a", "c", "d"});
  CHECK(report.kept.size() + report.excluded.size() == records.size());

  auto [kept2, report2] = clean_participants(kept, {"math", "anxiety"});
  CHECK(kept2 == kept);
  CHECK(report2.excluded.empty());
}

TEST_CASE("cleaning decisions equal an independent per-slot counting oracle") {
  std::mt19937 rng(314);
  std::uniform_int_distribution<int> resp_count(0, 3);
  std::uniform_int_distribution<int> cue_count(3, 12);
  std::bernoulli_distribution has_mas(0.9);

  for (int trial = 0; trial < 200; ++trial) {
    const int cues = cue_count(rng);
    ParticipantRecord r;
    r.participant_id = "p";
    auto add = [&](const std::string& cue, int count) {
      std::vector<std::string> responses;
      for (int i = 0; i < count; ++i) responses.push_back("w" + std::to_string(i));
      r.cue_responses.emplace_back(cue, responses);
      r.valence_ratings[cue] = {3};
      for (const auto& resp : responses) r.valence_ratings[resp] = {3};
    };
    add("math", resp_count(rng));
    add("anxiety", resp_count(rng));
    for (int c = 2; c < cues; ++c) add("cue" + std::to_string(c), resp_count(rng));
    if (has_mas(rng)) r.mas_answers = std::vector<int>(23, 2);

    auto [kept, report] = clean_participants({r}, {"math", "anxiety"});

    // independent decision
    int slots = 0;
    int blanks = 0;
    for (const auto& [_, responses] : r.cue_responses) {
      slots += 3;
      blanks += 3 - static_cast<int>(responses.size());
    }
    const bool math_blank = r.responses_for("math")->empty();
    const bool anx_blank = r.responses_for("anxiety")->empty();
    bool expect_kept = true;
    ExclusionReason expect_reason = ExclusionReason::malformed;
    if (!r.mas_answers) {
      expect_kept = false;
    } else if (math_blank && anx_blank) {
      expect_kept = false;
      expect_reason = ExclusionReason::no_target_associations;
    } else if (blanks * 3 > slots) {
      expect_kept = false;
      expect_reason = ExclusionReason::excess_missing;
    }
    CHECK(kept.size() == (expect_kept ? 1u : 0u));
    if (!expect_kept) CHECK(report.excluded[0].second == expect_reason);
  }
}

TEST_CASE("empty target cue list is an argument error") {
  CHECK_THROWS_AS(clean_participants({}, {}), ArgumentError);
}
