#include "fmn/ingestion.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "fmn/csv.hpp"
#include "fmn/errors.hpp"
#include "fmn/text.hpp"

namespace fmn {

using ordered_json = nlohmann::ordered_json;

DatasetFormat format_from_path(const std::string& path) {
  const auto dot = path.find_last_of('.');
  if (dot != std::string::npos) {
    std::string ext = path.substr(dot + 1);
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (ext == "csv") return DatasetFormat::csv;
  }
  return DatasetFormat::json;
}

const char* to_string(ExclusionReason r) {
  switch (r) {
    case ExclusionReason::no_target_associations: return "no_target_associations";
    case ExclusionReason::excess_missing: return "excess_missing";
    case ExclusionReason::malformed: return "malformed";
  }
  return "?";
}

TargetRule target_rule_from_string(const std::string& s) {
  if (s == "all") return TargetRule::all_blank;
  if (s == "any") return TargetRule::any_blank;
  throw ArgumentError("unknown target rule: " + s + " (expected 'all' or 'any')");
}

std::string CleaningReport::to_json() const {
  ordered_json doc;
  doc["kept"] = kept;
  doc["excluded"] = ordered_json::array();
  for (const auto& [id, reason] : excluded) {
    doc["excluded"].push_back({{"participant_id", id}, {"reason", to_string(reason)}});
  }
  doc["kept_count"] = kept.size();
  doc["excluded_count"] = excluded.size();
  return doc.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// JSON dataset format
// ---------------------------------------------------------------------------

namespace {

StudentProfile profile_from_json(const ordered_json& obj) {
  StudentProfile profile;
  profile.gender = gender_from_string(obj.at("gender").get<std::string>());
  profile.age = obj.at("age").get<int>();
  profile.education = education_from_string(obj.at("education").get<std::string>());
  profile.socioeconomic = socioeconomic_from_string(obj.at("socioeconomic").get<std::string>());
  profile.rng_seed = obj.value("rng_seed", 0ULL);
  return profile;
}

ordered_json profile_to_json(const StudentProfile& profile) {
  ordered_json obj;
  obj["gender"] = to_string(profile.gender);
  obj["age"] = profile.age;
  obj["education"] = to_string(profile.education);
  obj["socioeconomic"] = to_string(profile.socioeconomic);
  obj["rng_seed"] = profile.rng_seed;
  return obj;
}

ParticipantRecord record_from_json(const ordered_json& obj, size_t index) {
  const std::string locus = "record " + std::to_string(index);
  if (!obj.is_object()) throw ParseError(locus + ": expected an object");
  ParticipantRecord record;
  try {
    record.participant_id = obj.at("participant_id").get<std::string>();
  } catch (const ordered_json::exception&) {
    throw ParseError(locus + ": missing participant_id");
  }

  if (obj.contains("source") && !obj["source"].is_null()) {
    const auto& src = obj["source"];
    const std::string kind = src.value("kind", "human");
    if (kind == "human") {
      record.source = Provenance::human();
    } else if (kind == "simulated") {
      record.source = Provenance::simulated(src.value("model", ""));
    } else {
      throw ParseError(locus + ": unknown source kind '" + kind + "'");
    }
  }

  if (obj.contains("cue_responses")) {
    if (!obj["cue_responses"].is_object()) {
      throw ParseError(locus + ": cue_responses must be an object");
    }
    for (const auto& [cue, arr] : obj["cue_responses"].items()) {
      std::vector<std::string> responses;
      if (!arr.is_array()) throw ParseError(locus + ": responses for '" + cue + "' must be an array");
      for (const auto& r : arr) {
        const std::string w = normalize_word(r.get<std::string>());
        if (!w.empty()) responses.push_back(w);
      }
      record.cue_responses.emplace_back(normalize_word(cue), std::move(responses));
    }
  }

  if (obj.contains("valence_ratings")) {
    if (!obj["valence_ratings"].is_object()) {
      throw ParseError(locus + ": valence_ratings must be an object");
    }
    for (const auto& [word, arr] : obj["valence_ratings"].items()) {
      std::vector<int> ratings;
      if (arr.is_number_integer()) {
        ratings.push_back(arr.get<int>());
      } else if (arr.is_array()) {
        for (const auto& r : arr) ratings.push_back(r.get<int>());
      } else {
        throw ParseError(locus + ": ratings for '" + word + "' must be an array");
      }
      if (!ratings.empty()) record.valence_ratings[normalize_word(word)] = std::move(ratings);
    }
  }

  if (obj.contains("mas_answers") && !obj["mas_answers"].is_null()) {
    record.mas_answers = obj["mas_answers"].get<std::vector<int>>();
  }
  if (obj.contains("profile") && !obj["profile"].is_null()) {
    record.profile = profile_from_json(obj["profile"]);
  }
  validate(record);
  return record;
}

}  // namespace

std::vector<ParticipantRecord> participants_from_json(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::exception& e) {
    throw ParseError(std::string("json dataset: ") + e.what());
  }
  const ordered_json& arr = doc.is_object() && doc.contains("participants")
                                ? doc["participants"]
                                : doc;
  if (!arr.is_array()) throw ParseError("json dataset: expected an array of records");
  std::vector<ParticipantRecord> records;
  records.reserve(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) {
    records.push_back(record_from_json(arr[i], i));
  }
  return records;
}

std::string participants_to_json(const std::vector<ParticipantRecord>& records) {
  ordered_json arr = ordered_json::array();
  for (const auto& record : records) {
    ordered_json obj;
    obj["participant_id"] = record.participant_id;
    if (record.source.kind == Provenance::Kind::human) {
      obj["source"] = {{"kind", "human"}};
    } else {
      obj["source"] = {{"kind", "simulated"}, {"model", record.source.model}};
    }
    ordered_json cues = ordered_json::object();
    for (const auto& [cue, responses] : record.cue_responses) cues[cue] = responses;
    obj["cue_responses"] = std::move(cues);
    ordered_json ratings = ordered_json::object();
    for (const auto& [word, rs] : record.valence_ratings) ratings[word] = rs;
    obj["valence_ratings"] = std::move(ratings);
    obj["mas_answers"] = record.mas_answers ? ordered_json(*record.mas_answers)
                                            : ordered_json(nullptr);
    obj["profile"] = record.profile ? profile_to_json(*record.profile)
                                    : ordered_json(nullptr);
    arr.push_back(std::move(obj));
  }
  return arr.dump(2) + "\n";
}

// ---------------------------------------------------------------------------
// CSV dataset format (see docs/data-format.md)
// ---------------------------------------------------------------------------

namespace {

struct CsvSchema {
  int id_col = -1;
  int source_col = -1;
  // cue word -> response column per slot (resp_1..resp_3), -1 if absent
  std::vector<std::pair<std::string, std::array<int, 3>>> cue_cols;
  std::vector<std::pair<std::string, int>> val_cols;  // word -> column
  std::array<int, kMasItemCount> mas_cols;            // -1 if absent
  std::map<std::string, int> profile_cols;
  bool has_mas = false;
};

CsvSchema parse_header(const std::vector<std::string>& header) {
  CsvSchema schema;
  schema.mas_cols.fill(-1);
  std::map<std::string, size_t> cue_index;

  for (int c = 0; c < static_cast<int>(header.size()); ++c) {
    const std::string name = trim(header[c]);
    if (name == "participant_id") {
      schema.id_col = c;
    } else if (name == "source") {
      schema.source_col = c;
    } else if (name.rfind("cue_", 0) == 0) {
      const auto resp_pos = name.rfind("_resp_");
      if (resp_pos == std::string::npos || resp_pos + 6 >= name.size()) {
        throw ParseError("csv header: bad cue column '" + name + "'");
      }
      const std::string word = normalize_word(name.substr(4, resp_pos - 4));
      const int slot = parse_int(name.substr(resp_pos + 6)) - 1;
      if (slot < 0 || slot >= kResponsesPerCue) {
        throw ParseError("csv header: response slot out of range in '" + name + "'");
      }
      auto [it, inserted] = cue_index.try_emplace(word, schema.cue_cols.size());
      if (inserted) schema.cue_cols.push_back({word, {-1, -1, -1}});
      schema.cue_cols[it->second].second[slot] = c;
    } else if (name.rfind("val_", 0) == 0) {
      schema.val_cols.push_back({normalize_word(name.substr(4)), c});
    } else if (name.rfind("mas_", 0) == 0) {
      const int item = parse_int(name.substr(4));
      if (item < 1 || item > kMasItemCount) {
        throw ParseError("csv header: questionnaire item out of range in '" + name + "'");
      }
      schema.mas_cols[item - 1] = c;
      schema.has_mas = true;
    } else if (name.rfind("profile_", 0) == 0) {
      schema.profile_cols[name.substr(8)] = c;
    } else {
      throw ParseError("csv header: unknown column '" + name + "'");
    }
  }
  if (schema.id_col < 0) throw ParseError("csv header: missing participant_id column");
  if (schema.has_mas) {
    for (int i = 0; i < kMasItemCount; ++i) {
      if (schema.mas_cols[i] < 0) {
        throw ParseError("csv header: missing column mas_" +
                         std::string(i + 1 < 10 ? "0" : "") + std::to_string(i + 1));
      }
    }
  }
  return schema;
}

ParticipantRecord record_from_csv_row(const CsvSchema& schema,
                                      const std::vector<std::string>& row, size_t row_no) {
  const std::string locus = "csv row " + std::to_string(row_no);
  auto cell = [&](int col) -> std::string {
    return col >= 0 && col < static_cast<int>(row.size()) ? row[col] : std::string();
  };

  ParticipantRecord record;
  record.participant_id = trim(cell(schema.id_col));
  if (record.participant_id.empty()) throw ParseError(locus + ": empty participant_id");

  if (schema.source_col >= 0) {
    const std::string src = trim(cell(schema.source_col));
    if (src.empty() || src == "human") {
      record.source = Provenance::human();
    } else if (src.rfind("simulated:", 0) == 0) {
      record.source = Provenance::simulated(src.substr(10));
    } else if (src == "simulated") {
      record.source = Provenance::simulated("");
    } else {
      throw ParseError(locus + ": bad source value '" + src + "'");
    }
  }

  for (const auto& [cue, cols] : schema.cue_cols) {
    std::vector<std::string> responses;
    for (int col : cols) {
      if (col < 0) continue;
      const std::string w = normalize_word(cell(col));
      if (!w.empty()) responses.push_back(w);
    }
    record.cue_responses.emplace_back(cue, std::move(responses));
  }

  for (const auto& [word, col] : schema.val_cols) {
    const std::string raw = trim(cell(col));
    if (raw.empty()) continue;
    std::vector<int> ratings;
    for (const auto& piece : split(raw, ';')) {
      if (is_blank(piece)) continue;
      int r;
      try {
        r = parse_int(piece);
      } catch (const ArgumentError&) {
        throw ParseError(locus + ": rating for '" + word + "' is not an integer: '" +
                         trim(piece) + "'");
      }
      ratings.push_back(r);
    }
    if (!ratings.empty()) record.valence_ratings[word] = std::move(ratings);
  }

  if (schema.has_mas) {
    std::vector<int> answers;
    int blank = 0;
    for (int i = 0; i < kMasItemCount; ++i) {
      const std::string raw = trim(cell(schema.mas_cols[i]));
      if (raw.empty()) {
        ++blank;
        continue;
      }
      try {
        answers.push_back(parse_int(raw));
      } catch (const ArgumentError&) {
        throw ParseError(locus + ": mas_" + std::to_string(i + 1) +
                         " is not an integer: '" + raw + "'");
      }
    }
    if (blank == 0) {
      record.mas_answers = std::move(answers);
    } else if (blank != kMasItemCount) {
      throw ValidationError("participant '" + record.participant_id +
                            "': partially filled questionnaire (" +
                            std::to_string(blank) + " blank items)");
    }
    // all blank: questionnaire absent
  }

  if (!schema.profile_cols.empty()) {
    bool any = false;
    for (const auto& [_, col] : schema.profile_cols) {
      if (!trim(cell(col)).empty()) any = true;
    }
    if (any) {
      StudentProfile profile;
      auto field = [&](const char* key) {
        auto it = schema.profile_cols.find(key);
        return it == schema.profile_cols.end() ? std::string() : trim(cell(it->second));
      };
      profile.gender = gender_from_string(field("gender"));
      profile.age = parse_int(field("age"));
      profile.education = education_from_string(field("education"));
      profile.socioeconomic = socioeconomic_from_string(field("socioeconomic"));
      const std::string seed = field("seed");
      profile.rng_seed = seed.empty() ? 0 : std::stoull(seed);
      record.profile = profile;
    }
  }

  validate(record);
  return record;
}

}  // namespace

std::vector<ParticipantRecord> participants_from_csv(const std::string& text) {
  const auto rows = csv::parse(text);
  if (rows.empty()) throw ParseError("csv dataset: missing header");
  const CsvSchema schema = parse_header(rows[0]);
  std::vector<ParticipantRecord> records;
  records.reserve(rows.size() - 1);
  for (size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].size() != rows[0].size()) {
      throw ParseError("csv row " + std::to_string(i + 1) + ": expected " +
                       std::to_string(rows[0].size()) + " fields, got " +
                       std::to_string(rows[i].size()));
    }
    records.push_back(record_from_csv_row(schema, rows[i], i + 1));
  }
  return records;
}

std::string participants_to_csv(const std::vector<ParticipantRecord>& records) {
  // Schema: cue columns in first-seen order, rated words sorted.
  std::vector<std::string> cue_order;
  std::set<std::string> cue_seen;
  std::set<std::string> words;
  bool any_profile = false;
  for (const auto& record : records) {
    for (const auto& [cue, _] : record.cue_responses) {
      if (cue_seen.insert(cue).second) cue_order.push_back(cue);
    }
    for (const auto& [word, _] : record.valence_ratings) words.insert(word);
    if (record.profile) any_profile = true;
  }

  std::vector<std::string> header = {"participant_id", "source"};
  for (const auto& cue : cue_order) {
    for (int slot = 1; slot <= kResponsesPerCue; ++slot) {
      header.push_back("cue_" + cue + "_resp_" + std::to_string(slot));
    }
  }
  for (const auto& word : words) header.push_back("val_" + word);
  for (int i = 1; i <= kMasItemCount; ++i) {
    header.push_back("mas_" + std::string(i < 10 ? "0" : "") + std::to_string(i));
  }
  if (any_profile) {
    for (const char* f : {"gender", "age", "education", "socioeconomic", "seed"}) {
      header.push_back(std::string("profile_") + f);
    }
  }

  std::ostringstream os;
  csv::write_row(os, header);
  for (const auto& record : records) {
    std::vector<std::string> row;
    row.push_back(record.participant_id);
    row.push_back(record.source.kind == Provenance::Kind::human
                      ? "human"
                      : "simulated:" + record.source.model);
    for (const auto& cue : cue_order) {
      const auto* responses = record.responses_for(cue);
      for (int slot = 0; slot < kResponsesPerCue; ++slot) {
        row.push_back(responses && slot < static_cast<int>(responses->size())
                          ? (*responses)[slot]
                          : "");
      }
    }
    for (const auto& word : words) {
      auto it = record.valence_ratings.find(word);
      if (it == record.valence_ratings.end()) {
        row.push_back("");
      } else {
        std::string joined;
        for (size_t k = 0; k < it->second.size(); ++k) {
          if (k) joined += ';';
          joined += std::to_string(it->second[k]);
        }
        row.push_back(joined);
      }
    }
    for (int i = 0; i < kMasItemCount; ++i) {
      row.push_back(record.mas_answers ? std::to_string((*record.mas_answers)[i]) : "");
    }
    if (any_profile) {
      if (record.profile) {
        row.push_back(to_string(record.profile->gender));
        row.push_back(std::to_string(record.profile->age));
        row.push_back(to_string(record.profile->education));
        row.push_back(to_string(record.profile->socioeconomic));
        row.push_back(std::to_string(record.profile->rng_seed));
      } else {
        for (int k = 0; k < 5; ++k) row.push_back("");
      }
    }
    csv::write_row(os, row);
  }
  return os.str();
}

std::vector<ParticipantRecord> parse_participants(const std::string& path, DatasetFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open dataset: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return format == DatasetFormat::csv ? participants_from_csv(buf.str())
                                      : participants_from_json(buf.str());
}

std::vector<ParticipantRecord> parse_participants(const std::string& path) {
  return parse_participants(path, format_from_path(path));
}

void write_participants(const std::vector<ParticipantRecord>& records, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write dataset: " + path);
  out << (format_from_path(path) == DatasetFormat::csv ? participants_to_csv(records)
                                                       : participants_to_json(records));
}

std::pair<std::vector<ParticipantRecord>, CleaningReport> clean_participants(
    const std::vector<ParticipantRecord>& records,
    const std::vector<std::string>& target_cues,
    const CleaningOptions& options) {
  if (target_cues.empty()) throw ArgumentError("clean_participants: target cue list is empty");
  std::vector<std::string> targets;
  targets.reserve(target_cues.size());
  for (const auto& cue : target_cues) targets.push_back(normalize_word(cue));

  std::vector<ParticipantRecord> kept;
  CleaningReport report;
  for (const auto& record : records) {
    if (options.require_mas && !record.mas_answers) {
      report.excluded.push_back({record.participant_id, ExclusionReason::malformed});
      continue;
    }

    int blank_targets = 0;
    for (const auto& target : targets) {
      const auto* responses = record.responses_for(target);
      if (!responses || responses->empty()) ++blank_targets;
    }
    const bool no_target = options.target_rule == TargetRule::all_blank
                               ? blank_targets == static_cast<int>(targets.size())
                               : blank_targets > 0;
    if (no_target) {
      report.excluded.push_back({record.participant_id, ExclusionReason::no_target_associations});
      continue;
    }

    const int total_slots = static_cast<int>(record.cue_responses.size()) * kResponsesPerCue;
    // "more than 1/3 missing": strict comparison, done in integers.
    if (total_slots > 0 && 3 * record.missing_response_slots() > total_slots) {
      report.excluded.push_back({record.participant_id, ExclusionReason::excess_missing});
      continue;
    }

    report.kept.push_back(record.participant_id);
    kept.push_back(record);
  }
  return {std::move(kept), std::move(report)};
}

}  // namespace fmn
