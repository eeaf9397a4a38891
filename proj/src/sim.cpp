#include "fmn/sim.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <mutex>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "fmn/hash.hpp"
#include "fmn/rng.hpp"
#include "fmn/text.hpp"

namespace fmn {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

StudentProfile sample_profile(std::uint64_t seed) {
  Rng rng(seed);
  StudentProfile profile;
  profile.gender = rng.uniform_int(0, 1) == 0 ? StudentProfile::Gender::male
                                              : StudentProfile::Gender::female;
  profile.age = rng.uniform_int(18, 25);
  profile.education = static_cast<StudentProfile::Education>(rng.uniform_int(0, 3));
  profile.socioeconomic = static_cast<StudentProfile::Socioeconomic>(rng.uniform_int(0, 4));
  profile.rng_seed = seed;
  return profile;
}

namespace {

struct ItalianForms {
  const char* article;   // "o" / "a"  (uno / una)
  const char* student;   // "e" / "essa"
  const char* adjective; // "o" / "a"  (italiano, iscritto, cresciuto)
};

ItalianForms forms_for(StudentProfile::Gender g) {
  if (g == StudentProfile::Gender::male) return {"o", "e", "o"};
  return {"a", "essa", "a"};
}

const char* year_it(StudentProfile::Education e) {
  switch (e) {
    case StudentProfile::Education::high_school_final_year: return "ultimo";
    case StudentProfile::Education::bsc_year1: return "primo";
    case StudentProfile::Education::bsc_year2: return "secondo";
    case StudentProfile::Education::bsc_year3: return "terzo";
  }
  return "?";
}

const char* education_it(StudentProfile::Education e) {
  return e == StudentProfile::Education::high_school_final_year ? "scuola superiore"
                                                                : "laurea triennale";
}

const char* socioeconomic_it(StudentProfile::Socioeconomic s) {
  switch (s) {
    case StudentProfile::Socioeconomic::low: return "basse";
    case StudentProfile::Socioeconomic::medium_low: return "medio-basse";
    case StudentProfile::Socioeconomic::medium: return "medie";
    case StudentProfile::Socioeconomic::medium_high: return "medio-alte";
    case StudentProfile::Socioeconomic::high: return "alte";
  }
  return "?";
}

}  // namespace

std::string render_persona_prompt(const StudentProfile& profile) {
  const ItalianForms f = forms_for(profile.gender);
  std::ostringstream os;
  os << "Sei un" << f.article << " student" << f.student << " italian" << f.adjective
     << " di " << profile.age << " anni. Sei iscritt" << f.adjective << " al "
     << year_it(profile.education) << " anno di " << education_it(profile.education)
     << ". Sei cresciut" << f.adjective << " e vivi in condizioni socio-economiche "
     << socioeconomic_it(profile.socioeconomic)
     << ". Pertanto, ricorda che le risposte da fornire nel compito devono essere "
        "originali, creative e coerenti con le tue caratteristiche uniche.";
  return os.str();
}

const char* to_string(SimTask task) {
  switch (task) {
    case SimTask::mas: return "mas";
    case SimTask::associations: return "associations";
    case SimTask::valence: return "valence";
  }
  return "?";
}

int expected_reply_count(SimTask task, const std::vector<std::string>& materials) {
  switch (task) {
    case SimTask::mas: return kMasItemCount;
    case SimTask::associations: return kResponsesPerCue * static_cast<int>(materials.size());
    case SimTask::valence: return static_cast<int>(materials.size());
  }
  return 0;
}

std::string render_task_prompt(SimTask task, const std::vector<std::string>& materials) {
  if (materials.empty()) throw ArgumentError("render_task_prompt: empty materials");
  if (task == SimTask::mas && materials.size() != kMasItemCount) {
    throw ArgumentError("render_task_prompt: questionnaire needs 23 item texts");
  }
  const int expected = expected_reply_count(task, materials);
  std::ostringstream os;
  switch (task) {
    case SimTask::mas:
      os << "Completa il seguente questionario. Per ciascuna delle 23 situazioni, "
            "valuta il tuo livello di ansia su una scala da 1 (per niente ansioso) "
            "a 5 (molto ansioso).\n";
      break;
    case SimTask::associations:
      os << "Compito di libere associazioni. Per ciascuna delle seguenti "
         << materials.size()
         << " parole stimolo, scrivi le prime tre parole che ti vengono in mente, "
            "il piu' rapidamente possibile. Se non ti viene in mente "
            "un'associazione, puoi lasciare la risposta vuota.\n";
      break;
    case SimTask::valence:
      os << "Compito di valutazione della valenza. Per ciascuna delle seguenti "
         << materials.size()
         << " parole, valuta la valenza emotiva su una scala da 1 (molto negativo) "
            "a 5 (molto positivo), dove 3 indica neutralita'.\n";
      break;
  }
  for (size_t i = 0; i < materials.size(); ++i) {
    os << (i + 1) << ". " << materials[i] << "\n";
  }
  os << "Le risposte devono essere originali, creative e coerenti con le tue "
        "caratteristiche uniche. Fornisci l'output come file .txt, con ogni "
        "risposta separata da una virgola (','). Fornisci esattamente "
     << expected << " valori.";
  return os.str();
}

ReplyPayload parse_llm_reply(SimTask task, const std::string& text, int expected_count) {
  const std::vector<std::string> raw = split(text, ',');
  if (static_cast<int>(raw.size()) != expected_count) {
    throw MalformedReplyError("expected " + std::to_string(expected_count) +
                              " comma-separated values, got " + std::to_string(raw.size()));
  }
  ReplyPayload payload;
  for (const auto& field : raw) {
    const std::string value = trim(field);
    // Instruction-echo heuristic: a legitimate field is a word or a digit,
    // never a sentence.
    int words = 0;
    bool in_word = false;
    for (char c : value) {
      const bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
      if (!space && !in_word) ++words;
      in_word = !space;
    }
    if (words > 6) {
      throw MalformedReplyError("field looks like echoed instructions: '" + value + "'");
    }
    if (task == SimTask::associations) {
      payload.words.push_back(normalize_word(value));
    } else {
      int rating = 0;
      try {
        rating = parse_int(value);
      } catch (const ArgumentError&) {
        throw MalformedReplyError("rating is not an integer: '" + value + "'");
      }
      if (rating < kRatingMin || rating > kRatingMax) {
        throw MalformedReplyError("rating " + std::to_string(rating) + " outside [1,5]");
      }
      payload.ratings.push_back(rating);
    }
  }
  return payload;
}

int RunLog::retry_count() const {
  int retries = 0;
  for (const auto& entry : entries) {
    if (entry.attempt > 1) ++retries;
  }
  return retries;
}

std::string RunLog::to_jsonl() const {
  std::ostringstream os;
  {
    ordered_json header;
    header["record"] = "run";
    header["model"] = model;
    header["master_seed"] = master_seed;
    header["temperature"] = temperature;
    header["failed_participants"] = failed_participants;
    os << header.dump() << "\n";
  }
  for (const auto& entry : entries) {
    ordered_json obj;
    obj["record"] = "request";
    obj["participant"] = entry.participant;
    obj["task"] = entry.task;
    obj["attempt"] = entry.attempt;
    obj["request_fnv1a64"] = entry.request_hash;
    obj["response_fnv1a64"] = entry.response_hash;
    obj["status"] = entry.status;
    if (!entry.detail.empty()) obj["detail"] = entry.detail;
    os << obj.dump() << "\n";
  }
  return os.str();
}

namespace {

struct ChatClient {
  httplib::Client client;
  std::string path;
  std::string api_key;
  std::string model;
  double temperature;

  ChatClient(const std::string& endpoint, std::string key, std::string model_name,
             double temp)
      : client(base_of(endpoint)),
        path(path_of(endpoint)),
        api_key(std::move(key)),
        model(std::move(model_name)),
        temperature(temp) {
    client.set_connection_timeout(10, 0);
    client.set_read_timeout(120, 0);
  }

  static std::string base_of(const std::string& endpoint) {
    const auto scheme_end = endpoint.find("://");
    if (scheme_end == std::string::npos) {
      throw EnvironmentError("endpoint URL must start with http:// or https://: " + endpoint);
    }
    const auto path_start = endpoint.find('/', scheme_end + 3);
    return path_start == std::string::npos ? endpoint : endpoint.substr(0, path_start);
  }

  static std::string path_of(const std::string& endpoint) {
    const auto scheme_end = endpoint.find("://");
    const auto path_start = endpoint.find('/', scheme_end + 3);
    return path_start == std::string::npos ? "/v1/chat/completions"
                                           : endpoint.substr(path_start);
  }

  /// One round trip. Returns (ok, content-or-error, request_body).
  struct Exchange {
    bool ok = false;
    std::string content;
    std::string error;
    std::string request_body;
    std::string response_body;
  };

  Exchange send(const json& messages) {
    Exchange ex;
    json body;
    body["model"] = model;
    body["messages"] = messages;
    body["temperature"] = temperature;
    ex.request_body = body.dump();

    httplib::Headers headers = {{"Authorization", "Bearer " + api_key}};
    auto res = client.Post(path, headers, ex.request_body, "application/json");
    if (!res) {
      ex.error = "transport: " + httplib::to_string(res.error());
      return ex;
    }
    ex.response_body = res->body;
    if (res->status != 200) {
      ex.error = "http status " + std::to_string(res->status);
      return ex;
    }
    try {
      const json reply = json::parse(res->body);
      ex.content = reply.at("choices").at(0).at("message").at("content").get<std::string>();
      ex.ok = true;
    } catch (const json::exception& e) {
      ex.error = std::string("bad response json: ") + e.what();
    }
    return ex;
  }
};

struct ParticipantOutcome {
  bool ok = false;
  ParticipantRecord record;
  std::vector<RequestLogEntry> log;
};

ParticipantOutcome simulate_participant(const SimConfig& config, const std::string& api_key,
                                        int index, const std::vector<std::string>& cue_list) {
  ParticipantOutcome outcome;
  const std::uint64_t seed = Rng::derive_seed(config.master_seed, static_cast<std::uint64_t>(index));
  const StudentProfile profile = sample_profile(seed);

  ChatClient chat(config.endpoint, api_key, config.model, config.temperature);

  json conversation = json::array();
  conversation.push_back({{"role", "system"}, {"content", render_persona_prompt(profile)}});

  std::vector<std::string> mas_texts;
  for (const auto& item : default_mas_items().items) mas_texts.push_back(item.it);

  ReplyPayload mas_payload;
  ReplyPayload assoc_payload;
  ReplyPayload valence_payload;
  std::vector<std::string> valence_words;

  const SimTask order[] = {SimTask::mas, SimTask::associations, SimTask::valence};
  for (SimTask task : order) {
    std::vector<std::string> materials;
    switch (task) {
      case SimTask::mas: materials = mas_texts; break;
      case SimTask::associations: materials = cue_list; break;
      case SimTask::valence: {
        // Every cue plus every response the participant produced, deduped in
        // encounter order.
        std::vector<std::string> words = cue_list;
        for (const auto& w : assoc_payload.words) {
          if (!w.empty()) words.push_back(w);
        }
        valence_words = unique_words(words);
        materials = valence_words;
        break;
      }
    }
    const int expected = expected_reply_count(task, materials);
    const std::string prompt = render_task_prompt(task, materials);

    json messages = config.single_conversation ? conversation : json::array({conversation[0]});
    messages.push_back({{"role", "user"}, {"content", prompt}});

    bool task_done = false;
    for (int attempt = 1; attempt <= 1 + config.retry_budget; ++attempt) {
      ChatClient::Exchange ex = chat.send(messages);
      RequestLogEntry entry;
      entry.participant = index + 1;
      entry.task = to_string(task);
      entry.attempt = attempt;
      entry.request_hash = fnv1a64_hex(ex.request_body);
      entry.response_hash = fnv1a64_hex(ex.response_body);

      if (!ex.ok) {
        entry.status = "transport_error";
        entry.detail = ex.error;
        outcome.log.push_back(entry);
        if (attempt <= config.retry_budget && config.backoff_base_ms > 0) {
          std::this_thread::sleep_for(
              std::chrono::milliseconds(config.backoff_base_ms * (1 << (attempt - 1))));
        }
        continue;
      }

      try {
        ReplyPayload payload = parse_llm_reply(task, ex.content, expected);
        entry.status = "ok";
        outcome.log.push_back(entry);
        switch (task) {
          case SimTask::mas: mas_payload = std::move(payload); break;
          case SimTask::associations: assoc_payload = std::move(payload); break;
          case SimTask::valence: valence_payload = std::move(payload); break;
        }
        if (config.single_conversation) {
          messages.push_back({{"role", "assistant"}, {"content", ex.content}});
          conversation = messages;
        }
        task_done = true;
        break;
      } catch (const MalformedReplyError& e) {
        entry.status = "malformed";
        entry.detail = e.what();
        outcome.log.push_back(entry);
      }
    }
    if (!task_done) return outcome;  // budget exhausted, participant failed
  }

  // Assemble the record.
  ParticipantRecord record;
  {
    char id[16];
    std::snprintf(id, sizeof id, "sim-%04d", index + 1);
    record.participant_id = id;
  }
  record.source = Provenance::simulated(config.model);
  record.profile = profile;
  record.mas_answers = mas_payload.ratings;
  for (size_t c = 0; c < cue_list.size(); ++c) {
    std::vector<std::string> responses;
    for (int slot = 0; slot < kResponsesPerCue; ++slot) {
      const std::string& w = assoc_payload.words[c * kResponsesPerCue + slot];
      if (!w.empty()) responses.push_back(w);
    }
    record.cue_responses.emplace_back(cue_list[c], std::move(responses));
  }
  for (size_t i = 0; i < valence_words.size(); ++i) {
    record.valence_ratings[valence_words[i]].push_back(valence_payload.ratings[i]);
  }
  validate(record);
  outcome.ok = true;
  outcome.record = std::move(record);
  return outcome;
}

}  // namespace

SimResult run_simulation(const SimConfig& config) {
  if (config.n_participants < 1) throw ArgumentError("run_simulation: n must be >= 1");
  if (config.max_concurrent < 1) throw ArgumentError("run_simulation: concurrency must be >= 1");
  if (config.retry_budget < 0) throw ArgumentError("run_simulation: retries must be >= 0");
  if (config.cues.empty()) throw ArgumentError("run_simulation: cue list is empty");
  if (config.api_key_env.empty()) throw EnvironmentError("api key environment variable not named");
  const char* key = std::getenv(config.api_key_env.c_str());
  if (!key || !*key) {
    throw EnvironmentError("environment variable " + config.api_key_env + " is not set");
  }

  const std::vector<std::string> cue_list = unique_words([&] {
    std::vector<std::string> normalized;
    for (const auto& cue : config.cues) normalized.push_back(normalize_word(cue));
    return normalized;
  }());

  std::vector<ParticipantOutcome> outcomes(config.n_participants);
  std::mutex next_mutex;
  int next_index = 0;

  auto worker = [&] {
    for (;;) {
      int index;
      {
        std::lock_guard<std::mutex> lock(next_mutex);
        if (next_index >= config.n_participants) return;
        index = next_index++;
      }
      outcomes[index] = simulate_participant(config, key, index, cue_list);
    }
  };

  const int threads_n = std::min(config.max_concurrent, config.n_participants);
  std::vector<std::thread> threads;
  threads.reserve(threads_n);
  for (int t = 0; t < threads_n; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();

  SimResult result;
  result.log.model = config.model;
  result.log.master_seed = config.master_seed;
  result.log.temperature = config.temperature;
  for (int i = 0; i < config.n_participants; ++i) {
    auto& outcome = outcomes[i];
    result.log.entries.insert(result.log.entries.end(), outcome.log.begin(), outcome.log.end());
    if (outcome.ok) {
      result.records.push_back(std::move(outcome.record));
    } else {
      result.log.failed_participants.push_back(i + 1);
    }
  }
  return result;
}

}  // namespace fmn
