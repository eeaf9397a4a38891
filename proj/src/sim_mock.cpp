#include "fmn/sim_mock.hpp"

#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "fmn/hash.hpp"
#include "fmn/rng.hpp"
#include "fmn/text.hpp"

namespace fmn {

using nlohmann::json;

namespace {

const std::vector<std::string>& mock_vocabulary() {
  static const std::vector<std::string> vocab = {
      "esame",     "paura",    "studio",    "numeri",   "formule",  "stress",
      "professore", "libri",   "logica",    "noia",     "panico",   "voti",
      "calcolo",   "mente",    "cervello",  "scuola",   "futuro",   "lavoro",
      "gioia",     "scoperta", "ricerca",   "curiosita", "errore",  "fallimento",
      "riuscita",  "impegno",  "fatica",    "compiti",  "lavagna",  "test",
      "quiz",      "equazioni", "grafici",  "tabelle",  "fisica",   "chimica",
      "biologia",  "amici",    "famiglia",  "ansia",
  };
  return vocab;
}

int expected_from_prompt(const std::string& prompt) {
  const std::string marker = "esattamente ";
  const auto pos = prompt.rfind(marker);
  if (pos == std::string::npos) return 0;
  size_t i = pos + marker.size();
  int value = 0;
  while (i < prompt.size() && prompt[i] >= '0' && prompt[i] <= '9') {
    value = value * 10 + (prompt[i] - '0');
    ++i;
  }
  return value;
}

}  // namespace

std::string MockChatResponder::respond(const std::string& request_body) {
  const int request_no = ++counter_;

  std::string model = "mock";
  std::string prompt;
  try {
    const json body = json::parse(request_body);
    model = body.value("model", "mock");
    for (const auto& message : body.at("messages")) {
      if (message.value("role", "") == "user") prompt = message.value("content", "");
    }
  } catch (const json::exception&) {
    // fall through with empty prompt; produces an (intentionally) bogus reply
  }

  int expected = expected_from_prompt(prompt);
  if (expected <= 0) expected = 1;
  const bool associations = prompt.find("libere associazioni") != std::string::npos;
  const bool ratings = !associations;

  if (malform_nth_ > 0 && request_no == malform_nth_) {
    expected -= 1;  // one value short: the client must retry
  }

  Rng rng(fnv1a64(request_body));
  const auto& vocab = mock_vocabulary();
  std::ostringstream content;
  for (int i = 0; i < expected; ++i) {
    if (i) content << ", ";
    if (ratings) {
      content << rng.uniform_int(1, 5);
    } else if (rng.uniform_int(0, 19) == 0) {
      // blank association (participants may skip responses)
    } else {
      content << vocab[rng.uniform_int(0, static_cast<int>(vocab.size()) - 1)];
    }
  }

  json response;
  response["id"] = "mock-" + fnv1a64_hex(request_body);
  response["object"] = "chat.completion";
  response["model"] = model;
  response["choices"] = json::array({json{
      {"index", 0},
      {"message", json{{"role", "assistant"}, {"content", content.str()}}},
      {"finish_reason", "stop"},
  }});
  return response.dump();
}

}  // namespace fmn
