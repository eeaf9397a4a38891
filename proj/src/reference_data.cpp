#include "fmn/reference_data.hpp"

#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "fmn/errors.hpp"
#include "fmn/text.hpp"

namespace fmn {

using nlohmann::json;

const char* to_string(MasFactor f) {
  switch (f) {
    case MasFactor::evaluation: return "evaluation";
    case MasFactor::everyday_social: return "everyday_social";
    case MasFactor::passive_observation: return "passive_observation";
  }
  return "?";
}

MasFactor mas_factor_from_string(const std::string& s) {
  if (s == "evaluation") return MasFactor::evaluation;
  if (s == "everyday_social") return MasFactor::everyday_social;
  if (s == "passive_observation") return MasFactor::passive_observation;
  throw ArgumentError("unknown questionnaire factor: " + s);
}

std::vector<MasFactor> MasItemMap::factors() const {
  std::vector<MasFactor> out;
  out.reserve(items.size());
  for (const auto& item : items) out.push_back(item.factor);
  return out;
}

void MasItemMap::check() const {
  if (items.size() != 23) {
    throw ValidationError("item map must have 23 items, got " + std::to_string(items.size()));
  }
  int counts[3] = {0, 0, 0};
  std::set<int> seen;
  for (const auto& item : items) {
    counts[static_cast<int>(item.factor)]++;
    if (!seen.insert(item.index).second) {
      throw ValidationError("duplicate item index " + std::to_string(item.index));
    }
  }
  if (counts[0] != 9 || counts[1] != 8 || counts[2] != 6) {
    throw ValidationError("factor counts must be (9, 8, 6)");
  }
}

namespace {

MasItemMap build_default_items() {
  struct Row { int idx; MasFactor f; const char* en; const char* it; };
  static const Row rows[] = {
      {1, MasFactor::evaluation, "Having someone watch you multiply 12 x 23 on paper",
       "Avere qualcuno che mi guarda moltiplicare 12 x 23 su carta"},
      {2, MasFactor::evaluation, "Being asked to write an answer on the board at the front of a maths class",
       "Se mi viene chiesto di scrivere una risposta alla lavagna all'inizio di una lezione di matematica"},
      {3, MasFactor::evaluation, "Taking a maths exam", "Sostenere un esame di matematica"},
      {4, MasFactor::evaluation, "Being asked to calculate 9.36 divided by four in front of several people",
       "Se mi viene chiesto davanti a molte altre persone di calcolare EUR 9,36 diviso per 4"},
      {5, MasFactor::evaluation, "Calculating a series of multiplication problems on paper",
       "Calcolare una serie di moltiplicazioni su carta"},
      {6, MasFactor::evaluation, "Being given a surprise maths test in a class",
       "Dover affrontare un test di matematica a sorpresa in una classe"},
      {7, MasFactor::evaluation, "Being asked to memorize a multiplication table",
       "Dover memorizzare una tabellina"},
      {8, MasFactor::evaluation, "Being asked to calculate three fifths as a percentage",
       "Se mi viene chiesto di calcolare i 3/5 di una percentuale"},
      {9, MasFactor::evaluation, "Being asked a maths question by a teacher in front of a class",
       "Se mi viene chiesta una domanda di matematica da un/una insegnante di fronte alla classe"},
      {10, MasFactor::everyday_social, "Adding up a pile of change",
       "Calcolare la somma degli spiccioli di un resto"},
      {11, MasFactor::everyday_social, "Being asked to add up the number of people in a room",
       "Se mi viene chiesto di sommare il numero di persone in una stanza"},
      {12, MasFactor::everyday_social, "Calculating how many days until a person's birthday",
       "Calcolare quanti giorni mancano al compleanno di una persona"},
      {13, MasFactor::everyday_social, "Being given a telephone number and having to remember it",
       "Ricevere un numero di telefono e doverlo ricordare"},
      {14, MasFactor::everyday_social, "Working out how much time you have left before you set off to work or place of study",
       "Calcolare quanto tempo mi rimane prima di partire per il lavoro o il luogo di studio"},
      {15, MasFactor::everyday_social, "Working out how much change a cashier should have given you in a shop after buying several items",
       "Calcolare quanto resto dovrebbe avermi dato un cassiere in un negozio dopo aver acquistato diversi articoli"},
      {16, MasFactor::everyday_social, "Deciding how much each person should give you after you buy an object that you are all sharing the cost of",
       "Decidere quanto ogni persona dovrebbe darmi dopo aver acquistato un oggetto di cui condividete il costo"},
      {17, MasFactor::everyday_social, "Working out how much your shopping bill comes to",
       "Calcolare quanto sia il conto di uno scontrino"},
      {18, MasFactor::passive_observation, "Reading the word \"algebra\"",
       "Leggere la parola \"algebra\""},
      {19, MasFactor::passive_observation, "Listening to someone talk about maths",
       "Ascoltare qualcuno che parla di matematica"},
      {20, MasFactor::passive_observation, "Reading a maths textbook",
       "Leggere un testo di matematica"},
      {21, MasFactor::passive_observation, "Watching someone work out an algebra problem",
       "Guardare qualcuno risolvere un problema di algebra"},
      {22, MasFactor::passive_observation, "Sitting in a maths class",
       "Frequentare una lezione di matematica"},
      {23, MasFactor::passive_observation, "Watching a teacher/lecturer write equations on the board",
       "Guardare un/una insegnante scrivere equazioni alla lavagna"},
  };
  MasItemMap map;
  for (const auto& row : rows) {
    map.items.push_back({row.idx, row.f, row.en, row.it});
  }
  map.check();
  return map;
}

}  // namespace

const MasItemMap& default_mas_items() {
  static const MasItemMap map = build_default_items();
  return map;
}

const std::vector<std::string>& cues_exp1() {
  static const std::vector<std::string> cues = {
      "physics", "mathematics", "statistics", "cognition", "computer science",
      "psychology", "biology", "equation", "science", "neuroscience",
      "relationship", "psychopathology", "emotion", "psychotherapist", "mind",
      "behaviour", "personality", "psychopathology", "attachment", "wellbeing",
      "exam", "anxiety", "test", "assessment", "degree",
      "average", "trial", "professor", "teacher", "university",
      "fun", "creativity", "passion", "work", "model",
      "knowledge", "innovation", "adventure", "curiosity", "challenge",
  };
  return cues;
}

const std::vector<std::string>& cues_exp2() {
  static const std::vector<std::string> cues = {
      "technology", "mathematics", "engineering", "biology", "physics",
      "statistics", "numbers", "calculation", "algorithm", "equation",
      "mathematician", "solution", "proof",
      "student", "parent", "teacher", "class", "exam",
      "notes", "blackboard", "assignment", "program", "math performance",
      "to study", "to plan", "to set a goal", "to memorize", "concept map",
      "to review", "importance", "commitment", "motivation", "concentration",
      "effort", "to keep track",
      "change of plans", "confusion", "problem", "anxiety", "distraction",
      "math test", "errors", "failure", "usefulness of math",
  };
  return cues;
}

MasItemMap load_mas_items(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open item map: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("item map " + path + ": " + e.what());
  }
  if (!doc.contains("items") || !doc["items"].is_array()) {
    throw ParseError("item map " + path + ": missing 'items' array");
  }
  MasItemMap map;
  for (const auto& obj : doc["items"]) {
    MasItem item;
    item.index = obj.at("index").get<int>();
    item.factor = mas_factor_from_string(obj.at("factor").get<std::string>());
    item.en = obj.value("en", "");
    item.it = obj.value("it", "");
    map.items.push_back(std::move(item));
  }
  map.check();
  return map;
}

std::vector<std::string> load_cue_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open cue list: " + path);
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError("cue list " + path + ": " + e.what());
  }
  const json& arr = doc.is_array() ? doc : doc.at("cues");
  std::vector<std::string> cues;
  for (const auto& c : arr) cues.push_back(normalize_word(c.get<std::string>()));
  if (cues.empty()) throw ParseError("cue list " + path + " is empty");
  return cues;
}

std::vector<std::string> resolve_cue_set(const std::string& name_or_path) {
  if (name_or_path == "exp1") return cues_exp1();
  if (name_or_path == "exp2") return cues_exp2();
  return load_cue_list(name_or_path);
}

std::vector<std::string> unique_words(const std::vector<std::string>& words) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  for (const auto& w : words) {
    if (seen.insert(w).second) out.push_back(w);
  }
  return out;
}

}  // namespace fmn
