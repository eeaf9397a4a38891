// fmn: reconstruct forma mentis networks from free-association + valence +
// questionnaire data, run the correlation/regression protocol, extract group
// semantic frames, and simulate participants via a chat-completions endpoint.
//
// Subcommands: ingest, analyze, frames, simulate, report.
// Exit codes: 0 success, 2 validation failure, 3 environment problem,
// 4 remote-endpoint failure.

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fmn/csv.hpp"
#include "fmn/errors.hpp"
#include "fmn/frames.hpp"
#include "fmn/graph.hpp"
#include "fmn/ingestion.hpp"
#include "fmn/manifest.hpp"
#include "fmn/psychometrics.hpp"
#include "fmn/render.hpp"
#include "fmn/sim.hpp"
#include "fmn/stats.hpp"
#include "fmn/text.hpp"
#include "fmn/valence.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;
using namespace fmn;

namespace {

constexpr int kExitValidation = 2;
constexpr int kExitEnvironment = 3;
constexpr int kExitEndpoint = 4;

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.9g", v + 0.0);
  return buf;
}

std::string fmt3(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3f", v + 0.0);
  return buf;
}

void write_text(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError("cannot write " + path.string());
  out << content;
}

std::string dataset_label(const std::string& path) {
  return fs::path(path).stem().string();
}

std::vector<std::string> parse_word_list(const std::string& csv_words) {
  std::vector<std::string> out;
  for (const auto& piece : split(csv_words, ',')) {
    const std::string w = normalize_word(piece);
    if (!w.empty()) out.push_back(w);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Feature assembly shared by analyze/report
// ---------------------------------------------------------------------------

struct AnalyzeSettings {
  std::vector<std::string> targets = {"anxiety", "math"};
  ClosenessVariant closeness = ClosenessVariant::literal;
  bool valence_as_label = false;  // default: raw median rating
  double correlogram_alpha = 0.05;
  MasItemMap item_map = default_mas_items();
};

FeatureTable assemble_features(const std::vector<ParticipantRecord>& records,
                               const AnalyzeSettings& settings) {
  FeatureTable table;
  for (const auto& target : settings.targets) {
    table.columns.push_back("valence_" + target);
    table.columns.push_back("degree_" + target);
    table.columns.push_back("closeness_" + target);
  }
  table.columns.insert(table.columns.end(),
                       {"mas_evaluation", "mas_everyday_social", "mas_passive_observation",
                        "mas_total"});

  for (const auto& record : records) {
    if (!record.mas_answers) {
      throw ValidationError("participant '" + record.participant_id +
                            "' has no questionnaire answers; run ingest first");
    }
    const Bfmn net = build_individual_network(record);
    const std::map<std::string, int> labels =
        settings.valence_as_label ? individual_labels(record) : std::map<std::string, int>{};

    std::vector<double> row;
    for (const auto& target : settings.targets) {
      double valence = 0.0;
      auto it = record.valence_ratings.find(target);
      if (it == record.valence_ratings.end()) {
        throw ValidationError("participant '" + record.participant_id + "' never rated '" +
                              target + "'");
      }
      valence = settings.valence_as_label ? labels.at(target) : median_rating(it->second);
      const double degree = net.has_node(target) ? net.degree(target) : 0.0;
      const double closeness =
          net.has_node(target) ? net.closeness(target, settings.closeness) : 0.0;
      row.push_back(valence);
      row.push_back(degree);
      row.push_back(closeness);
    }
    const MasScores scores = score_mas(*record.mas_answers, settings.item_map);
    row.push_back(scores.evaluation);
    row.push_back(scores.everyday_social);
    row.push_back(scores.passive_observation);
    row.push_back(scores.total);
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string display_name(const std::string& column) {
  // degree_anxiety -> "Anxiety" Degree (report table style)
  const auto cap = [](std::string w) {
    if (!w.empty()) w[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(w[0])));
    return w;
  };
  for (const char* prefix : {"valence_", "degree_", "closeness_"}) {
    if (column.rfind(prefix, 0) == 0) {
      const std::string word = column.substr(std::string(prefix).size());
      std::string metric = cap(std::string(prefix).substr(0, std::string(prefix).size() - 1));
      if (metric == "Closeness") metric = "Closeness Centrality";
      return "\"" + cap(word) + "\" " + metric;
    }
  }
  if (column == "mas_evaluation") return "Evaluation MA";
  if (column == "mas_everyday_social") return "Everyday/Social MA";
  if (column == "mas_passive_observation") return "Passive Observation MA";
  if (column == "mas_total") return "Total MA";
  return column;
}

std::string correlogram_csv(const Correlogram& grams) {
  std::ostringstream os;
  std::vector<std::string> header = {""};
  for (const auto& col : grams.columns) header.push_back(display_name(col));
  csv::write_row(os, header);
  for (size_t i = 0; i < grams.columns.size(); ++i) {
    std::vector<std::string> row = {display_name(grams.columns[i])};
    for (size_t j = 0; j < grams.columns.size(); ++j) {
      const auto& cell = grams.cells[i][j];
      if (!cell.defined) {
        row.push_back("undefined");
      } else {
        row.push_back(fmt3(cell.r) + std::string(cell.stars, '*'));
      }
    }
    csv::write_row(os, row);
  }
  return os.str();
}

std::string correlogram_to_json(const Correlogram& grams) {
  ordered_json doc;
  doc["columns"] = grams.columns;
  doc["cells"] = ordered_json::array();
  for (size_t i = 0; i < grams.columns.size(); ++i) {
    for (size_t j = i + 1; j < grams.columns.size(); ++j) {
      const auto& cell = grams.cells[i][j];
      ordered_json obj;
      obj["a"] = grams.columns[i];
      obj["b"] = grams.columns[j];
      obj["defined"] = cell.defined;
      if (cell.defined) {
        obj["r"] = cell.r;
        obj["p"] = cell.p;
        obj["significant"] = cell.significant;
        obj["stars"] = cell.stars;
      }
      doc["cells"].push_back(std::move(obj));
    }
  }
  return doc.dump(2) + "\n";
}

std::string correlogram_svg(const Correlogram& grams) {
  const size_t m = grams.columns.size();
  const double cell = 52.0;
  const double left = 190.0;
  const double top = 150.0;
  const double width = left + cell * m + 20.0;
  const double height = top + cell * m + 20.0;

  auto fill_for = [](const CorrelogramCell& c) -> std::string {
    if (!c.defined) return "rgb(220,220,220)";
    // white -> red for positive r, white -> blue for negative r
    const double a = std::fabs(c.r);
    const int rch = c.r >= 0 ? 215 : static_cast<int>(255 - a * (255 - 69));
    const int gch = static_cast<int>(255 - a * (255 - (c.r >= 0 ? 48 : 117)));
    const int bch = c.r >= 0 ? static_cast<int>(255 - a * (255 - 39)) : 180;
    const int r2 = c.r >= 0 ? static_cast<int>(255 - a * (255 - 215)) : rch;
    return "rgb(" + std::to_string(r2) + "," + std::to_string(gch) + "," +
           std::to_string(c.r >= 0 ? bch : 230) + ")";
  };

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (int)width << "\" height=\""
      << (int)height << "\" viewBox=\"0 0 " << (int)width << " " << (int)height << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg << "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (size_t j = 0; j < m; ++j) {
    const double x = left + cell * j + cell / 2.0;
    svg << "<text x=\"" << fmt3(x) << "\" y=\"" << fmt3(top - 8.0)
        << "\" text-anchor=\"start\" transform=\"rotate(-55 " << fmt3(x) << " "
        << fmt3(top - 8.0) << ")\">" << display_name(grams.columns[j]) << "</text>\n";
  }
  for (size_t i = 0; i < m; ++i) {
    svg << "<text x=\"" << fmt3(left - 8.0) << "\" y=\"" << fmt3(top + cell * i + cell / 2.0 + 4.0)
        << "\" text-anchor=\"end\">" << display_name(grams.columns[i]) << "</text>\n";
    for (size_t j = 0; j < m; ++j) {
      const auto& c = grams.cells[i][j];
      const double x = left + cell * j;
      const double y = top + cell * i;
      svg << "<rect x=\"" << fmt3(x) << "\" y=\"" << fmt3(y) << "\" width=\"" << fmt3(cell)
          << "\" height=\"" << fmt3(cell) << "\" fill=\"" << fill_for(c)
          << "\" stroke=\"gray\" stroke-width=\"0.5\"/>\n";
      std::string text = c.defined ? fmt3(c.r) : "n/a";
      svg << "<text x=\"" << fmt3(x + cell / 2.0) << "\" y=\"" << fmt3(y + cell / 2.0)
          << "\" text-anchor=\"middle\">" << text << "</text>\n";
      if (c.defined && c.stars > 0 && i != j) {
        svg << "<text x=\"" << fmt3(x + cell / 2.0) << "\" y=\"" << fmt3(y + cell / 2.0 + 13.0)
            << "\" text-anchor=\"middle\">" << std::string(c.stars, '*') << "</text>\n";
      }
    }
  }
  svg << "</g>\n</svg>\n";
  return svg.str();
}

std::string regression_csv(const std::string& group, const RegressionReport& report) {
  std::ostringstream os;
  csv::write_row(os, {"Group", "Predictors", "β", "S.E.", "t", "p"});
  for (const auto& row : report.rows) {
    const std::string name = row.name == "Intercept" ? "Intercept" : display_name(row.name);
    csv::write_row(os, {group, name, fmt(row.beta), fmt(row.se), fmt(row.t), fmt(row.p)});
  }
  return os.str();
}

ordered_json regression_to_json(const RegressionReport& report,
                                const std::vector<std::optional<double>>& aics,
                                const std::vector<std::vector<std::string>>& candidates) {
  ordered_json doc;
  doc["outcome"] = report.outcome;
  doc["n"] = report.n;
  doc["predictors"] = report.predictors;
  doc["r_squared"] = report.r_squared;
  if (report.aic) doc["aic"] = *report.aic;
  doc["perfect_fit"] = report.perfect_fit;
  doc["rows"] = ordered_json::array();
  for (const auto& row : report.rows) {
    doc["rows"].push_back({{"name", row.name},
                           {"beta", row.beta},
                           {"se", row.se},
                           {"t", row.t},
                           {"p", row.p}});
  }
  doc["candidates"] = ordered_json::array();
  for (size_t c = 0; c < candidates.size(); ++c) {
    ordered_json cand;
    cand["predictors"] = candidates[c];
    if (c < aics.size() && aics[c]) cand["aic"] = *aics[c];
    doc["candidates"].push_back(std::move(cand));
  }
  return doc;
}

// ---------------------------------------------------------------------------
// ingest
// ---------------------------------------------------------------------------

struct IngestArgs {
  std::string input;
  std::string format = "auto";
  std::string targets = "math,anxiety";
  std::string target_rule = "all";
  bool no_require_mas = false;
  std::string out_dir = ".";
};

int run_ingest(const IngestArgs& args) {
  std::vector<ParticipantRecord> records;
  if (args.format == "auto") {
    records = parse_participants(args.input);
  } else if (args.format == "csv") {
    records = parse_participants(args.input, DatasetFormat::csv);
  } else if (args.format == "json") {
    records = parse_participants(args.input, DatasetFormat::json);
  } else {
    throw ArgumentError("unknown format: " + args.format);
  }

  CleaningOptions options;
  options.target_rule = target_rule_from_string(args.target_rule);
  options.require_mas = !args.no_require_mas;
  auto [kept, report] = clean_participants(records, parse_word_list(args.targets), options);

  const fs::path out(args.out_dir);
  fs::create_directories(out);
  const fs::path dataset_path = out / "dataset.json";
  const fs::path report_path = out / "cleaning_report.json";
  write_text(dataset_path, participants_to_json(kept));
  write_text(report_path, report.to_json());

  Manifest manifest("ingest", ordered_json{{"input", args.input},
                                           {"format", args.format},
                                           {"targets", args.targets},
                                           {"target_rule", args.target_rule},
                                           {"require_mas", !args.no_require_mas}});
  manifest.add_input(args.input);
  manifest.add_output(dataset_path.string());
  manifest.add_output(report_path.string());
  manifest.write((out / "manifest.json").string());

  std::printf("ingest: %zu records read, %zu kept, %zu excluded\n", records.size(),
              report.kept.size(), report.excluded.size());
  for (const auto& [id, reason] : report.excluded) {
    std::printf("  excluded %s (%s)\n", id.c_str(), to_string(reason));
  }
  return 0;
}

// ---------------------------------------------------------------------------
// analyze
// ---------------------------------------------------------------------------

struct AnalyzeArgs {
  std::string input;
  std::string out_dir = ".";
  std::string targets = "anxiety,math";
  std::string closeness_variant = "literal";
  std::string valence_predictor = "raw";
  double alpha = 0.05;
  std::string group;
  std::string mas_items;  // optional item-map override
};

const std::vector<std::pair<std::string, std::string>> kOutcomes = {
    {"mas_total", "total"},
    {"mas_evaluation", "evaluation"},
    {"mas_everyday_social", "everyday_social"},
    {"mas_passive_observation", "passive_observation"},
};

std::string descriptives_csv(const FeatureTable& table) {
  std::ostringstream os;
  csv::write_row(os, {"Variable", "N", "M", "SD", "Q1", "Q3", "SKP"});
  for (const auto& column : table.columns) {
    const DescriptiveStats d = describe(table.column(column));
    csv::write_row(os, {display_name(column), std::to_string(d.n), fmt(d.mean), fmt(d.sd),
                        fmt(d.q1), fmt(d.q3), fmt(d.skewness)});
  }
  return os.str();
}

int run_analyze(const AnalyzeArgs& args) {
  const std::vector<ParticipantRecord> records = parse_participants(args.input);
  if (records.size() < 5) {
    throw ValidationError("analyze: need at least 5 participants, got " +
                          std::to_string(records.size()));
  }

  AnalyzeSettings settings;
  settings.targets = parse_word_list(args.targets);
  if (settings.targets.size() != 2) {
    throw ArgumentError("analyze: exactly two target words expected");
  }
  settings.closeness = closeness_variant_from_string(args.closeness_variant);
  settings.valence_as_label = args.valence_predictor == "label";
  settings.correlogram_alpha = args.alpha;
  if (!args.mas_items.empty()) settings.item_map = load_mas_items(args.mas_items);

  const std::string group = args.group.empty() ? dataset_label(args.input) : args.group;
  const FeatureTable table = assemble_features(records, settings);

  const fs::path out(args.out_dir);
  fs::create_directories(out);

  // Feature table export.
  std::ostringstream features;
  {
    std::vector<std::string> header = {"participant_id"};
    header.insert(header.end(), table.columns.begin(), table.columns.end());
    csv::write_row(features, header);
    for (size_t i = 0; i < table.rows.size(); ++i) {
      std::vector<std::string> row = {records[i].participant_id};
      for (double v : table.rows[i]) row.push_back(fmt(v));
      csv::write_row(features, row);
    }
  }
  write_text(out / "features.csv", features.str());
  write_text(out / "descriptives.csv", descriptives_csv(table));

  Manifest manifest("analyze", ordered_json{{"input", args.input},
                                            {"targets", args.targets},
                                            {"closeness_variant", args.closeness_variant},
                                            {"valence_predictor", args.valence_predictor},
                                            {"alpha", args.alpha},
                                            {"group", group}});
  manifest.add_input(args.input);
  manifest.add_output((out / "features.csv").string());
  manifest.add_output((out / "descriptives.csv").string());

  // Correlogram over all feature and outcome columns.
  const Correlogram grams = correlogram(table, settings.correlogram_alpha);
  write_text(out / "correlogram.csv", correlogram_csv(grams));
  write_text(out / "correlogram.json", correlogram_to_json(grams));
  write_text(out / "correlogram.svg", correlogram_svg(grams));
  manifest.add_output((out / "correlogram.csv").string());
  manifest.add_output((out / "correlogram.json").string());
  manifest.add_output((out / "correlogram.svg").string());

  // Four outcome models, each selecting between the 3- and 4-predictor sets.
  const std::string a = settings.targets[0];  // anxiety
  const std::string mth = settings.targets[1];
  const std::vector<std::vector<std::string>> candidates = {
      {"degree_" + a, "valence_" + a, "valence_" + mth},
      {"degree_" + a, "degree_" + mth, "valence_" + a, "valence_" + mth},
  };

  std::ostringstream summary;
  csv::write_row(summary,
                 {"Outcome", "N", "ChosenPredictors", "R2", "AIC", "AIC_3pred", "AIC_4pred"});
  for (const auto& [column, stem] : kOutcomes) {
    try {
      const ModelSelection sel = select_model(table, column, candidates);
      write_text(out / ("regression_" + stem + ".csv"), regression_csv(group, sel.report));
      write_text(out / ("regression_" + stem + ".json"),
                 regression_to_json(sel.report, sel.aics, candidates).dump(2) + "\n");
      manifest.add_output((out / ("regression_" + stem + ".csv")).string());
      manifest.add_output((out / ("regression_" + stem + ".json")).string());
      std::string joined;
      for (const auto& p : sel.chosen_predictors) {
        if (!joined.empty()) joined += '+';
        joined += p;
      }
      csv::write_row(summary,
                     {display_name(column), std::to_string(sel.report.n), joined,
                      fmt(sel.report.r_squared), sel.report.aic ? fmt(*sel.report.aic) : "",
                      sel.aics[0] ? fmt(*sel.aics[0]) : "", sel.aics[1] ? fmt(*sel.aics[1]) : ""});
    } catch (const ArgumentError& e) {
      // Degenerate variance or rank deficiency: keep going, note the model.
      csv::write_row(summary, {display_name(column), "", "", "", "", "", ""});
      manifest.add_note("model '" + column + "' failed: " + e.what());
      std::fprintf(stderr, "analyze: model '%s' failed: %s\n", column.c_str(), e.what());
    }
  }
  write_text(out / "models_summary.csv", summary.str());
  manifest.add_output((out / "models_summary.csv").string());
  manifest.write((out / "manifest.json").string());
  std::printf("analyze: wrote correlogram and regression reports to %s\n",
              out.string().c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// frames
// ---------------------------------------------------------------------------

struct FramesArgs {
  std::vector<std::string> inputs;
  std::string out_dir = ".";
  std::string targets = "math,anxiety,science,statistics,therapist";
  double valence_alpha = 0.1;
  std::string mas_items;
};

int run_frames(const FramesArgs& args) {
  if (args.inputs.empty()) throw ArgumentError("frames: at least one input dataset required");
  const std::vector<std::string> targets = parse_word_list(args.targets);
  const MasItemMap item_map =
      args.mas_items.empty() ? default_mas_items() : load_mas_items(args.mas_items);
  const fs::path out(args.out_dir);
  fs::create_directories(out);

  Manifest manifest("frames", ordered_json{{"inputs", args.inputs},
                                           {"targets", args.targets},
                                           {"valence_alpha", args.valence_alpha}});

  for (const auto& input : args.inputs) {
    manifest.add_input(input);
    const std::vector<ParticipantRecord> records = parse_participants(input);
    const std::string label = dataset_label(input);
    const CohortSplit cohorts = split_by_median(records, item_map);
    write_text(out / label / "split.json", cohorts.to_json());
    manifest.add_output((out / label / "split.json").string());

    const std::map<std::string, std::vector<std::string>> by_cohort = {
        {"low", cohorts.low}, {"high", cohorts.high}};
    for (const auto& [cohort_name, ids] : by_cohort) {
      if (ids.size() < 1) {
        manifest.add_note(label + "/" + cohort_name + ": empty cohort, skipped");
        continue;
      }
      std::set<std::string> id_set(ids.begin(), ids.end());
      std::vector<ParticipantRecord> members;
      for (const auto& record : records) {
        if (id_set.count(record.participant_id)) members.push_back(record);
      }
      const GroupNetwork group = build_group_network(members, args.valence_alpha);
      const fs::path dir = out / label / cohort_name;
      write_text(dir / "network_edges.csv", group.network.to_edge_csv());
      write_text(dir / "network.json", group.network.to_json());
      manifest.add_output((dir / "network_edges.csv").string());
      manifest.add_output((dir / "network.json").string());

      for (const auto& target : targets) {
        if (!group.network.has_node(target)) {
          manifest.add_note(label + "/" + cohort_name + ": target '" + target +
                            "' absent from group network, skipped");
          std::fprintf(stderr, "frames: %s/%s: target '%s' absent, skipped\n", label.c_str(),
                       cohort_name.c_str(), target.c_str());
          continue;
        }
        const SemanticFrame frame = semantic_frame(group.network, target);
        const RenderedFrame rendered = render_frame(frame);
        write_text(dir / (target + ".json"), frame.to_json());
        write_text(dir / (target + ".svg"), rendered.svg);
        write_text(dir / (target + ".dot"), rendered.dot);
        manifest.add_output((dir / (target + ".json")).string());
        manifest.add_output((dir / (target + ".svg")).string());
        manifest.add_output((dir / (target + ".dot")).string());
      }
    }
  }
  manifest.write((out / "manifest.json").string());
  std::printf("frames: wrote %zu dataset(s) x 2 cohorts to %s\n", args.inputs.size(),
              out.string().c_str());
  return 0;
}

// ---------------------------------------------------------------------------
// simulate
// ---------------------------------------------------------------------------

struct SimulateArgs {
  std::string model = "gpt-3.5-turbo-0125";
  std::string endpoint = "https://api.openai.com/v1/chat/completions";
  int n = 1;
  std::uint64_t seed = 42;
  std::string cues = "exp1";
  std::string out = "sim.json";
  std::string log = "";
  std::string api_key_env = "OPENAI_API_KEY";
  double temperature = 1.0;
  int concurrency = 4;
  int retries = 2;
  bool independent_calls = false;
  int backoff_ms = 250;
};

int run_simulate(const SimulateArgs& args) {
  SimConfig config;
  config.model = args.model;
  config.endpoint = args.endpoint;
  config.n_participants = args.n;
  config.master_seed = args.seed;
  config.cues = resolve_cue_set(args.cues);
  config.api_key_env = args.api_key_env;
  config.temperature = args.temperature;
  config.max_concurrent = args.concurrency;
  config.retry_budget = args.retries;
  config.single_conversation = !args.independent_calls;
  config.backoff_base_ms = args.backoff_ms;

  const SimResult result = run_simulation(config);

  const std::string log_path = args.log.empty() ? args.out + ".log.jsonl" : args.log;
  write_text(args.out, participants_to_json(result.records));
  write_text(log_path, result.log.to_jsonl());

  Manifest manifest("simulate", ordered_json{{"model", args.model},
                                             {"endpoint", args.endpoint},
                                             {"n", args.n},
                                             {"seed", args.seed},
                                             {"cues", args.cues},
                                             {"temperature", args.temperature},
                                             {"concurrency", args.concurrency},
                                             {"retries", args.retries},
                                             {"single_conversation", config.single_conversation}});
  manifest.add_output(args.out);
  manifest.add_output(log_path);
  manifest.write(args.out + ".manifest.json");

  std::printf("simulate: %zu/%d participants succeeded, %d retries logged\n",
              result.records.size(), args.n, result.log.retry_count());
  if (result.records.empty() && args.n > 0) {
    throw EndpointError("no participant completed the protocol; see " + log_path);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// report
// ---------------------------------------------------------------------------

struct ReportArgs {
  std::string ingest_dir;
  std::string analysis_dir;
  std::string frames_dir;
  std::string out = "report.md";
};

std::string csv_to_markdown(const fs::path& path) {
  std::ostringstream os;
  const auto rows = csv::parse_file(path.string());
  for (size_t i = 0; i < rows.size(); ++i) {
    os << "|";
    for (const auto& fieldv : rows[i]) os << " " << fieldv << " |";
    os << "\n";
    if (i == 0) {
      os << "|";
      for (size_t j = 0; j < rows[i].size(); ++j) os << " --- |";
      os << "\n";
    }
  }
  return os.str();
}

int run_report(const ReportArgs& args) {
  std::ostringstream md;
  md << "# Forma mentis analysis report\n\n";

  if (!args.ingest_dir.empty()) {
    const fs::path dir(args.ingest_dir);
    md << "## Ingestion\n\n";
    std::ifstream in(dir / "cleaning_report.json");
    if (in) {
      const ordered_json report = ordered_json::parse(in);
      md << "Kept " << report["kept_count"] << " participants, excluded "
         << report["excluded_count"] << ".\n\n";
      if (!report["excluded"].empty()) {
        md << "| participant | reason |\n| --- | --- |\n";
        for (const auto& e : report["excluded"]) {
          md << "| " << e["participant_id"].get<std::string>() << " | "
             << e["reason"].get<std::string>() << " |\n";
        }
        md << "\n";
      }
    }
  }

  if (!args.analysis_dir.empty()) {
    const fs::path dir(args.analysis_dir);
    md << "## Descriptive statistics\n\n" << csv_to_markdown(dir / "descriptives.csv") << "\n";
    md << "## Correlogram\n\n" << csv_to_markdown(dir / "correlogram.csv") << "\n";
    md << "See `correlogram.svg` for the annotated heat map.\n\n";
    md << "## Regression models\n\n" << csv_to_markdown(dir / "models_summary.csv") << "\n";
    for (const auto& [column, stem] : kOutcomes) {
      const fs::path reg = dir / ("regression_" + stem + ".csv");
      if (fs::exists(reg)) {
        md << "### " << display_name(column) << "\n\n" << csv_to_markdown(reg) << "\n";
      }
    }
  }

  if (!args.frames_dir.empty()) {
    const fs::path dir(args.frames_dir);
    md << "## Semantic frames\n\n";
    md << "| dataset | cohort | target | degree | clustering | valence mode |\n";
    md << "| --- | --- | --- | --- | --- | --- |\n";
    std::vector<fs::path> frame_files;
    if (fs::exists(dir)) {
      for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (entry.path().extension() == ".json" &&
            entry.path().filename() != "manifest.json" &&
            entry.path().filename() != "split.json" &&
            entry.path().filename() != "network.json") {
          frame_files.push_back(entry.path());
        }
      }
    }
    std::sort(frame_files.begin(), frame_files.end());
    for (const auto& path : frame_files) {
      std::ifstream in(path);
      if (!in) continue;
      const ordered_json frame = ordered_json::parse(in);
      const fs::path rel = fs::relative(path, dir);
      const std::string dataset = rel.begin() != rel.end() ? rel.begin()->string() : "?";
      const std::string cohort =
          std::distance(rel.begin(), rel.end()) >= 2 ? (++rel.begin())->string() : "?";
      md << "| " << dataset << " | " << cohort << " | " << frame["target"].get<std::string>()
         << " | " << frame["frame_degree"] << " | " << fmt3(frame["frame_clustering"].get<double>())
         << " | " << frame["valence_mode"].get<std::string>() << " |\n";
    }
    md << "\n";
  }

  write_text(args.out, md.str());

  Manifest manifest("report", ordered_json{{"ingest", args.ingest_dir},
                                           {"analysis", args.analysis_dir},
                                           {"frames", args.frames_dir}});
  for (const std::string& dir : {args.ingest_dir, args.analysis_dir, args.frames_dir}) {
    if (!dir.empty() && fs::exists(fs::path(dir) / "manifest.json")) {
      manifest.add_input((fs::path(dir) / "manifest.json").string());
    }
  }
  manifest.add_output(args.out);
  manifest.write(args.out + ".manifest.json");

  std::printf("report: wrote %s\n", args.out.c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"forma mentis network toolkit"};
  app.fallthrough();
  app.set_config("--config", "",
                 "key = value config file with one [section] per subcommand; flags override");
  app.require_subcommand(1);

  IngestArgs ingest_args;
  auto* ingest = app.add_subcommand("ingest", "parse, validate and clean a dataset");
  ingest->add_option("input", ingest_args.input, "dataset file (.csv or .json)")->required();
  ingest->add_option("--format", ingest_args.format, "csv|json|auto");
  ingest->add_option("--targets", ingest_args.targets, "comma-separated target cues");
  ingest->add_option("--target-rule", ingest_args.target_rule,
                     "all: exclude when every target cue is blank; any: when one is");
  ingest->add_flag("--no-require-mas", ingest_args.no_require_mas,
                   "keep records without questionnaire answers");
  ingest->add_option("--out", ingest_args.out_dir, "output directory");

  AnalyzeArgs analyze_args;
  auto* analyze = app.add_subcommand("analyze", "correlogram + four regression models");
  analyze->add_option("input", analyze_args.input, "cleaned dataset (.json)")->required();
  analyze->add_option("--out", analyze_args.out_dir, "output directory");
  analyze->add_option("--targets", analyze_args.targets, "two feature words (default anxiety,math)");
  analyze->add_option("--closeness-variant", analyze_args.closeness_variant,
                      "literal|component_normalized");
  analyze->add_option("--valence-predictor", analyze_args.valence_predictor,
                      "raw: median 1-5 rating; label: categorical -1/0/+1");
  analyze->add_option("--alpha", analyze_args.alpha, "correlogram significance level");
  analyze->add_option("--group", analyze_args.group, "group label for report rows");
  analyze->add_option("--mas-items", analyze_args.mas_items,
                      "item map json overriding the bundled questionnaire");

  FramesArgs frames_args;
  auto* frames = app.add_subcommand("frames", "median split, group networks, semantic frames");
  frames->add_option("--group", frames_args.inputs, "cleaned dataset (repeatable)")
      ->required()
      ->take_all();
  frames->add_option("--targets", frames_args.targets, "comma-separated frame targets");
  frames->add_option("--valence-alpha", frames_args.valence_alpha,
                     "significance level for group valence labels");
  frames->add_option("--out", frames_args.out_dir, "output directory");
  frames->add_option("--mas-items", frames_args.mas_items,
                     "item map json overriding the bundled questionnaire");

  SimulateArgs sim_args;
  auto* simulate = app.add_subcommand("simulate", "generate participants via an LLM endpoint");
  simulate->add_option("--model", sim_args.model, "model name");
  simulate->add_option("--endpoint", sim_args.endpoint, "chat-completions URL");
  simulate->add_option("--n", sim_args.n, "number of participants");
  simulate->add_option("--seed", sim_args.seed, "master seed");
  simulate->add_option("--cues", sim_args.cues, "exp1|exp2|path to cue list json");
  simulate->add_option("--out", sim_args.out, "output dataset path (.json)");
  simulate->add_option("--log", sim_args.log, "run log path (.jsonl)");
  simulate->add_option("--api-key-env", sim_args.api_key_env, "env var holding the API key");
  simulate->add_option("--temperature", sim_args.temperature, "sampling temperature");
  simulate->add_option("--concurrency", sim_args.concurrency, "max in-flight participants");
  simulate->add_option("--retries", sim_args.retries, "retry budget per request");
  simulate->add_flag("--independent-calls", sim_args.independent_calls,
                     "send each task as an independent exchange instead of one conversation");
  simulate->add_option("--backoff-ms", sim_args.backoff_ms, "base transport retry backoff");

  ReportArgs report_args;
  auto* report = app.add_subcommand("report", "aggregate outputs into a Markdown summary");
  report->add_option("--ingest", report_args.ingest_dir, "ingest output directory");
  report->add_option("--analysis", report_args.analysis_dir, "analyze output directory");
  report->add_option("--frames", report_args.frames_dir, "frames output directory");
  report->add_option("--out", report_args.out, "report path (.md)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitValidation;  // bad flags are validation failures
  }

  try {
    if (ingest->parsed()) return run_ingest(ingest_args);
    if (analyze->parsed()) return run_analyze(analyze_args);
    if (frames->parsed()) return run_frames(frames_args);
    if (simulate->parsed()) return run_simulate(sim_args);
    if (report->parsed()) return run_report(report_args);
  } catch (const EnvironmentError& e) {
    std::fprintf(stderr, "environment error: %s\n", e.what());
    return kExitEnvironment;
  } catch (const EndpointError& e) {
    std::fprintf(stderr, "endpoint error: %s\n", e.what());
    return kExitEndpoint;
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitValidation;
  }
  return 0;
}
