#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fmn/frames.hpp"
#include "fmn/graph.hpp"
#include "fmn/ingestion.hpp"
#include "fmn/psychometrics.hpp"
#include "fmn/render.hpp"
#include "fmn/sim.hpp"
#include "fmn/stats.hpp"
#include "fmn/text.hpp"
#include "fmn/valence.hpp"

namespace py = pybind11;
using namespace fmn;

PYBIND11_MODULE(_fmn, m) {
  m.doc() = "forma mentis network toolkit (C++ core)";
  m.attr("__version__") = FMN_VERSION;

  py::register_exception<Error>(m, "FmnError");

  // ---- data model -------------------------------------------------------
  py::enum_<StudentProfile::Gender>(m, "Gender")
      .value("male", StudentProfile::Gender::male)
      .value("female", StudentProfile::Gender::female);
  py::enum_<StudentProfile::Education>(m, "Education")
      .value("high_school_final_year", StudentProfile::Education::high_school_final_year)
      .value("bsc_year1", StudentProfile::Education::bsc_year1)
      .value("bsc_year2", StudentProfile::Education::bsc_year2)
      .value("bsc_year3", StudentProfile::Education::bsc_year3);
  py::enum_<StudentProfile::Socioeconomic>(m, "Socioeconomic")
      .value("low", StudentProfile::Socioeconomic::low)
      .value("medium_low", StudentProfile::Socioeconomic::medium_low)
      .value("medium", StudentProfile::Socioeconomic::medium)
      .value("medium_high", StudentProfile::Socioeconomic::medium_high)
      .value("high", StudentProfile::Socioeconomic::high);

  py::class_<StudentProfile>(m, "StudentProfile")
      .def(py::init<>())
      .def_readwrite("gender", &StudentProfile::gender)
      .def_readwrite("age", &StudentProfile::age)
      .def_readwrite("education", &StudentProfile::education)
      .def_readwrite("socioeconomic", &StudentProfile::socioeconomic)
      .def_readwrite("rng_seed", &StudentProfile::rng_seed)
      .def("__eq__", [](const StudentProfile& a, const StudentProfile& b) { return a == b; });

  py::class_<Provenance>(m, "Provenance")
      .def_static("human", &Provenance::human)
      .def_static("simulated", &Provenance::simulated)
      .def_property_readonly("is_simulated",
                             [](const Provenance& p) { return p.kind == Provenance::Kind::simulated; })
      .def_readonly("model", &Provenance::model);

  py::class_<ParticipantRecord>(m, "ParticipantRecord")
      .def(py::init<>())
      .def_readwrite("participant_id", &ParticipantRecord::participant_id)
      .def_readwrite("source", &ParticipantRecord::source)
      .def_readwrite("cue_responses", &ParticipantRecord::cue_responses)
      .def_readwrite("valence_ratings", &ParticipantRecord::valence_ratings)
      .def_readwrite("mas_answers", &ParticipantRecord::mas_answers)
      .def_readwrite("profile", &ParticipantRecord::profile)
      .def("cues", &ParticipantRecord::cues)
      .def("missing_response_slots", &ParticipantRecord::missing_response_slots)
      .def("__eq__",
           [](const ParticipantRecord& a, const ParticipantRecord& b) { return a == b; });

  m.def("validate_record", &validate, py::arg("record"));
  m.def("normalize_word", &normalize_word);

  // ---- ingestion ---------------------------------------------------------
  py::enum_<ExclusionReason>(m, "ExclusionReason")
      .value("no_target_associations", ExclusionReason::no_target_associations)
      .value("excess_missing", ExclusionReason::excess_missing)
      .value("malformed", ExclusionReason::malformed);

  py::class_<CleaningReport>(m, "CleaningReport")
      .def_readonly("kept", &CleaningReport::kept)
      .def_readonly("excluded", &CleaningReport::excluded)
      .def("to_json", &CleaningReport::to_json);

  m.def("parse_participants",
        py::overload_cast<const std::string&>(&parse_participants), py::arg("path"));
  m.def("participants_from_json", &participants_from_json);
  m.def("participants_from_csv", &participants_from_csv);
  m.def("participants_to_json", &participants_to_json);
  m.def("participants_to_csv", &participants_to_csv);
  m.def(
      "clean_participants",
      [](const std::vector<ParticipantRecord>& records, const std::vector<std::string>& targets,
         const std::string& rule, bool require_mas) {
        CleaningOptions options;
        options.target_rule = target_rule_from_string(rule);
        options.require_mas = require_mas;
        return clean_participants(records, targets, options);
      },
      py::arg("records"), py::arg("target_cues"), py::arg("target_rule") = "all",
      py::arg("require_mas") = true);

  // ---- networks ----------------------------------------------------------
  py::enum_<ClosenessVariant>(m, "ClosenessVariant")
      .value("literal", ClosenessVariant::literal)
      .value("component_normalized", ClosenessVariant::component_normalized);

  py::class_<Bfmn>(m, "Bfmn")
      .def_static(
          "build",
          [](const std::vector<std::string>& nodes,
             const std::vector<std::tuple<std::string, std::string, int>>& edges,
             const std::map<std::string, int>& labels) { return Bfmn::build(nodes, edges, labels); },
          py::arg("nodes"), py::arg("edges"), py::arg("labels") = std::map<std::string, int>{})
      .def_property_readonly("node_count", &Bfmn::node_count)
      .def_property_readonly("edge_count", &Bfmn::edge_count)
      .def("nodes", &Bfmn::nodes)
      .def("has_node", &Bfmn::has_node)
      .def("label", &Bfmn::label)
      .def("degree", py::overload_cast<const std::string&>(&Bfmn::degree, py::const_))
      .def("edge_weight",
           py::overload_cast<const std::string&, const std::string&>(&Bfmn::edge_weight,
                                                                     py::const_))
      .def("shortest_path_lengths", &Bfmn::shortest_path_lengths)
      .def("closeness",
           py::overload_cast<const std::string&, ClosenessVariant>(&Bfmn::closeness, py::const_),
           py::arg("node"), py::arg("variant") = ClosenessVariant::literal)
      .def("local_clustering",
           py::overload_cast<const std::string&>(&Bfmn::local_clustering, py::const_))
      .def("to_edge_csv", &Bfmn::to_edge_csv)
      .def("to_json", &Bfmn::to_json);

  m.def("build_individual_network", &build_individual_network);

  // ---- valence -----------------------------------------------------------
  m.def("median_rating", &median_rating);
  m.def("quartiles", [](std::vector<double> values) {
    const Quartiles q = quartiles(std::move(values));
    return std::make_pair(q.q1, q.q3);
  });
  m.def("kruskal_wallis_two", [](const std::vector<double>& a, const std::vector<double>& b) {
    const KruskalWallisResult kw = kruskal_wallis_two(a, b);
    return std::make_pair(kw.h, kw.p);
  });
  m.def("individual_labels", &individual_labels);
  m.def("group_labels", &group_labels, py::arg("group_ratings"), py::arg("alpha") = 0.1);

  // ---- psychometrics -----------------------------------------------------
  py::class_<MasScores>(m, "MasScores")
      .def_readonly("evaluation", &MasScores::evaluation)
      .def_readonly("everyday_social", &MasScores::everyday_social)
      .def_readonly("passive_observation", &MasScores::passive_observation)
      .def_readonly("total", &MasScores::total);
  m.def("score_mas", py::overload_cast<const std::vector<int>&>(&score_mas), py::arg("answers"));

  py::class_<DescriptiveStats>(m, "DescriptiveStats")
      .def_readonly("n", &DescriptiveStats::n)
      .def_readonly("mean", &DescriptiveStats::mean)
      .def_readonly("sd", &DescriptiveStats::sd)
      .def_readonly("q1", &DescriptiveStats::q1)
      .def_readonly("q3", &DescriptiveStats::q3)
      .def_readonly("skewness", &DescriptiveStats::skewness);
  m.def("describe", &describe);

  // ---- statistics --------------------------------------------------------
  m.def("pearson", [](const std::vector<double>& x, const std::vector<double>& y) {
    const PearsonResult pr = pearson(x, y);
    return std::make_pair(pr.r, pr.p);
  });
  m.def("standardize", &standardize);

  py::class_<RegressionRow>(m, "RegressionRow")
      .def_readonly("name", &RegressionRow::name)
      .def_readonly("beta", &RegressionRow::beta)
      .def_readonly("se", &RegressionRow::se)
      .def_readonly("t", &RegressionRow::t)
      .def_readonly("p", &RegressionRow::p);
  py::class_<RegressionReport>(m, "RegressionReport")
      .def_readonly("outcome", &RegressionReport::outcome)
      .def_readonly("predictors", &RegressionReport::predictors)
      .def_readonly("rows", &RegressionReport::rows)
      .def_readonly("r_squared", &RegressionReport::r_squared)
      .def_readonly("aic", &RegressionReport::aic)
      .def_readonly("n", &RegressionReport::n)
      .def_readonly("perfect_fit", &RegressionReport::perfect_fit);
  m.def("ols_fit", &ols_fit, py::arg("y"), py::arg("predictors"), py::arg("predictor_names"),
        py::arg("outcome_name") = "y");

  py::class_<FeatureTable>(m, "FeatureTable")
      .def(py::init<>())
      .def_readwrite("columns", &FeatureTable::columns)
      .def_readwrite("rows", &FeatureTable::rows)
      .def("column", &FeatureTable::column);
  py::class_<ModelSelection>(m, "ModelSelection")
      .def_readonly("chosen_index", &ModelSelection::chosen_index)
      .def_readonly("chosen_predictors", &ModelSelection::chosen_predictors)
      .def_readonly("report", &ModelSelection::report)
      .def_readonly("aics", &ModelSelection::aics);
  m.def("select_model", &select_model, py::arg("table"), py::arg("outcome"),
        py::arg("candidates"));
  m.def("correlogram", [](const FeatureTable& table, double alpha) {
    const Correlogram grams = correlogram(table, alpha);
    py::list cells;
    for (size_t i = 0; i < grams.columns.size(); ++i) {
      py::list row;
      for (size_t j = 0; j < grams.columns.size(); ++j) {
        const auto& c = grams.cells[i][j];
        py::dict d;
        d["r"] = c.r;
        d["p"] = c.p;
        d["defined"] = c.defined;
        d["significant"] = c.significant;
        d["stars"] = c.stars;
        row.append(d);
      }
      cells.append(row);
    }
    return py::make_tuple(grams.columns, cells);
  });

  // ---- group frames ------------------------------------------------------
  py::class_<CohortSplit>(m, "CohortSplit")
      .def_readonly("low", &CohortSplit::low)
      .def_readonly("high", &CohortSplit::high)
      .def_readonly("excluded", &CohortSplit::excluded)
      .def_readonly("median_total", &CohortSplit::median_total)
      .def("to_json", &CohortSplit::to_json);
  m.def("split_by_median",
        [](const std::vector<ParticipantRecord>& records) { return split_by_median(records); });

  py::class_<GroupNetwork>(m, "GroupNetwork")
      .def_readonly("network", &GroupNetwork::network)
      .def_readonly("ratings", &GroupNetwork::ratings);
  m.def("build_group_network", &build_group_network, py::arg("records"),
        py::arg("valence_alpha") = 0.1);

  py::enum_<EdgeClass>(m, "EdgeClass")
      .value("positive", EdgeClass::positive)
      .value("negative", EdgeClass::negative)
      .value("neutral", EdgeClass::neutral)
      .value("contrastive", EdgeClass::contrastive);
  m.def("classify_edge", &classify_edge);

  py::class_<SemanticFrame>(m, "SemanticFrame")
      .def_readonly("target", &SemanticFrame::target)
      .def_readonly("target_label", &SemanticFrame::target_label)
      .def_readonly("frame_degree", &SemanticFrame::frame_degree)
      .def_readonly("frame_clustering", &SemanticFrame::frame_clustering)
      .def_readonly("valence_mode", &SemanticFrame::valence_mode)
      .def_property_readonly("neighbours",
                             [](const SemanticFrame& f) {
                               py::list out;
                               for (const auto& nb : f.neighbours) {
                                 out.append(py::make_tuple(nb.name, nb.label));
                               }
                               return out;
                             })
      .def_property_readonly("edges",
                             [](const SemanticFrame& f) {
                               py::list out;
                               for (const auto& e : f.edges) {
                                 out.append(py::make_tuple(e.a, e.b, e.weight, e.cls));
                               }
                               return out;
                             })
      .def("to_json", &SemanticFrame::to_json);
  m.def("semantic_frame", &semantic_frame, py::arg("group_net"), py::arg("target"));
  m.def("render_frame", [](const SemanticFrame& frame) {
    const RenderedFrame out = render_frame(frame);
    return std::make_pair(out.svg, out.dot);
  });

  // ---- simulation --------------------------------------------------------
  py::enum_<SimTask>(m, "SimTask")
      .value("mas", SimTask::mas)
      .value("associations", SimTask::associations)
      .value("valence", SimTask::valence);

  m.def("sample_profile", &sample_profile, py::arg("seed"));
  m.def("render_persona_prompt", &render_persona_prompt);
  m.def("render_task_prompt", &render_task_prompt, py::arg("task"), py::arg("materials"));
  m.def("expected_reply_count", &expected_reply_count);
  m.def(
      "parse_llm_reply",
      [](SimTask task, const std::string& text, int expected) {
        const ReplyPayload payload = parse_llm_reply(task, text, expected);
        return std::make_pair(payload.words, payload.ratings);
      },
      py::arg("task"), py::arg("text"), py::arg("expected_count"));

  py::class_<SimConfig>(m, "SimConfig")
      .def(py::init<>())
      .def_readwrite("endpoint", &SimConfig::endpoint)
      .def_readwrite("model", &SimConfig::model)
      .def_readwrite("api_key_env", &SimConfig::api_key_env)
      .def_readwrite("n_participants", &SimConfig::n_participants)
      .def_readwrite("max_concurrent", &SimConfig::max_concurrent)
      .def_readwrite("retry_budget", &SimConfig::retry_budget)
      .def_readwrite("temperature", &SimConfig::temperature)
      .def_readwrite("cues", &SimConfig::cues)
      .def_readwrite("master_seed", &SimConfig::master_seed)
      .def_readwrite("single_conversation", &SimConfig::single_conversation)
      .def_readwrite("backoff_base_ms", &SimConfig::backoff_base_ms);
  m.def(
      "run_simulation",
      [](const SimConfig& config) {
        const SimResult result = run_simulation(config);
        return std::make_pair(result.records, result.log.to_jsonl());
      },
      py::call_guard<py::gil_scoped_release>());

  // ---- reference data ----------------------------------------------------
  m.def("cues_exp1", [] { return cues_exp1(); });
  m.def("cues_exp2", [] { return cues_exp2(); });
  m.def("resolve_cue_set", &resolve_cue_set);
  m.def("unique_words", &unique_words);
}
