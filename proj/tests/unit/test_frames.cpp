#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "fmn/errors.hpp"
#include "fmn/frames.hpp"
#include "fmn/valence.hpp"

using namespace fmn;

namespace {

ParticipantRecord scored_record(const std::string& id, int total_target) {
  // distribute a target total (23..115) over 23 items in [1,5]
  ParticipantRecord r;
  r.participant_id = id;
  r.cue_responses = {{"math", {"exam"}}, {"anxiety", {"fear"}}};
  r.valence_ratings = {{"math", {3}}, {"anxiety", {2}}, {"exam", {3}}, {"fear", {1}}};
  std::vector<int> answers(23, 1);
  int remaining = total_target - 23;
  for (auto& a : answers) {
    const int add = std::min(4, remaining);
    a += add;
    remaining -= add;
  }
  r.mas_answers = answers;
  return r;
}

ParticipantRecord assoc_record(
    const std::string& id,
    std::vector<std::pair<std::string, std::vector<std::string>>> cues) {
  ParticipantRecord r;
  r.participant_id = id;
  r.cue_responses = std::move(cues);
  for (const auto& [cue, responses] : r.cue_responses) {
    r.valence_ratings[cue] = {3};
    for (const auto& resp : responses) r.valence_ratings[resp] = {3};
  }
  r.mas_answers = std::vector<int>(23, 3);
  return r;
}

}  // namespace

TEST_CASE("median split: strict comparisons, ties excluded") {
  std::vector<ParticipantRecord> records = {
      scored_record("a", 40), scored_record("b", 50), scored_record("c", 50),
      scored_record("d", 60)};
  const CohortSplit split = split_by_median(records);
  CHECK(split.median_total == doctest::Approx(50.0));
  CHECK(split.low == std::vector<std::string>{"a"});
  CHECK(split.high == std::vector<std::string>{"d"});
  CHECK(split.excluded == std::vector<std::string>{"b", "c"});
}

TEST_CASE("median split: all equal totals everyone excluded") {
  std::vector<ParticipantRecord> records = {
      scored_record("a", 70), scored_record("b", 70), scored_record("c", 70)};
  const CohortSplit split = split_by_median(records);
  CHECK(split.low.empty());
  CHECK(split.high.empty());
  CHECK(split.excluded.size() == 3);
}

TEST_CASE("median split partitions the input") {
  std::mt19937 rng(1);
  std::uniform_int_distribution<int> total(23, 115);
  std::vector<ParticipantRecord> records;
  for (int i = 0; i < 70; ++i) {
    records.push_back(scored_record("p" + std::to_string(i), total(rng)));
  }
  const CohortSplit split = split_by_median(records);
  std::set<std::string> all;
  for (const auto& id : split.low) all.insert(id);
  for (const auto& id : split.high) all.insert(id);
  for (const auto& id : split.excluded) all.insert(id);
  CHECK(all.size() == records.size());
  CHECK(split.low.size() + split.high.size() + split.excluded.size() == records.size());
}

TEST_CASE("re-splitting the low cohort moves the median down") {
  std::vector<ParticipantRecord> records;
  const int totals[] = {30, 35, 40, 45, 60, 70, 80, 90};
  for (int i = 0; i < 8; ++i) {
    records.push_back(scored_record("p" + std::to_string(i), totals[i]));
  }
  const CohortSplit split = split_by_median(records);
  REQUIRE(split.low.size() >= 2);
  std::set<std::string> low_ids(split.low.begin(), split.low.end());
  std::vector<ParticipantRecord> low_records;
  for (const auto& r : records) {
    if (low_ids.count(r.participant_id)) low_records.push_back(r);
  }
  const CohortSplit resplit = split_by_median(low_records);
  CHECK(resplit.median_total < split.median_total);
}

TEST_CASE("median split preconditions") {
  CHECK_THROWS_AS(split_by_median({}), ArgumentError);
  CHECK_THROWS_AS(split_by_median({scored_record("a", 40)}), ArgumentError);
}

TEST_CASE("group network: shared association weight equals participant count") {
  std::vector<ParticipantRecord> cohort = {
      assoc_record("a", {{"math", {"boring"}}}),
      assoc_record("b", {{"math", {"boring", "exam"}}}),
      assoc_record("c", {{"math", {"boring"}}}),
  };
  const GroupNetwork group = build_group_network(cohort, 0.1);
  CHECK(group.network.edge_weight("math", "boring") == 3);
  CHECK(group.network.edge_weight("math", "exam") == 1);
  CHECK(group.ratings.at("math").size() == 3);  // one rating per participant
}

TEST_CASE("group network: duplicate association within one participant counts once") {
  std::vector<ParticipantRecord> cohort = {
      assoc_record("a", {{"math", {"exam", "exam", "exam"}}}),
  };
  const GroupNetwork group = build_group_network(cohort, 0.1);
  CHECK(group.network.edge_weight("math", "exam") == 1);
}

TEST_CASE("group degree dominates individual degree") {
  std::vector<ParticipantRecord> cohort = {
      assoc_record("a", {{"math", {"exam", "fear"}}}),
      assoc_record("b", {{"math", {"numbers"}}, {"exam", {"math"}}}),
  };
  const GroupNetwork group = build_group_network(cohort, 0.1);
  for (const auto& record : cohort) {
    const Bfmn individual = build_individual_network(record);
    if (individual.has_node("math")) {
      CHECK(group.network.degree("math") >= individual.degree("math"));
    }
  }
}

TEST_CASE("group edge weights equal a brute-force counting oracle") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> n_participants(1, 20);
  std::uniform_int_distribution<int> n_resp(0, 3);
  const std::vector<std::string> cues = {"math", "anxiety", "science"};
  const std::vector<std::string> vocab = {"exam", "fear", "fun", "logic", "stress"};
  std::uniform_int_distribution<int> pick(0, static_cast<int>(vocab.size()) - 1);

  for (int trial = 0; trial < 60; ++trial) {
    std::vector<ParticipantRecord> cohort;
    const int n = n_participants(rng);
    for (int i = 0; i < n; ++i) {
      std::vector<std::pair<std::string, std::vector<std::string>>> cr;
      for (const auto& cue : cues) {
        std::vector<std::string> responses;
        const int k = n_resp(rng);
        for (int s = 0; s < k; ++s) responses.push_back(vocab[pick(rng)]);
        cr.emplace_back(cue, responses);
      }
      cohort.push_back(assoc_record("p" + std::to_string(i), cr));
    }
    const GroupNetwork group = build_group_network(cohort, 0.1);

    // oracle: per-participant presence indicator summed per unordered pair
    std::map<std::pair<std::string, std::string>, int> expected;
    for (const auto& record : cohort) {
      std::set<std::pair<std::string, std::string>> made;
      for (const auto& [cue, responses] : record.cue_responses) {
        for (const auto& resp : responses) {
          if (resp == cue) continue;
          auto key = std::minmax(cue, resp);
          made.insert({key.first, key.second});
        }
      }
      for (const auto& pair : made) expected[pair]++;
    }
    int checked = 0;
    for (const auto& [pair, w] : expected) {
      CHECK(group.network.edge_weight(pair.first, pair.second) == w);
      ++checked;
    }
    CHECK(group.network.edge_count() == checked);
  }
}

TEST_CASE("classify_edge covers the full truth table") {
  CHECK(classify_edge(1, 1) == EdgeClass::positive);
  CHECK(classify_edge(1, 0) == EdgeClass::positive);
  CHECK(classify_edge(0, 1) == EdgeClass::positive);
  CHECK(classify_edge(-1, -1) == EdgeClass::negative);
  CHECK(classify_edge(-1, 0) == EdgeClass::negative);
  CHECK(classify_edge(0, -1) == EdgeClass::negative);
  CHECK(classify_edge(0, 0) == EdgeClass::neutral);
  CHECK(classify_edge(1, -1) == EdgeClass::contrastive);
  CHECK(classify_edge(-1, 1) == EdgeClass::contrastive);
  CHECK_THROWS_AS(classify_edge(2, 0), ArgumentError);
}

TEST_CASE("semantic frame of a star target") {
  const Bfmn net = Bfmn::build({"t", "a", "b", "c"},
                               {{"t", "a", 1}, {"t", "b", 2}, {"t", "c", 1}});
  const SemanticFrame frame = semantic_frame(net, "t");
  CHECK(frame.frame_degree == 3);
  CHECK(frame.frame_clustering == doctest::Approx(0.0));
  CHECK(frame.neighbours.size() == 3);
  CHECK(frame.edges.size() == 3);  // no neighbour-neighbour links
  CHECK(frame.layout.size() == 4);
}

TEST_CASE("semantic frame equals brute-force induced subgraph on random graphs") {
  std::mt19937 rng(12);
  std::uniform_int_distribution<int> n_nodes(3, 25);
  std::bernoulli_distribution edge(0.25);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = n_nodes(rng);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("w" + std::to_string(i));
    std::vector<std::tuple<std::string, std::string, int>> edges;
    std::map<std::pair<int, int>, int> weight;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        if (edge(rng)) {
          const int w = 1 + (rng() % 4);
          edges.emplace_back(names[i], names[j], w);
          weight[{i, j}] = w;
        }
      }
    }
    const Bfmn net = Bfmn::build(names, edges);
    if (!net.has_node("w0")) continue;
    const SemanticFrame frame = semantic_frame(net, "w0");

    // oracle: neighbours of w0 and every edge among {w0} + neighbours
    std::set<std::string> members = {"w0"};
    for (int j = 1; j < n; ++j) {
      if (weight.count({0, j})) members.insert(names[j]);
    }
    CHECK(frame.frame_degree == static_cast<int>(members.size()) - 1);
    std::set<std::pair<std::string, std::string>> expected_edges;
    for (const auto& [pair, w] : weight) {
      const std::string& a = names[pair.first];
      const std::string& b = names[pair.second];
      if (members.count(a) && members.count(b)) {
        expected_edges.insert(std::minmax(a, b));
      }
    }
    std::set<std::pair<std::string, std::string>> got;
    for (const auto& e : frame.edges) got.insert(std::minmax(e.a, e.b));
    CHECK(got == expected_edges);
  }
}

TEST_CASE("unknown frame target throws") {
  const Bfmn net = Bfmn::build({"a", "b"}, {{"a", "b", 1}});
  CHECK_THROWS_AS(semantic_frame(net, "zzz"), ArgumentError);
}

TEST_CASE("valence_mode counts exclude neutral and flip with labels") {
  const std::vector<std::string> nodes = {"t", "p1", "p2", "n1", "z1"};
  std::map<std::string, int> labels = {{"t", 0}, {"p1", 1}, {"p2", 1}, {"n1", -1}, {"z1", 0}};
  const std::vector<std::tuple<std::string, std::string, int>> edges = {
      {"t", "p1", 1}, {"t", "p2", 1}, {"t", "n1", 1}, {"t", "z1", 1}, {"p1", "n1", 1}};
  const Bfmn net = Bfmn::build(nodes, edges, labels);
  const SemanticFrame frame = semantic_frame(net, "t");
  // positive: t-p1, t-p2; negative: t-n1; contrastive: p1-n1; neutral: t-z1
  CHECK(frame.valence_mode == EdgeClass::positive);

  std::map<std::string, int> flipped;
  for (const auto& [name, label] : labels) flipped[name] = -label;
  const Bfmn flipped_net = Bfmn::build(nodes, edges, flipped);
  const SemanticFrame flipped_frame = semantic_frame(flipped_net, "t");
  CHECK(flipped_frame.valence_mode == EdgeClass::negative);

  int contrastive_before = 0;
  int contrastive_after = 0;
  for (const auto& e : frame.edges) contrastive_before += e.cls == EdgeClass::contrastive;
  for (const auto& e : flipped_frame.edges) contrastive_after += e.cls == EdgeClass::contrastive;
  CHECK(contrastive_before == contrastive_after);
}

TEST_CASE("frame with only neutral edges has neutral mode") {
  const Bfmn net = Bfmn::build({"t", "a"}, {{"t", "a", 1}},
                               {{"t", 0}, {"a", 0}});
  CHECK(semantic_frame(net, "t").valence_mode == EdgeClass::neutral);
}

TEST_CASE("frame font scale is monotone in frame closeness") {
  // path b - t - a plus a-t-c triangle-ish structure to vary closeness
  const Bfmn net = Bfmn::build(
      {"t", "a", "b", "c", "d"},
      {{"t", "a", 1}, {"t", "b", 1}, {"t", "c", 1}, {"t", "d", 1}, {"a", "b", 1}, {"a", "c", 1}});
  const SemanticFrame frame = semantic_frame(net, "t");
  // recompute closeness on the frame subgraph and check monotonicity
  std::vector<std::tuple<std::string, std::string, int>> sub;
  for (const auto& e : frame.edges) sub.emplace_back(e.a, e.b, e.weight);
  std::vector<std::string> members = {"t"};
  for (const auto& nb : frame.neighbours) members.push_back(nb.name);
  const Bfmn subgraph = Bfmn::build(members, sub);
  for (const auto& s1 : frame.layout) {
    for (const auto& s2 : frame.layout) {
      const double c1 = subgraph.closeness(s1.name);
      const double c2 = subgraph.closeness(s2.name);
      if (c1 < c2) CHECK(s1.font_scale <= s2.font_scale);
      if (c1 == c2) CHECK(s1.font_scale == doctest::Approx(s2.font_scale));
    }
  }
  for (const auto& slot : frame.layout) {
    CHECK(slot.font_scale >= 1.0);
    CHECK(slot.font_scale <= 2.0);
  }
}
