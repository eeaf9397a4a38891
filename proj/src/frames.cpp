#include "fmn/frames.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <tuple>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "fmn/errors.hpp"
#include "fmn/rng.hpp"
#include "fmn/valence.hpp"

namespace fmn {

using ordered_json = nlohmann::ordered_json;

std::string CohortSplit::to_json() const {
  ordered_json doc;
  doc["median_total"] = median_total;
  doc["low"] = low;
  doc["high"] = high;
  doc["excluded"] = excluded;
  return doc.dump(2) + "\n";
}

CohortSplit split_by_median(const std::vector<ParticipantRecord>& records,
                            const MasItemMap& item_map) {
  std::vector<std::pair<std::string, int>> totals;
  for (const auto& record : records) {
    if (!record.mas_answers) {
      throw ArgumentError("split_by_median: participant '" + record.participant_id +
                          "' has no questionnaire answers");
    }
    totals.push_back({record.participant_id, score_mas(*record.mas_answers, item_map).total});
  }
  if (totals.size() < 2) throw ArgumentError("split_by_median: need at least 2 scored records");

  std::vector<double> values;
  values.reserve(totals.size());
  for (const auto& [_, total] : totals) values.push_back(total);
  const double med = median(values);

  CohortSplit cohorts;
  cohorts.median_total = med;
  for (const auto& [id, total] : totals) {
    if (total < med) {
      cohorts.low.push_back(id);
    } else if (total > med) {
      cohorts.high.push_back(id);
    } else {
      cohorts.excluded.push_back(id);
    }
  }
  return cohorts;
}

GroupNetwork build_group_network(const std::vector<ParticipantRecord>& records,
                                 double valence_alpha) {
  if (records.empty()) throw ArgumentError("build_group_network: empty cohort");

  GroupNetwork group;
  std::map<std::pair<std::string, std::string>, int> weight;
  std::vector<std::string> nodes;

  for (const auto& record : records) {
    // Distinct associations per participant; repeats inside one person's
    // record still count once toward the weight.
    std::set<std::pair<std::string, std::string>> own;
    for (const auto& [cue, responses] : record.cue_responses) {
      nodes.push_back(cue);
      for (const auto& resp : responses) {
        nodes.push_back(resp);
        if (resp == cue) continue;
        auto key = std::minmax(cue, resp);
        own.insert({key.first, key.second});
      }
    }
    for (const auto& pair : own) weight[pair]++;
    for (const auto& [word, ratings] : record.valence_ratings) {
      auto& pooled = group.ratings[word];
      pooled.insert(pooled.end(), ratings.begin(), ratings.end());
    }
  }

  std::vector<std::tuple<std::string, std::string, int>> edges;
  edges.reserve(weight.size());
  for (const auto& [pair, w] : weight) edges.emplace_back(pair.first, pair.second, w);

  group.network = Bfmn::build(nodes, edges, group_labels(group.ratings, valence_alpha));
  return group;
}

const char* to_string(EdgeClass c) {
  switch (c) {
    case EdgeClass::positive: return "positive";
    case EdgeClass::negative: return "negative";
    case EdgeClass::neutral: return "neutral";
    case EdgeClass::contrastive: return "contrastive";
  }
  return "?";
}

EdgeClass classify_edge(int label_a, int label_b) {
  if (label_a < -1 || label_a > 1 || label_b < -1 || label_b > 1) {
    throw ArgumentError("classify_edge: labels must be -1, 0 or +1");
  }
  const int lo = std::min(label_a, label_b);
  const int hi = std::max(label_a, label_b);
  if (lo == 1) return EdgeClass::positive;                  // (+,+)
  if (hi == -1) return EdgeClass::negative;                 // (-,-)
  if (lo == -1 && hi == 1) return EdgeClass::contrastive;   // (+,-)
  if (hi == 1) return EdgeClass::positive;                  // (+,0)
  if (lo == -1) return EdgeClass::negative;                 // (-,0)
  return EdgeClass::neutral;                                // (0,0)
}

namespace {

// Order frame nodes on the circle so that interconnected nodes sit close:
// sort by the Fiedler vector of the weighted Laplacian (spectral seriation).
// Sign and tie ambiguities are resolved deterministically.
std::vector<int> spectral_order(const std::vector<std::string>& names,
                                const std::vector<std::vector<double>>& adjacency) {
  const int n = static_cast<int>(names.size());
  std::vector<int> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  if (n <= 2) return order;

  Eigen::MatrixXd laplacian = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    double deg = 0.0;
    for (int j = 0; j < n; ++j) {
      laplacian(i, j) = -adjacency[i][j];
      deg += adjacency[i][j];
    }
    laplacian(i, i) = deg;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(laplacian);
  Eigen::VectorXd fiedler = solver.eigenvectors().col(1);
  for (int i = 0; i < n; ++i) {
    if (std::fabs(fiedler(i)) > 1e-12) {
      if (fiedler(i) < 0) fiedler = -fiedler;
      break;
    }
  }
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (fiedler(a) != fiedler(b)) return fiedler(a) < fiedler(b);
    return names[a] < names[b];
  });
  return order;
}

}  // namespace

SemanticFrame semantic_frame(const Bfmn& group_net, const std::string& target) {
  const int target_idx = group_net.index_of(target);

  SemanticFrame frame;
  frame.target = group_net.name_of(target_idx);
  frame.target_label = group_net.label_at(target_idx);

  const std::vector<int>& neighbour_idx = group_net.neighbours_at(target_idx);
  for (int idx : neighbour_idx) {
    frame.neighbours.push_back({group_net.name_of(idx), group_net.label_at(idx)});
  }
  frame.frame_degree = static_cast<int>(frame.neighbours.size());
  frame.frame_clustering = group_net.local_clustering_at(target_idx);

  // Induced subgraph on target + neighbours.
  std::vector<int> members = neighbour_idx;
  members.push_back(target_idx);
  std::sort(members.begin(), members.end());
  int counts[4] = {0, 0, 0, 0};
  for (size_t i = 0; i < members.size(); ++i) {
    for (size_t j = i + 1; j < members.size(); ++j) {
      const int w = group_net.edge_weight_at(members[i], members[j]);
      if (w == 0) continue;
      SemanticFrame::FrameEdge edge;
      edge.a = group_net.name_of(members[i]);
      edge.b = group_net.name_of(members[j]);
      edge.weight = w;
      edge.cls = classify_edge(group_net.label_at(members[i]), group_net.label_at(members[j]));
      counts[static_cast<int>(edge.cls)]++;
      frame.edges.push_back(std::move(edge));
    }
  }

  // Mode over {positive, negative, contrastive}; neutral edges do not
  // compete. Ties break negative > positive > contrastive.
  const int pos = counts[static_cast<int>(EdgeClass::positive)];
  const int neg = counts[static_cast<int>(EdgeClass::negative)];
  const int con = counts[static_cast<int>(EdgeClass::contrastive)];
  const int top = std::max({pos, neg, con});
  if (top == 0) {
    frame.valence_mode = EdgeClass::neutral;
  } else if (neg == top) {
    frame.valence_mode = EdgeClass::negative;
  } else if (pos == top) {
    frame.valence_mode = EdgeClass::positive;
  } else {
    frame.valence_mode = EdgeClass::contrastive;
  }

  // Layout: build the frame subgraph, order nodes spectrally, size fonts by
  // closeness within the frame.
  std::vector<std::string> member_names;
  member_names.reserve(members.size());
  for (int idx : members) member_names.push_back(group_net.name_of(idx));

  std::vector<std::tuple<std::string, std::string, int>> sub_edges;
  for (const auto& e : frame.edges) sub_edges.emplace_back(e.a, e.b, e.weight);
  const Bfmn subgraph = Bfmn::build(member_names, sub_edges);

  const int m = subgraph.node_count();
  std::vector<std::vector<double>> adjacency(m, std::vector<double>(m, 0.0));
  for (const auto& e : subgraph.edges()) {
    adjacency[e.a][e.b] = e.weight;
    adjacency[e.b][e.a] = e.weight;
  }
  const std::vector<int> order = spectral_order(subgraph.nodes(), adjacency);

  std::vector<double> closeness(m);
  double lo = 0.0;
  double hi = 0.0;
  for (int i = 0; i < m; ++i) {
    closeness[i] = subgraph.closeness_at(i);
    if (i == 0) {
      lo = hi = closeness[i];
    } else {
      lo = std::min(lo, closeness[i]);
      hi = std::max(hi, closeness[i]);
    }
  }

  for (int k = 0; k < m; ++k) {
    const int idx = order[k];
    SemanticFrame::LayoutSlot slot;
    slot.name = subgraph.name_of(idx);
    slot.angle = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(m);
    slot.font_scale = hi > lo ? 1.0 + (closeness[idx] - lo) / (hi - lo) : 1.0;
    frame.layout.push_back(std::move(slot));
  }
  return frame;
}

std::string SemanticFrame::to_json() const {
  ordered_json doc;
  doc["target"] = target;
  doc["target_valence"] = target_label;
  doc["frame_degree"] = frame_degree;
  doc["frame_clustering"] = frame_clustering;
  doc["valence_mode"] = to_string(valence_mode);
  doc["neighbours"] = ordered_json::array();
  for (const auto& nb : neighbours) {
    doc["neighbours"].push_back({{"name", nb.name}, {"valence", nb.label}});
  }
  doc["edges"] = ordered_json::array();
  for (const auto& e : edges) {
    doc["edges"].push_back({{"source", e.a},
                            {"target", e.b},
                            {"weight", e.weight},
                            {"class", to_string(e.cls)}});
  }
  doc["layout"] = ordered_json::array();
  for (const auto& slot : layout) {
    doc["layout"].push_back(
        {{"name", slot.name}, {"angle", slot.angle}, {"font_scale", slot.font_scale}});
  }
  return doc.dump(2) + "\n";
}

}  // namespace fmn
