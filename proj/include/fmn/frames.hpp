#pragma once

#include <map>
#include <string>
#include <vector>

#include "fmn/graph.hpp"
#include "fmn/participant.hpp"
#include "fmn/psychometrics.hpp"

namespace fmn {

/// Median split of participants on total questionnaire score: strictly
/// below the median -> low, strictly above -> high, exactly equal ->
/// excluded. The three id lists partition the input.
struct CohortSplit {
  std::vector<std::string> low;
  std::vector<std::string> high;
  std::vector<std::string> excluded;
  double median_total = 0.0;

  std::string to_json() const;
};

CohortSplit split_by_median(const std::vector<ParticipantRecord>& records,
                            const MasItemMap& item_map = default_mas_items());

/// Group-level aggregation: edge weight counts how many participants made
/// the association (one individual contributes at most 1 per edge);
/// group ratings concatenate every participant's ratings per concept.
struct GroupNetwork {
  Bfmn network;  // valence labels already assigned from the group test
  std::map<std::string, std::vector<int>> ratings;
};

GroupNetwork build_group_network(const std::vector<ParticipantRecord>& records,
                                 double valence_alpha);

enum class EdgeClass { positive, negative, neutral, contrastive };
const char* to_string(EdgeClass c);

/// Classify an association from its endpoint labels:
/// (+,+)/(+,0) positive, (-,-)/(-,0) negative, (0,0) neutral,
/// (+,-) contrastive.
EdgeClass classify_edge(int label_a, int label_b);

/// Network neighbourhood of a target concept, ready to render: the induced
/// subgraph on the target and its neighbours (neighbour-neighbour links
/// included), endpoint labels, classified edges, the frame's structural
/// statistics, and a deterministic circular layout.
struct SemanticFrame {
  struct Neighbour {
    std::string name;
    int label = 0;
  };
  struct FrameEdge {
    std::string a;
    std::string b;
    int weight = 1;
    EdgeClass cls = EdgeClass::neutral;
  };
  struct LayoutSlot {
    std::string name;
    double angle = 0.0;       // radians, on the unit circle
    double font_scale = 1.0;  // monotone in frame closeness, in [1, 2]
  };

  std::string target;
  int target_label = 0;
  std::vector<Neighbour> neighbours;
  std::vector<FrameEdge> edges;
  int frame_degree = 0;
  double frame_clustering = 0.0;
  EdgeClass valence_mode = EdgeClass::neutral;
  std::vector<LayoutSlot> layout;  // circular ordering (target included)

  std::string to_json() const;
};

SemanticFrame semantic_frame(const Bfmn& group_net, const std::string& target);

}  // namespace fmn
