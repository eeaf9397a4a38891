#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "fmn/participant.hpp"

namespace fmn {

/// Closeness centrality readings. `literal` evaluates the classic formula
/// C_i = (N-1) / sum_j d(i,j) with N the total node count and the sum over
/// reachable nodes only (on disconnected graphs this can exceed 1);
/// `component_normalized` rescales by the reachable fraction
/// ((r-1)/sum_d) * ((r-1)/(N-1)).
enum class ClosenessVariant { literal, component_normalized };

ClosenessVariant closeness_variant_from_string(const std::string& s);
const char* to_string(ClosenessVariant v);

/// Undirected forma mentis network: concepts as nodes, memory recalls as
/// edges. Individual-level networks are simple and unweighted; group-level
/// networks carry positive integer weights (number of participants who made
/// the association). Nodes hold categorical valence labels in {-1, 0, +1}.
///
/// The node table is sorted lexicographically, so construction is
/// independent of input order and all exports are deterministic.
class Bfmn {
 public:
  struct Edge {
    int a = 0;  // node index, a < b
    int b = 0;
    int weight = 1;
  };

  Bfmn() = default;

  /// Build from concept names and weighted word pairs. Self-loops are
  /// dropped; duplicate pairs keep the larger weight; labels default to 0.
  static Bfmn build(const std::vector<std::string>& nodes,
                    const std::vector<std::tuple<std::string, std::string, int>>& edges,
                    const std::map<std::string, int>& labels = {});

  int node_count() const { return static_cast<int>(names_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::string>& nodes() const { return names_; }
  const std::vector<Edge>& edges() const { return edges_; }

  bool has_node(const std::string& name) const;
  /// Index of a node; throws ArgumentError for unknown names.
  int index_of(const std::string& name) const;
  const std::string& name_of(int index) const { return names_[index]; }

  /// Valence label of a node in {-1, 0, +1} (0 when never labelled).
  int label(const std::string& name) const { return labels_[index_of(name)]; }
  int label_at(int index) const { return labels_[index]; }

  /// Number of distinct links at a node (weights do not count).
  int degree(const std::string& name) const;
  int degree_at(int index) const { return static_cast<int>(adjacency_[index].size()); }

  /// Neighbour indices, sorted.
  const std::vector<int>& neighbours_at(int index) const { return adjacency_[index]; }

  /// Weight of the edge between two nodes, 0 if absent.
  int edge_weight(const std::string& u, const std::string& v) const;
  int edge_weight_at(int u, int v) const;

  /// Unweighted breadth-first distances from `source`; unreachable nodes are
  /// absent from the map (their distance is taken as infinite).
  std::map<std::string, int> shortest_path_lengths(const std::string& source) const;

  /// BFS distances by index; -1 marks unreachable nodes.
  std::vector<int> bfs_distances(int source) const;

  double closeness(const std::string& name,
                   ClosenessVariant variant = ClosenessVariant::literal) const;
  double closeness_at(int index,
                      ClosenessVariant variant = ClosenessVariant::literal) const;

  /// Fraction of realized links among a node's neighbours; 0 when degree < 2.
  double local_clustering(const std::string& name) const;
  double local_clustering_at(int index) const;

  /// Edge-list CSV (`source,target,weight`), rows sorted.
  std::string to_edge_csv() const;
  /// JSON document with nodes, valence labels and weighted edges.
  std::string to_json() const;

 private:
  std::vector<std::string> names_;               // sorted
  std::vector<std::vector<int>> adjacency_;      // sorted neighbour lists
  std::vector<Edge> edges_;                      // sorted by (a, b)
  std::vector<int> labels_;                      // -1 / 0 / +1 per node
  std::map<std::pair<int, int>, int> weight_of_; // (a < b) -> weight
};

/// Individual-level network: nodes are the participant's cues and responses;
/// one unweighted edge joins each distinct (cue, response) pair; responses
/// are never linked to each other; a response equal to its cue adds no edge;
/// cues without responses stay as isolated nodes. Valence labels come from
/// the participant's own rating distribution (see valence.hpp).
Bfmn build_individual_network(const ParticipantRecord& record);

}  // namespace fmn
