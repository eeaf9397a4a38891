#include "fmn/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "fmn/errors.hpp"
#include "fmn/valence.hpp"

namespace fmn {

ClosenessVariant closeness_variant_from_string(const std::string& s) {
  if (s == "literal") return ClosenessVariant::literal;
  if (s == "component_normalized") return ClosenessVariant::component_normalized;
  throw ArgumentError("unknown closeness variant: " + s);
}

const char* to_string(ClosenessVariant v) {
  return v == ClosenessVariant::literal ? "literal" : "component_normalized";
}

Bfmn Bfmn::build(const std::vector<std::string>& nodes,
                 const std::vector<std::tuple<std::string, std::string, int>>& edges,
                 const std::map<std::string, int>& labels) {
  Bfmn g;
  std::set<std::string> name_set(nodes.begin(), nodes.end());
  for (const auto& [u, v, w] : edges) {
    name_set.insert(u);
    name_set.insert(v);
    (void)w;
  }
  g.names_.assign(name_set.begin(), name_set.end());

  std::map<std::string, int> index;
  for (int i = 0; i < static_cast<int>(g.names_.size()); ++i) index[g.names_[i]] = i;

  for (const auto& [u, v, w] : edges) {
    if (u == v) continue;  // self-loops dropped
    if (w < 1) throw ArgumentError("edge weight must be >= 1");
    int a = index[u];
    int b = index[v];
    if (a > b) std::swap(a, b);
    auto [it, inserted] = g.weight_of_.try_emplace({a, b}, w);
    if (!inserted) it->second = std::max(it->second, w);
  }

  g.adjacency_.assign(g.names_.size(), {});
  for (const auto& [pair, w] : g.weight_of_) {
    g.edges_.push_back({pair.first, pair.second, w});
    g.adjacency_[pair.first].push_back(pair.second);
    g.adjacency_[pair.second].push_back(pair.first);
  }
  for (auto& neigh : g.adjacency_) std::sort(neigh.begin(), neigh.end());

  g.labels_.assign(g.names_.size(), 0);
  for (const auto& [name, lab] : labels) {
    auto it = index.find(name);
    if (it != index.end()) g.labels_[it->second] = lab;
  }
  return g;
}

bool Bfmn::has_node(const std::string& name) const {
  return std::binary_search(names_.begin(), names_.end(), name);
}

int Bfmn::index_of(const std::string& name) const {
  auto it = std::lower_bound(names_.begin(), names_.end(), name);
  if (it == names_.end() || *it != name) {
    throw ArgumentError("unknown node: '" + name + "'");
  }
  return static_cast<int>(it - names_.begin());
}

int Bfmn::degree(const std::string& name) const { return degree_at(index_of(name)); }

int Bfmn::edge_weight(const std::string& u, const std::string& v) const {
  return edge_weight_at(index_of(u), index_of(v));
}

int Bfmn::edge_weight_at(int u, int v) const {
  if (u > v) std::swap(u, v);
  auto it = weight_of_.find({u, v});
  return it == weight_of_.end() ? 0 : it->second;
}

std::vector<int> Bfmn::bfs_distances(int source) const {
  std::vector<int> dist(names_.size(), -1);
  dist[source] = 0;
  std::deque<int> queue{source};
  while (!queue.empty()) {
    int u = queue.front();
    queue.pop_front();
    for (int v : adjacency_[u]) {
      if (dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

std::map<std::string, int> Bfmn::shortest_path_lengths(const std::string& source) const {
  const std::vector<int> dist = bfs_distances(index_of(source));
  std::map<std::string, int> out;
  for (size_t i = 0; i < dist.size(); ++i) {
    if (dist[i] >= 0) out[names_[i]] = dist[i];
  }
  return out;
}

double Bfmn::closeness_at(int index, ClosenessVariant variant) const {
  const std::vector<int> dist = bfs_distances(index);
  long long sum = 0;
  int reachable = 0;  // includes the node itself
  for (int d : dist) {
    if (d >= 0) {
      sum += d;
      ++reachable;
    }
  }
  if (reachable <= 1 || sum == 0) return 0.0;
  const double n = static_cast<double>(node_count());
  const double r = static_cast<double>(reachable);
  if (variant == ClosenessVariant::literal) {
    return (n - 1.0) / static_cast<double>(sum);
  }
  const double base = (r - 1.0) / static_cast<double>(sum);
  return base * ((r - 1.0) / (n - 1.0));
}

double Bfmn::closeness(const std::string& name, ClosenessVariant variant) const {
  return closeness_at(index_of(name), variant);
}

double Bfmn::local_clustering_at(int index) const {
  const auto& neigh = adjacency_[index];
  const int k = static_cast<int>(neigh.size());
  if (k < 2) return 0.0;
  int links = 0;
  for (int i = 0; i < k; ++i) {
    for (int j = i + 1; j < k; ++j) {
      if (weight_of_.count({std::min(neigh[i], neigh[j]), std::max(neigh[i], neigh[j])})) {
        ++links;
      }
    }
  }
  return 2.0 * links / (static_cast<double>(k) * (k - 1));
}

double Bfmn::local_clustering(const std::string& name) const {
  return local_clustering_at(index_of(name));
}

std::string Bfmn::to_edge_csv() const {
  std::ostringstream os;
  os << "source,target,weight\n";
  for (const auto& e : edges_) {
    os << names_[e.a] << ',' << names_[e.b] << ',' << e.weight << '\n';
  }
  return os.str();
}

std::string Bfmn::to_json() const {
  nlohmann::ordered_json doc;
  doc["nodes"] = nlohmann::ordered_json::array();
  for (int i = 0; i < node_count(); ++i) {
    doc["nodes"].push_back({{"name", names_[i]}, {"valence", labels_[i]}});
  }
  doc["edges"] = nlohmann::ordered_json::array();
  for (const auto& e : edges_) {
    doc["edges"].push_back({{"source", names_[e.a]}, {"target", names_[e.b]}, {"weight", e.weight}});
  }
  return doc.dump(2) + "\n";
}

Bfmn build_individual_network(const ParticipantRecord& record) {
  std::vector<std::string> nodes;
  std::vector<std::tuple<std::string, std::string, int>> edges;
  for (const auto& [cue, responses] : record.cue_responses) {
    nodes.push_back(cue);
    for (const auto& resp : responses) {
      nodes.push_back(resp);
      if (resp != cue) edges.emplace_back(cue, resp, 1);
    }
  }
  return Bfmn::build(nodes, edges, individual_labels(record));
}

}  // namespace fmn
