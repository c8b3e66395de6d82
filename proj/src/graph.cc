#include "d2d/graph.h"

#include <algorithm>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <unordered_set>

#include <fmt/core.h>

namespace d2d {

double PairDistanceM(const DuePair& a, const DuePair& b, PairDistance rule) {
  if (rule == PairDistance::kCentroid) {
    Point ca{(a.tx_position.x + a.rx_position.x) / 2, (a.tx_position.y + a.rx_position.y) / 2};
    Point cb{(b.tx_position.x + b.rx_position.x) / 2, (b.tx_position.y + b.rx_position.y) / 2};
    return Distance(ca, cb);
  }
  return std::min({Distance(a.tx_position, b.tx_position), Distance(a.tx_position, b.rx_position),
                   Distance(a.rx_position, b.tx_position), Distance(a.rx_position, b.rx_position)});
}

ConflictGraph::ConflictGraph(std::span<const int> vertices) {
  for (int v : vertices) AddVertex(v);
}

void ConflictGraph::AddVertex(int v) { adjacency_.try_emplace(v); }

void ConflictGraph::AddEdge(int u, int v) {
  if (u == v) throw std::invalid_argument(fmt::format("conflict graph: self-loop on {}", u));
  auto iu = adjacency_.find(u);
  auto iv = adjacency_.find(v);
  if (iu == adjacency_.end() || iv == adjacency_.end()) {
    throw std::invalid_argument(fmt::format("conflict graph: edge ({}, {}) has unknown endpoint", u, v));
  }
  auto insert_sorted = [](std::vector<int>& list, int x) {
    auto it = std::lower_bound(list.begin(), list.end(), x);
    if (it == list.end() || *it != x) list.insert(it, x);
  };
  insert_sorted(iu->second, v);
  insert_sorted(iv->second, u);
}

std::vector<int> ConflictGraph::Vertices() const {
  std::vector<int> out;
  out.reserve(adjacency_.size());
  for (const auto& [v, _] : adjacency_) out.push_back(v);
  return out;
}

bool ConflictGraph::Adjacent(int u, int v) const {
  auto it = adjacency_.find(u);
  if (it == adjacency_.end()) return false;
  return std::binary_search(it->second.begin(), it->second.end(), v);
}

const std::vector<int>& ConflictGraph::Neighbors(int v) const {
  auto it = adjacency_.find(v);
  if (it == adjacency_.end()) throw std::out_of_range(fmt::format("conflict graph: no vertex {}", v));
  return it->second;
}

int ConflictGraph::EdgeCount() const {
  size_t twice = 0;
  for (const auto& [_, nbrs] : adjacency_) twice += nbrs.size();
  return static_cast<int>(twice / 2);
}

ConflictGraph ConflictGraph::Induced(std::span<const int> keep) const {
  std::unordered_set<int> kept;
  for (int v : keep) {
    if (HasVertex(v)) kept.insert(v);
  }
  ConflictGraph out;
  for (const auto& [v, nbrs] : adjacency_) {
    if (!kept.count(v)) continue;
    auto& list = out.adjacency_[v];
    for (int u : nbrs) {
      if (kept.count(u)) list.push_back(u);
    }
  }
  return out;
}

ConflictGraph ConflictGraph::RemoveVertices(std::span<const int> ids) const {
  std::unordered_set<int> drop;
  for (int v : ids) {
    if (!HasVertex(v)) {
      throw std::domain_error(fmt::format("conflict graph: cannot remove unknown vertex {}", v));
    }
    drop.insert(v);
  }
  ConflictGraph out;
  for (const auto& [v, nbrs] : adjacency_) {
    if (drop.count(v)) continue;
    auto& list = out.adjacency_[v];
    for (int u : nbrs) {
      if (!drop.count(u)) list.push_back(u);
    }
  }
  return out;
}

void ConflictGraph::WriteEdgeList(std::ostream& os) const {
  for (const auto& [u, nbrs] : adjacency_) {
    for (int v : nbrs) {
      if (u < v) os << u << ' ' << v << '\n';
    }
  }
}

ConflictGraph BuildConflictGraph(std::span<const DuePair> dues, double threshold_m,
                                 PairDistance rule) {
  ConflictGraph graph;
  for (const auto& d : dues) graph.AddVertex(d.id);
  for (size_t i = 0; i < dues.size(); ++i) {
    for (size_t j = i + 1; j < dues.size(); ++j) {
      if (PairDistanceM(dues[i], dues[j], rule) < threshold_m) graph.AddEdge(dues[i].id, dues[j].id);
    }
  }
  return graph;
}

std::vector<int> MaximalIndependentSet(const ConflictGraph& graph) {
  const std::vector<int> vertices = graph.Vertices();
  const size_t n = vertices.size();
  // Dense local indexing; vertices are ascending so index order is id order.
  std::vector<std::vector<size_t>> nbrs(n);
  for (size_t i = 0; i < n; ++i) {
    for (int u : graph.Neighbors(vertices[i])) {
      nbrs[i].push_back(std::lower_bound(vertices.begin(), vertices.end(), u) - vertices.begin());
    }
  }
  std::vector<bool> alive(n, true);
  std::vector<int> degree(n);
  for (size_t i = 0; i < n; ++i) degree[i] = static_cast<int>(nbrs[i].size());

  std::vector<int> chosen;
  size_t remaining = n;
  auto kill = [&](size_t v) {
    alive[v] = false;
    --remaining;
    for (size_t u : nbrs[v]) {
      if (alive[u]) --degree[u];
    }
  };
  while (remaining > 0) {
    size_t pick = n;
    int best = std::numeric_limits<int>::max();
    for (size_t i = 0; i < n; ++i) {
      if (alive[i] && degree[i] < best) {
        best = degree[i];
        pick = i;
      }
    }
    chosen.push_back(vertices[pick]);
    kill(pick);
    for (size_t u : nbrs[pick]) {
      if (alive[u]) kill(u);
    }
  }
  std::sort(chosen.begin(), chosen.end());
  return chosen;
}

bool IsIndependent(const ConflictGraph& graph, std::span<const int> set) {
  for (size_t i = 0; i < set.size(); ++i) {
    if (!graph.HasVertex(set[i])) return false;
    for (size_t j = i + 1; j < set.size(); ++j) {
      if (set[i] == set[j] || graph.Adjacent(set[i], set[j])) return false;
    }
  }
  return true;
}

bool IsMaximalIndependent(const ConflictGraph& graph, std::span<const int> set) {
  if (!IsIndependent(graph, set)) return false;
  std::unordered_set<int> in(set.begin(), set.end());
  for (int v : graph.Vertices()) {
    if (in.count(v)) continue;
    bool covered = false;
    for (int u : graph.Neighbors(v)) {
      if (in.count(u)) {
        covered = true;
        break;
      }
    }
    if (!covered) return false;
  }
  return true;
}

}  // namespace d2d
