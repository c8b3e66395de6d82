#ifndef D2D_GRAPH_H_
#define D2D_GRAPH_H_

#include <iosfwd>
#include <map>
#include <span>
#include <vector>

#include "d2d/model.h"

namespace d2d {

// How "the distance between two DUE pairs" is measured.
enum class PairDistance {
  kMinEndpoint,  // closest of the four Tx/Rx endpoint combinations
  kCentroid,     // between the midpoints of the two pairs
};

double PairDistanceM(const DuePair& a, const DuePair& b, PairDistance rule);

// Undirected simple graph keyed by DUE id.
class ConflictGraph {
 public:
  ConflictGraph() = default;
  explicit ConflictGraph(std::span<const int> vertices);

  void AddVertex(int v);
  // Throws std::invalid_argument on a self-loop or an unknown endpoint.
  void AddEdge(int u, int v);

  std::vector<int> Vertices() const;  // ascending
  bool HasVertex(int v) const { return adjacency_.count(v) != 0; }
  bool Adjacent(int u, int v) const;
  const std::vector<int>& Neighbors(int v) const;  // ascending
  int Degree(int v) const { return static_cast<int>(Neighbors(v).size()); }
  int VertexCount() const { return static_cast<int>(adjacency_.size()); }
  int EdgeCount() const;
  bool Empty() const { return adjacency_.empty(); }

  // Subgraph induced by the members of `keep` that are vertices here.
  ConflictGraph Induced(std::span<const int> keep) const;

  // Induced subgraph on the remaining vertices. Throws std::domain_error if an
  // id is not a vertex.
  ConflictGraph RemoveVertices(std::span<const int> ids) const;

  // One "u v" line per edge with u < v, in ascending order.
  void WriteEdgeList(std::ostream& os) const;

  friend bool operator==(const ConflictGraph&, const ConflictGraph&) = default;

 private:
  std::map<int, std::vector<int>> adjacency_;
};

// Edge between two pairs iff their distance is strictly below threshold_m.
ConflictGraph BuildConflictGraph(std::span<const DuePair> dues, double threshold_m,
                                 PairDistance rule = PairDistance::kMinEndpoint);

// Greedy minimum-degree heuristic: take the vertex of smallest residual
// degree (lowest id on ties), drop it and its neighbours, repeat. O(n^2)
// on the residual graph.
std::vector<int> MaximalIndependentSet(const ConflictGraph& graph);

bool IsIndependent(const ConflictGraph& graph, std::span<const int> set);
bool IsMaximalIndependent(const ConflictGraph& graph, std::span<const int> set);

}  // namespace d2d

#endif  // D2D_GRAPH_H_
