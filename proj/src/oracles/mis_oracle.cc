#include "d2d/oracles/mis_oracle.h"

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace d2d::oracles {

int MaximumIndependentSetSize(const ConflictGraph& graph) {
  const std::vector<int> v = graph.Vertices();
  const int n = static_cast<int>(v.size());
  if (n > 24) throw std::invalid_argument("brute-force MIS limited to 24 vertices");
  std::vector<std::uint32_t> adj(n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (graph.Adjacent(v[i], v[j])) adj[i] |= 1u << j;
    }
  }
  int best = 0;
  for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
    const int size = std::popcount(mask);
    if (size <= best) continue;
    bool independent = true;
    for (int i = 0; i < n && independent; ++i) {
      if ((mask >> i & 1u) && (adj[i] & mask)) independent = false;
    }
    if (independent) best = size;
  }
  return best;
}

ConflictGraph RandomGeometricGraph(std::mt19937_64& rng, int n, double side, double radius) {
  std::uniform_real_distribution<double> u(0.0, side);
  std::vector<Point> pts(n);
  for (auto& p : pts) p = {u(rng), u(rng)};
  ConflictGraph g;
  for (int i = 0; i < n; ++i) g.AddVertex(i);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (Distance(pts[i], pts[j]) < radius) g.AddEdge(i, j);
    }
  }
  return g;
}

}  // namespace d2d::oracles
