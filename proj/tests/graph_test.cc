#include <random>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "d2d/graph.h"
#include "d2d/oracles/mis_oracle.h"
#include "d2d/scenario.h"

using namespace d2d;

namespace {

std::vector<DuePair> PairsOnLine(int n, double spacing) {
  const RadioParams radio;
  std::vector<DuePair> out;
  // Pairs stand vertically so the closest endpoints are the spacing apart.
  for (int i = 0; i < n; ++i) {
    const double x = i * spacing;
    out.push_back(MakeDuePair(i, {x, 0.0}, {x, radio.due_pair_distance_m}, radio));
  }
  return out;
}

ConflictGraph Cycle(int n) {
  std::vector<int> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  ConflictGraph g(v);
  for (int i = 0; i < n; ++i) g.AddEdge(i, (i + 1) % n);
  return g;
}

}  // namespace

TEST_SUITE("graph") {

TEST_CASE("far pairs have no edge, co-located pairs do") {
  const RadioParams radio;
  std::vector<DuePair> far{MakeDuePair(0, {0, 0}, {0, 15}, radio), MakeDuePair(1, {1000, 0}, {1000, 15}, radio)};
  CHECK(BuildConflictGraph(far, 25.0).EdgeCount() == 0);
  std::vector<DuePair> same{MakeDuePair(0, {0, 0}, {0, 15}, radio), MakeDuePair(1, {0, 0}, {15, 0}, radio)};
  CHECK(BuildConflictGraph(same, 25.0).Adjacent(0, 1));
}

TEST_CASE("pairs on a line at half the threshold form a path") {
  const auto dues = PairsOnLine(6, 12.5);
  const ConflictGraph g = BuildConflictGraph(dues, 25.0);
  CHECK(g.VertexCount() == 6);
  CHECK(g.EdgeCount() == 5);
  for (int i = 0; i + 1 < 6; ++i) CHECK(g.Adjacent(i, i + 1));
  CHECK_FALSE(g.Adjacent(0, 2));  // exactly 25 m: not strictly below
}

TEST_CASE("pair distance rules") {
  const RadioParams radio;
  const DuePair a = MakeDuePair(0, {0, 0}, {15, 0}, radio);
  const DuePair b = MakeDuePair(1, {35, 0}, {50, 0}, radio);
  CHECK(PairDistanceM(a, b, PairDistance::kMinEndpoint) == doctest::Approx(20.0));
  CHECK(PairDistanceM(a, b, PairDistance::kCentroid) == doctest::Approx(35.0));
  std::vector<DuePair> both{a, b};
  CHECK(BuildConflictGraph(both, 25.0, PairDistance::kMinEndpoint).EdgeCount() == 1);
  CHECK(BuildConflictGraph(both, 25.0, PairDistance::kCentroid).EdgeCount() == 0);
}

TEST_CASE("edge validation") {
  std::vector<int> v{0, 1};
  ConflictGraph g(v);
  CHECK_THROWS_AS(g.AddEdge(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(g.AddEdge(0, 7), std::invalid_argument);
  g.AddEdge(1, 0);
  g.AddEdge(0, 1);
  CHECK(g.EdgeCount() == 1);
  CHECK(g.Neighbors(0) == std::vector<int>{1});
}

TEST_CASE("independent sets on small families") {
  std::vector<int> v{3, 5, 9};
  const ConflictGraph edgeless(v);
  CHECK(MaximalIndependentSet(edgeless) == v);

  ConflictGraph complete(v);
  complete.AddEdge(3, 5);
  complete.AddEdge(3, 9);
  complete.AddEdge(5, 9);
  CHECK(MaximalIndependentSet(complete) == std::vector<int>{3});

  const ConflictGraph c5 = Cycle(5);
  const auto mis = MaximalIndependentSet(c5);
  CHECK(mis.size() == 2);
  CHECK(IsMaximalIndependent(c5, mis));
  CHECK(oracles::MaximumIndependentSetSize(c5) == 2);

  // Path 0-1-2-3-4: endpoints have the lowest degree.
  ConflictGraph path(std::vector<int>{0, 1, 2, 3, 4});
  for (int i = 0; i < 4; ++i) path.AddEdge(i, i + 1);
  CHECK(MaximalIndependentSet(path) == std::vector<int>{0, 2, 4});

  CHECK(MaximalIndependentSet(ConflictGraph{}).empty());
}

TEST_CASE("independence and maximality scans") {
  const ConflictGraph c5 = Cycle(5);
  const std::vector<int> bad{0, 1};
  CHECK_FALSE(IsIndependent(c5, bad));
  const std::vector<int> small{0};
  CHECK(IsIndependent(c5, small));
  CHECK_FALSE(IsMaximalIndependent(c5, small));
}

TEST_CASE("vertex removal") {
  ConflictGraph g(std::vector<int>{0, 1, 2});
  g.AddEdge(0, 1);
  const std::vector<int> none;
  CHECK(g.RemoveVertices(none) == g);
  const std::vector<int> all{0, 1, 2};
  CHECK(g.RemoveVertices(all).Empty());
  const std::vector<int> one{1};
  const ConflictGraph h = g.RemoveVertices(one);
  CHECK(h.VertexCount() == 2);
  CHECK(h.EdgeCount() == 0);
  const std::vector<int> unknown{4};
  CHECK_THROWS_AS(g.RemoveVertices(unknown), std::domain_error);
}

TEST_CASE("edge list dump") {
  ConflictGraph g(std::vector<int>{0, 1, 2});
  g.AddEdge(2, 0);
  g.AddEdge(1, 2);
  std::ostringstream os;
  g.WriteEdgeList(os);
  CHECK(os.str() == "0 2\n1 2\n");
}

TEST_CASE("random geometric graphs") {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 200; ++i) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const ConflictGraph g = oracles::RandomGeometricGraph(rng, n, 100.0, 30.0);
    const auto mis = MaximalIndependentSet(g);
    CHECK_FALSE(mis.empty());
    CHECK(IsMaximalIndependent(g, mis));
    CHECK(2 * static_cast<int>(mis.size()) >= oracles::MaximumIndependentSetSize(g));
    CHECK(MaximalIndependentSet(g) == mis);
  }
}

}  // TEST_SUITE("graph")
