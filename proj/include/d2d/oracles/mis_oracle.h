#ifndef D2D_ORACLES_MIS_ORACLE_H_
#define D2D_ORACLES_MIS_ORACLE_H_

#include <random>

#include "d2d/graph.h"

namespace d2d::oracles {

// Exact maximum independent set size by subset enumeration. Small graphs only
// (throws std::invalid_argument above 24 vertices).
int MaximumIndependentSetSize(const ConflictGraph& graph);

// n random points in a square of side `side`, edge iff distance < radius.
ConflictGraph RandomGeometricGraph(std::mt19937_64& rng, int n, double side, double radius);

}  // namespace d2d::oracles

#endif  // D2D_ORACLES_MIS_ORACLE_H_
