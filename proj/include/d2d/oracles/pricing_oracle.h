#ifndef D2D_ORACLES_PRICING_ORACLE_H_
#define D2D_ORACLES_PRICING_ORACLE_H_

#include <cstdint>
#include <random>
#include <string>

#include "d2d/stackelberg.h"

namespace d2d::oracles {

// Brute-force reference for the leader problem: evaluates the leader utility
// on a log-spaced price grid with the follower's best response applied.
// Shares no code with the closed-form solver.
struct GridOracleResult {
  double best_u_c = 0.0;
  double best_alpha = 0.0;
  double alpha_lo = 0.0;
  double alpha_hi = 0.0;
};

GridOracleResult GridSearchLeader(const StackelbergInstance& inst, int points = 10000);

// Random instance whose (C, A + C) signs fall in the requested leader case.
// Boundary cases (C = 0, A + C = 0) are hit to rounding.
StackelbergInstance RandomInstance(std::mt19937_64& rng, LeaderCase target);

// Stratified oracle comparison over `samples` instances (round-robin over the
// five leader cases).
struct OracleSuiteReport {
  int samples = 0;
  int failures = 0;
  double worst_relative_gap = 0.0;  // max over samples of (oracle - solver) / |oracle|
  int case_counts[kNumLeaderCases] = {};
  int winner_counts[kNumPriceOrigins] = {};
  int emitted_counts[kNumPriceOrigins] = {};
  std::string first_failure;
};

OracleSuiteReport RunOracleSuite(int samples, std::uint64_t seed, double rel_tol = 1e-6,
                                 int grid_points = 10000);

}  // namespace d2d::oracles

#endif  // D2D_ORACLES_PRICING_ORACLE_H_
