#include "d2d/oracles/pricing_oracle.h"

#include <algorithm>
#include <cmath>

#include <fmt/core.h>

namespace d2d::oracles {

namespace {

constexpr double kLn2 = 0.693147180559945309417232121458176568;

// Follower reply from the first-order condition of its concave utility.
double Reply(const StackelbergInstance& s, double alpha) {
  const double floor = (s.p_c * s.g_cd + s.phi) / s.g_dd;
  const double p = 1.0 / (alpha * s.g_db * kLn2) - floor;
  return std::min(std::max(p, s.p_min), s.p_max);
}

double Leader(const StackelbergInstance& s, double alpha, double p) {
  const double sinr = s.p_c * s.g_cb / (p * s.g_db + s.omega);
  return std::log(1.0 + sinr) / kLn2 + s.beta * alpha * p * s.g_db;
}

double LogUniform(std::mt19937_64& rng, double lo_exp, double hi_exp) {
  std::uniform_real_distribution<double> u(lo_exp, hi_exp);
  return std::pow(10.0, u(rng));
}

}  // namespace

GridOracleResult GridSearchLeader(const StackelbergInstance& s, int points) {
  // Prices at which the unclamped reply equals p_max and p_min.
  const double floor = (s.p_c * s.g_cd + s.phi) / s.g_dd;
  const double lo = 1.0 / (kLn2 * s.g_db * (s.p_max + floor));
  double hi = 1.0 / (kLn2 * s.g_db * (s.p_min + floor));
  if (!std::isfinite(hi) || hi <= lo) hi = 1e6 * lo;

  GridOracleResult out;
  out.alpha_lo = lo;
  out.alpha_hi = hi;
  out.best_u_c = -INFINITY;
  const double log_ratio = std::log(hi / lo);
  for (int k = 0; k < points; ++k) {
    const double alpha = k == points - 1 ? hi : lo * std::exp(log_ratio * k / (points - 1));
    const double u = Leader(s, alpha, Reply(s, alpha));
    if (u > out.best_u_c) {
      out.best_u_c = u;
      out.best_alpha = alpha;
    }
  }
  return out;
}

StackelbergInstance RandomInstance(std::mt19937_64& rng, LeaderCase target) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (;;) {
    StackelbergInstance s;
    s.p_c = LogUniform(rng, -2, 0);
    s.g_cb = LogUniform(rng, -13, -7);
    s.g_cd = LogUniform(rng, -14, -8);
    s.g_dd = LogUniform(rng, -9, -5);
    const double noise_c = LogUniform(rng, -16, -14);
    const double noise_d = LogUniform(rng, -16, -14);
    s.phi = noise_d * (1.0 + (unit(rng) < 0.5 ? 0.0 : LogUniform(rng, -2, 2)));
    s.omega = noise_c * (1.0 + (unit(rng) < 0.5 ? 0.0 : LogUniform(rng, -2, 2)));
    s.beta = LogUniform(rng, -1, 1);
    s.p_max = LogUniform(rng, -2, -0.5);
    s.p_min = unit(rng) < 0.5 ? 0.0 : s.p_max * LogUniform(rng, -4, -1);

    const double floor = s.FollowerFloor();
    const double a = s.A();
    switch (target) {
      case LeaderCase::kCZero:
        s.g_db = LogUniform(rng, -13, -8);
        s.omega = s.g_db * floor;
        break;
      case LeaderCase::kCPositive:
        s.g_db = LogUniform(rng, -13, -8);
        s.omega = s.g_db * floor * (1.0 + LogUniform(rng, -3, 3));
        break;
      case LeaderCase::kCNegativeSumZero:
        s.g_db = (s.omega + a) / floor;
        break;
      case LeaderCase::kCNegativeSumPositive:
        s.g_db = (s.omega + a * std::uniform_real_distribution<double>(1e-3, 0.999)(rng)) / floor;
        break;
      case LeaderCase::kCNegativeSumNegative:
        s.g_db = (s.omega + a * (1.0 + LogUniform(rng, -3, 3))) / floor;
        break;
    }
    if (std::isfinite(s.g_db) && s.g_db > 0.0 && ClassifyLeaderCase(s) == target) return s;
  }
}

OracleSuiteReport RunOracleSuite(int samples, std::uint64_t seed, double rel_tol, int grid_points) {
  OracleSuiteReport report;
  std::mt19937_64 rng(seed);
  for (int i = 0; i < samples; ++i) {
    const auto target = static_cast<LeaderCase>(i % kNumLeaderCases);
    const StackelbergInstance inst = RandomInstance(rng, target);
    ++report.samples;
    ++report.case_counts[static_cast<int>(target)];
    for (const auto& cand : CandidatePrices(inst)) ++report.emitted_counts[static_cast<int>(cand.origin)];

    const PriceSolution sol = Solve(inst);
    ++report.winner_counts[static_cast<int>(sol.origin)];
    const GridOracleResult oracle = GridSearchLeader(inst, grid_points);
    const double gap = (oracle.best_u_c - sol.u_c) / std::abs(oracle.best_u_c);
    report.worst_relative_gap = std::max(report.worst_relative_gap, gap);
    const bool box_ok = sol.p_star >= inst.p_min && sol.p_star <= inst.p_max;
    if (!(gap <= rel_tol) || !box_ok) {
      if (report.failures == 0) {
        report.first_failure = fmt::format(
            "sample {} ({}): solver u_c={:.17g} at alpha={:.6g} ({}), oracle u_c={:.17g} at alpha={:.6g}",
            i, ToString(target), sol.u_c, sol.alpha_star, ToString(sol.origin), oracle.best_u_c,
            oracle.best_alpha);
      }
      ++report.failures;
    }
  }
  return report;
}

}  // namespace d2d::oracles
