#ifndef D2D_STACKELBERG_H_
#define D2D_STACKELBERG_H_

#include <numbers>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "d2d/model.h"

namespace d2d {

// Closed-form leader/follower pricing for one DUE d entering CUE c's RB while
// a set of reusers is already fixed at known powers.
//
// The CUE (leader) posts a price alpha on the interference d causes at the BS;
// the DUE (follower) replies with the power that maximizes
//   U_d = log2(1 + P G_dd / (P_c G_cd + phi)) - alpha P G_dB,
// and the leader picks alpha to maximize
//   U_c = log2(1 + P_c G_cB / (P G_dB + omega)) + beta alpha P G_dB.
// phi and omega already contain noise plus the fixed reusers' interference.
struct StackelbergInstance {
  double p_c = 0.0;
  double g_cb = 0.0;
  double g_db = 0.0;
  double g_cd = 0.0;
  double g_dd = 0.0;
  double phi = 0.0;    // interference + noise at d's receiver, W
  double omega = 0.0;  // interference + noise at the BS on c's RB, W
  double beta = 1.0;
  double p_min = 0.0;
  double p_max = 0.0;

  static constexpr double kB = std::numbers::log2e;  // 1 / ln 2

  double A() const { return p_c * g_cb; }
  double B() const { return kB; }
  // omega - (G_dB / G_dd)(P_c G_cd + phi)
  double C() const { return omega - g_db * FollowerFloor(); }
  double D() const;
  // (P_c G_cd + phi) / G_dd: the power below which d's SINR is < 1.
  double FollowerFloor() const { return (p_c * g_cd + phi) / g_dd; }

  // Throws std::invalid_argument if any field is out of range.
  void Validate() const;

  friend bool operator==(const StackelbergInstance&, const StackelbergInstance&) = default;
};

enum class PriceOrigin { kAlpha1, kAlpha2, kAlpha3, kAlpha4, kAlphaMin, kAlphaMax };
inline constexpr int kNumPriceOrigins = 6;
std::string ToString(PriceOrigin origin);

// Sign pattern of C and A + C, which decides where interior stationary
// points of the leader utility can sit.
enum class LeaderCase {
  kCZero,                // C = 0
  kCNegativeSumZero,     // C < 0, A + C = 0
  kCPositive,            // C > 0
  kCNegativeSumPositive, // C < 0, A + C > 0
  kCNegativeSumNegative, // C < 0, A + C < 0
};
inline constexpr int kNumLeaderCases = 5;
std::string ToString(LeaderCase leader_case);

// Relative tolerance for treating C or A + C as exactly zero.
inline constexpr double kLeaderCaseTolerance = 1e-12;

LeaderCase ClassifyLeaderCase(const StackelbergInstance& inst);

struct CandidatePrice {
  double alpha = 0.0;
  PriceOrigin origin = PriceOrigin::kAlphaMin;
};

struct PriceSolution {
  double alpha_star = 0.0;
  double p_star = 0.0;
  double u_c = 0.0;
  double u_d = 0.0;
  PriceOrigin origin = PriceOrigin::kAlphaMin;
  LeaderCase leader_case = LeaderCase::kCPositive;

  friend bool operator==(const PriceSolution&, const PriceSolution&) = default;
};

class InfeasiblePricing : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

double DueUtility(const StackelbergInstance& inst, double alpha, double p_d);
double CueUtility(const StackelbergInstance& inst, double alpha, double p_d);

// Stationary point of U_d in P_d, before clamping.
double UnclampedFollowerPower(const StackelbergInstance& inst, double alpha);

// Follower best response clamped to [p_min, p_max]. Throws std::domain_error
// if alpha is not a positive finite number.
double FollowerBestPower(const StackelbergInstance& inst, double alpha);

// Price interval [alpha_min, alpha_max] on which the unclamped follower power
// sweeps [p_max, p_min]. Either end is NaN when its formula is degenerate.
struct PriceInterval {
  double alpha_min = 0.0;
  double alpha_max = 0.0;
};
PriceInterval FeasiblePriceInterval(const StackelbergInstance& inst);

// Every candidate price worth evaluating, filtered to positive finite values
// inside the feasible interval. Throws InfeasiblePricing if nothing survives.
std::vector<CandidatePrice> CandidatePrices(const StackelbergInstance& inst);

// O(1): best candidate by leader utility; ties go to the lower price.
PriceSolution Solve(const StackelbergInstance& inst);

// Pricing instance for `due` joining `cue` while the DUEs in `reusers`
// transmit at `powers[i]` (aligned with reusers). `due` must not be in
// `reusers`.
StackelbergInstance MakeInstance(const Scenario& scenario, int cue, int due,
                                 std::span<const int> reusers, std::span<const double> powers,
                                 double beta);

}  // namespace d2d

#endif  // D2D_STACKELBERG_H_
