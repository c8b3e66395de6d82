#include "d2d/stackelberg.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include <fmt/core.h>

namespace d2d {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// omega - C, computed without the cancellation of omega - C().
double OmegaMinusC(const StackelbergInstance& inst) { return inst.g_db * inst.FollowerFloor(); }

bool UsablePrice(double alpha) { return std::isfinite(alpha) && alpha > 0.0; }

}  // namespace

std::string ToString(PriceOrigin origin) {
  switch (origin) {
    case PriceOrigin::kAlpha1: return "alpha1";
    case PriceOrigin::kAlpha2: return "alpha2";
    case PriceOrigin::kAlpha3: return "alpha3";
    case PriceOrigin::kAlpha4: return "alpha4";
    case PriceOrigin::kAlphaMin: return "alpha_min";
    case PriceOrigin::kAlphaMax: return "alpha_max";
  }
  return "?";
}

std::string ToString(LeaderCase leader_case) {
  switch (leader_case) {
    case LeaderCase::kCZero: return "C=0";
    case LeaderCase::kCNegativeSumZero: return "C<0,A+C=0";
    case LeaderCase::kCPositive: return "C>0";
    case LeaderCase::kCNegativeSumPositive: return "C<0,A+C>0";
    case LeaderCase::kCNegativeSumNegative: return "C<0,A+C<0";
  }
  return "?";
}

double StackelbergInstance::D() const {
  const double a = A();
  const double c = C();
  return a * kB * kB * (a + 4.0 * c * (a + c) / (OmegaMinusC(*this) * beta));
}

void StackelbergInstance::Validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!positive(p_c)) throw std::invalid_argument("stackelberg: p_c must be > 0");
  if (!positive(g_cb) || !positive(g_db) || !positive(g_cd) || !positive(g_dd)) {
    throw std::invalid_argument("stackelberg: gains must be > 0");
  }
  if (!positive(phi) || !positive(omega)) {
    throw std::invalid_argument("stackelberg: phi and omega must be > 0");
  }
  if (!positive(beta)) throw std::invalid_argument("stackelberg: beta must be > 0");
  if (!(p_min >= 0.0) || !std::isfinite(p_max) || !(p_min < p_max)) {
    throw std::invalid_argument("stackelberg: need 0 <= p_min < p_max");
  }
}

LeaderCase ClassifyLeaderCase(const StackelbergInstance& inst) {
  const double a = inst.A();
  const double c = inst.C();
  const double scale = kLeaderCaseTolerance * std::max(a, inst.omega);
  if (std::abs(c) <= scale) return LeaderCase::kCZero;
  if (c > 0.0) return LeaderCase::kCPositive;
  const double sum = a + c;
  if (std::abs(sum) <= scale) return LeaderCase::kCNegativeSumZero;
  return sum > 0.0 ? LeaderCase::kCNegativeSumPositive : LeaderCase::kCNegativeSumNegative;
}

double DueUtility(const StackelbergInstance& inst, double alpha, double p_d) {
  return std::log2(1.0 + p_d * inst.g_dd / (inst.p_c * inst.g_cd + inst.phi)) -
         alpha * p_d * inst.g_db;
}

double CueUtility(const StackelbergInstance& inst, double alpha, double p_d) {
  return std::log2(1.0 + inst.A() / (p_d * inst.g_db + inst.omega)) +
         inst.beta * alpha * p_d * inst.g_db;
}

double UnclampedFollowerPower(const StackelbergInstance& inst, double alpha) {
  return inst.B() / (alpha * inst.g_db) - inst.FollowerFloor();
}

double FollowerBestPower(const StackelbergInstance& inst, double alpha) {
  if (!UsablePrice(alpha)) {
    throw std::domain_error(fmt::format("follower: price must be positive and finite, got {}", alpha));
  }
  return std::clamp(UnclampedFollowerPower(inst, alpha), inst.p_min, inst.p_max);
}

PriceInterval FeasiblePriceInterval(const StackelbergInstance& inst) {
  const double omc = OmegaMinusC(inst);
  auto endpoint = [&](double p) {
    const double denom = p * inst.g_db + omc;
    const double alpha = inst.B() / denom;
    return denom > 0.0 && UsablePrice(alpha) ? alpha : kNaN;
  };
  return {endpoint(inst.p_max), endpoint(inst.p_min)};
}

std::vector<CandidatePrice> CandidatePrices(const StackelbergInstance& inst) {
  const double a = inst.A();
  const double b = inst.B();
  const double c = inst.C();
  const double omc = OmegaMinusC(inst);
  const PriceInterval interval = FeasiblePriceInterval(inst);

  std::vector<CandidatePrice> interior;
  switch (ClassifyLeaderCase(inst)) {
    case LeaderCase::kCZero:
      interior.push_back({b / (inst.beta * inst.omega) - b / a, PriceOrigin::kAlpha1});
      break;
    case LeaderCase::kCNegativeSumZero:
      interior.push_back({b / a - b / ((a + inst.omega) * inst.beta), PriceOrigin::kAlpha2});
      break;
    case LeaderCase::kCPositive:
    case LeaderCase::kCNegativeSumPositive: {
      // Roots of C(A+C) x^2 + B(A+2C) x + B^2 - A B^2 / (beta (omega - C)).
      // With C < 0 < A + C the leading coefficient is negative and the
      // utility maximum sits at the "+sqrt(D)" root, so both roots go in.
      const double disc = inst.D();
      if (!(disc >= 0.0)) break;
      const double lead = c * (a + c);
      const double lin = b * (a + 2.0 * c);
      const double constant = b * b - a * b * b / (inst.beta * omc);
      const double s = std::sqrt(disc);
      double minus_root;  // (-lin - s) / (2 lead)
      double plus_root;   // (-lin + s) / (2 lead)
      if (lin >= 0.0) {
        const double q = -0.5 * (lin + s);
        minus_root = q / lead;
        plus_root = constant / q;
      } else {
        const double q = -0.5 * (lin - s);
        plus_root = q / lead;
        minus_root = constant / q;
      }
      interior.push_back({minus_root, PriceOrigin::kAlpha3});
      interior.push_back({plus_root, PriceOrigin::kAlpha4});
      break;
    }
    case LeaderCase::kCNegativeSumNegative:
      break;
  }

  std::vector<CandidatePrice> out;
  const bool have_min = !std::isnan(interval.alpha_min);
  const bool have_max = !std::isnan(interval.alpha_max);
  for (const auto& cand : interior) {
    if (!UsablePrice(cand.alpha)) continue;
    if (have_min && cand.alpha < interval.alpha_min) continue;
    if (have_max && cand.alpha > interval.alpha_max) continue;
    out.push_back(cand);
  }
  if (have_min) out.push_back({interval.alpha_min, PriceOrigin::kAlphaMin});
  if (have_max) out.push_back({interval.alpha_max, PriceOrigin::kAlphaMax});
  if (out.empty()) throw InfeasiblePricing("stackelberg: no admissible candidate price");
  return out;
}

PriceSolution Solve(const StackelbergInstance& inst) {
  PriceSolution best;
  bool have = false;
  for (const auto& cand : CandidatePrices(inst)) {
    // The endpoints map to the box bounds exactly; recomputing the reply
    // there leaves a rounding residue instead of p_min.
    double p;
    if (cand.origin == PriceOrigin::kAlphaMin) p = inst.p_max;
    else if (cand.origin == PriceOrigin::kAlphaMax) p = inst.p_min;
    else p = FollowerBestPower(inst, cand.alpha);
    const double u_c = CueUtility(inst, cand.alpha, p);
    if (!have || u_c > best.u_c || (u_c == best.u_c && cand.alpha < best.alpha_star)) {
      best.alpha_star = cand.alpha;
      best.p_star = p;
      best.u_c = u_c;
      best.origin = cand.origin;
      have = true;
    }
  }
  best.u_d = DueUtility(inst, best.alpha_star, best.p_star);
  best.leader_case = ClassifyLeaderCase(inst);
  return best;
}

StackelbergInstance MakeInstance(const Scenario& scenario, int cue, int due,
                                 std::span<const int> reusers, std::span<const double> powers,
                                 double beta) {
  const GainTable& g = scenario.gains;
  const Cue& c = scenario.cues[cue];
  const DuePair& d = scenario.dues[due];
  StackelbergInstance inst;
  inst.p_c = c.tx_power_w;
  inst.g_cb = g.cue_to_bs(cue);
  inst.g_db = g.due_tx_to_bs(due);
  inst.g_cd = g.cue_to_due_rx(cue, due);
  inst.g_dd = g.due_tx_to_due_rx(due, due);
  inst.phi = d.noise_power_w;
  inst.omega = c.noise_power_w;
  for (size_t i = 0; i < reusers.size(); ++i) {
    inst.phi += powers[i] * g.due_tx_to_due_rx(reusers[i], due);
    inst.omega += powers[i] * g.due_tx_to_bs(reusers[i]);
  }
  inst.beta = beta;
  inst.p_min = scenario.radio.due_power_min_w;
  inst.p_max = scenario.radio.due_power_max_w;
  return inst;
}

}  // namespace d2d
