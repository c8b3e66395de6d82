#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "doctest.h"

#include "d2d/oracles/pricing_oracle.h"
#include "d2d/stackelberg.h"
#include "test_util.h"

using namespace d2d;
using d2d::testing::Near;

namespace {

StackelbergInstance InteriorInstance() {
  StackelbergInstance s;
  s.p_c = 0.2;
  s.g_cb = 1e-10;
  s.g_db = 1e-12;
  s.g_cd = 1e-12;
  s.g_dd = 1e-7;
  s.phi = 1e-15;
  s.omega = 1e-15;
  s.beta = 1.0;
  s.p_min = 0.0;
  s.p_max = 0.2;
  return s;
}

// dU_d/dp by central differences.
double FollowerGradient(const StackelbergInstance& s, double alpha, double p) {
  const double h = 1e-5 * p;
  return (DueUtility(s, alpha, p + h) - DueUtility(s, alpha, p - h)) / (2.0 * h);
}

}  // namespace

TEST_SUITE("stackelberg") {

TEST_CASE("utilities at the trivial points") {
  const StackelbergInstance s = InteriorInstance();
  CHECK(DueUtility(s, 1e15, 0.0) == 0.0);
  CHECK(DueUtility(s, 0.0, 0.02) > DueUtility(s, 0.0, 0.01));
  CHECK(CueUtility(s, 1e15, 0.0) == doctest::Approx(std::log2(1.0 + s.A() / s.omega)));
  CHECK(CueUtility(s, 0.0, 0.01) == doctest::Approx(std::log2(1.0 + s.A() / (0.01 * s.g_db + s.omega))));
  CHECK(CueUtility(s, 2e15, 0.01) > CueUtility(s, 1e15, 0.01));
}

TEST_CASE("follower clamps and rejects non-positive prices") {
  const StackelbergInstance s = InteriorInstance();
  CHECK(FollowerBestPower(s, 1e40) == s.p_min);
  CHECK(FollowerBestPower(s, 1e-10) == s.p_max);
  CHECK_THROWS_AS(FollowerBestPower(s, 0.0), std::domain_error);
  CHECK_THROWS_AS(FollowerBestPower(s, -1.0), std::domain_error);
  CHECK_THROWS_AS(FollowerBestPower(s, NAN), std::domain_error);
}

TEST_CASE("follower response is non-increasing in the price") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 200; ++i) {
    const auto s = oracles::RandomInstance(rng, static_cast<LeaderCase>(i % kNumLeaderCases));
    const PriceInterval iv = FeasiblePriceInterval(s);
    const double lo = iv.alpha_min * 0.5;
    const double hi = std::isnan(iv.alpha_max) ? iv.alpha_min * 1e3 : iv.alpha_max * 2.0;
    double prev_clamped = INFINITY;
    double prev_raw = INFINITY;
    for (int k = 0; k <= 50; ++k) {
      const double alpha = lo * std::pow(hi / lo, k / 50.0);
      const double raw = UnclampedFollowerPower(s, alpha);
      const double clamped = FollowerBestPower(s, alpha);
      CHECK(raw <= prev_raw);
      CHECK(clamped <= prev_clamped);
      prev_raw = raw;
      prev_clamped = clamped;
    }
  }
}

TEST_CASE("interior optimum matches an independent high-precision search") {
  const StackelbergInstance s = InteriorInstance();
  CHECK(ClassifyLeaderCase(s) == LeaderCase::kCPositive);
  const PriceSolution sol = Solve(s);
  CHECK(sol.origin == PriceOrigin::kAlpha4);
  CHECK(Near(sol.alpha_star, 31496150722181102.0, 1e-9));
  CHECK(Near(sol.p_star, 4.3795439960412314e-5, 1e-9));
  CHECK(Near(sol.u_c, 15.605336445078788, 1e-12));
  CHECK(sol.u_d == doctest::Approx(DueUtility(s, sol.alpha_star, sol.p_star)));
}

TEST_CASE("C = 0 yields the closed-form price") {
  StackelbergInstance s = InteriorInstance();
  s.omega = s.g_db * s.FollowerFloor();
  CHECK(ClassifyLeaderCase(s) == LeaderCase::kCZero);
  const auto cands = CandidatePrices(s);
  const double expected = s.B() / (s.beta * s.omega) - s.B() / s.A();
  CHECK(Near(expected, 7.1775865467567751e+17, 1e-12));
  const bool listed = std::any_of(cands.begin(), cands.end(), [&](const CandidatePrice& c) {
    return c.origin == PriceOrigin::kAlpha1 && Near(c.alpha, expected, 1e-12);
  });
  CHECK(listed);
  const PriceSolution sol = Solve(s);
  CHECK(sol.origin == PriceOrigin::kAlpha1);
  CHECK(Near(sol.u_c, 23.246301307798184, 1e-12));
  CHECK(Near(sol.p_star, 2.0200502030150454e-13, 1e-6));
}

TEST_CASE("candidate list always carries the endpoints") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 500; ++i) {
    const auto s = oracles::RandomInstance(rng, static_cast<LeaderCase>(i % kNumLeaderCases));
    const auto cands = CandidatePrices(s);
    const PriceInterval iv = FeasiblePriceInterval(s);
    CHECK(std::count_if(cands.begin(), cands.end(),
                        [](const CandidatePrice& c) { return c.origin == PriceOrigin::kAlphaMin; }) == 1);
    for (const auto& c : cands) {
      CHECK(c.alpha > 0.0);
      CHECK(c.alpha >= iv.alpha_min);
      if (!std::isnan(iv.alpha_max)) CHECK(c.alpha <= iv.alpha_max);
    }
  }
}

TEST_CASE("C > 0 with a falling leader utility at the lower end picks alpha_min") {
  std::mt19937_64 rng(5);
  int found = 0;
  for (int i = 0; i < 20000 && found < 20; ++i) {
    const auto s = oracles::RandomInstance(rng, LeaderCase::kCPositive);
    const double a = FeasiblePriceInterval(s).alpha_min;
    const double h = 1e-7 * a;
    const double slope = (CueUtility(s, a + h, FollowerBestPower(s, a + h)) -
                          CueUtility(s, a, FollowerBestPower(s, a))) / h;
    if (!(slope <= 0.0)) continue;
    const auto oracle = oracles::GridSearchLeader(s, 4000);
    const PriceSolution sol = Solve(s);
    // Either the endpoint wins outright or an interior point ties it.
    CHECK(sol.u_c >= oracle.best_u_c - 1e-9 * std::abs(oracle.best_u_c));
    if (oracle.best_alpha == oracle.alpha_lo) CHECK(sol.origin == PriceOrigin::kAlphaMin);
    ++found;
  }
  CHECK(found > 0);
}

TEST_CASE("both-negative case settles on an endpoint") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 500; ++i) {
    const auto s = oracles::RandomInstance(rng, LeaderCase::kCNegativeSumNegative);
    const PriceSolution sol = Solve(s);
    CHECK((sol.origin == PriceOrigin::kAlphaMin || sol.origin == PriceOrigin::kAlphaMax));
  }
}

TEST_CASE("random instances respect the power box and are deterministic") {
  std::mt19937_64 rng(20240611);
  for (int i = 0; i < 100000; ++i) {
    const auto s = oracles::RandomInstance(rng, static_cast<LeaderCase>(i % kNumLeaderCases));
    const PriceSolution a = Solve(s);
    REQUIRE(a.p_star >= s.p_min);
    REQUIRE(a.p_star <= s.p_max);
    REQUIRE(a.alpha_star > 0.0);
    REQUIRE(std::isfinite(a.alpha_star));
    if (i % 1000 == 0) REQUIRE(Solve(s) == a);
  }
}

TEST_CASE("follower stationarity and concavity on random instances") {
  std::mt19937_64 rng(77);
  int interior = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto s = oracles::RandomInstance(rng, static_cast<LeaderCase>(i % kNumLeaderCases));
    const PriceSolution sol = Solve(s);
    if (sol.p_star > s.p_min && sol.p_star < s.p_max) {
      ++interior;
      const double scale = sol.alpha_star * s.g_db;
      CHECK(std::abs(FollowerGradient(s, sol.alpha_star, sol.p_star)) <= 1e-6 * scale);
    }
    const double p = std::max(sol.p_star, 1e-3 * s.p_max);
    const double h = 1e-3 * p;
    const double second = DueUtility(s, sol.alpha_star, p + h) - 2.0 * DueUtility(s, sol.alpha_star, p) +
                          DueUtility(s, sol.alpha_star, p - h);
    CHECK(second <= 1e-9);
  }
  CHECK(interior > 100);
}

TEST_CASE("oracle suite on a small sample") {
  const auto report = oracles::RunOracleSuite(500, 1234, 1e-6, 2000);
  CHECK(report.failures == 0);
  for (int k = 0; k < kNumLeaderCases; ++k) CHECK(report.case_counts[k] == 100);
}

TEST_CASE("instance assembly from a scenario excludes nothing but the pricing DUE") {
  const Scenario sc = d2d::testing::LineScenario({100.0, 0.0}, {{200.0, 0.0}, {0.0, 300.0}});
  const std::vector<int> others{1};
  const std::vector<double> powers{0.05};
  const StackelbergInstance s = MakeInstance(sc, 0, 0, others, powers, 1.5);
  CHECK(s.beta == 1.5);
  CHECK(s.phi == doctest::Approx(sc.dues[0].noise_power_w + 0.05 * sc.gains.due_tx_to_due_rx(1, 0)));
  CHECK(s.omega == doctest::Approx(sc.cues[0].noise_power_w + 0.05 * sc.gains.due_tx_to_bs(1)));
  CHECK(s.g_dd == sc.gains.due_tx_to_due_rx(0, 0));
  CHECK_NOTHROW(s.Validate());
}

}  // TEST_SUITE("stackelberg")
