#include <cmath>
#include <sstream>
#include <vector>

#include "doctest.h"

#include "d2d/channel.h"
#include "d2d/miss.h"
#include "d2d/rng.h"
#include "d2d/scenario.h"
#include "d2d/stackelberg.h"
#include "test_util.h"

using namespace d2d;

namespace {

Scenario RandomScenario(int m, std::uint64_t seed) {
  Rng rng(seed);
  return GenerateScenario(m, 4, RadioParams{}, rng);
}

Scenario TwoCueScenario(double second_bandwidth_factor) {
  const RadioParams radio;
  Cue a = MakeCue(0, {100.0, 0.0}, radio);
  Cue b = MakeCue(1, {-100.0, 0.0}, radio);
  b.bandwidth_hz *= second_bandwidth_factor;
  return MakeScenario(radio, {a, b}, {MakeDuePair(0, {0.0, 200.0}, {0.0, 215.0}, radio)});
}

}  // namespace

TEST_SUITE("miss") {

TEST_CASE("config validation and scope names") {
  MissConfig c;
  CHECK_NOTHROW(c.Validate());
  c.rounds_l = 0;
  CHECK_THROWS(c.Validate());
  CHECK(ParseMisScope(ToString(MisScope::kGlobal)) == MisScope::kGlobal);
  CHECK_THROWS(ParseMisScope("everything"));
}

TEST_CASE("sheer rate") {
  const Scenario s = d2d::testing::LineScenario({100.0, 0.0}, {{200.0, 0.0}});
  const Cue& c = s.cues[0];
  const double cue_alone = ShannonRate(c.bandwidth_hz, CueSinr(c, {}, s.gains));
  CHECK(SheerRate(s, 0, 0, 0.0) == doctest::Approx(cue_alone));

  const double p = 0.003;
  const std::vector<ReuserPower> reuser{{0, p}};
  const double expected = ShannonRate(c.bandwidth_hz, CueSinr(c, reuser, s.gains)) +
                          ShannonRate(c.bandwidth_hz, DueSinr(s.dues[0], p, c, {}, s.gains));
  CHECK(SheerRate(s, 0, 0, p) == doctest::Approx(expected).epsilon(1e-13));
}

TEST_CASE("who gives max sheer rate") {
  SUBCASE("single feasible CUE") {
    const Scenario s = d2d::testing::LineScenario({100.0, 0.0}, {{200.0, 0.0}});
    const std::vector<int> all{0};
    std::int64_t calls = 0;
    const auto choice = WhoGivesMaxSheerRate(s, 0, all, 1.0, &calls);
    REQUIRE(choice.has_value());
    CHECK(choice->cue == 0);
    CHECK(calls == 1);
    CHECK(choice->rate == doctest::Approx(SheerRate(s, 0, 0, choice->p_star)));
  }
  SUBCASE("DUE on top of the BS with a raised power floor") {
    RadioParams radio;
    radio.due_power_min_w = 0.01;
    const Scenario s = d2d::testing::LineScenario({400.0, 0.0}, {{1.0, 0.0}}, radio);
    const std::vector<int> all{0};
    CHECK_FALSE(WhoGivesMaxSheerRate(s, 0, all, 1.0).has_value());
  }
  SUBCASE("double bandwidth wins under symmetric gains") {
    const Scenario s = TwoCueScenario(2.0);
    CHECK(s.gains.cue_to_bs(0) == doctest::Approx(s.gains.cue_to_bs(1)));
    CHECK(s.gains.cue_to_due_rx(0, 0) == doctest::Approx(s.gains.cue_to_due_rx(1, 0)));
    const std::vector<int> all{0, 1};
    const auto choice = WhoGivesMaxSheerRate(s, 0, all, 1.0);
    REQUIRE(choice.has_value());
    CHECK(choice->cue == 1);
    CHECK(choice->rate == doctest::Approx(2.0 * SheerRate(s, 0, 0, choice->p_star)).epsilon(1e-9));
  }
  SUBCASE("empty candidate list") {
    const Scenario s = TwoCueScenario(1.0);
    CHECK_FALSE(WhoGivesMaxSheerRate(s, 0, {}, 1.0).has_value());
  }
}

TEST_CASE("max pairwise throughput matches brute force") {
  const Scenario s = d2d::testing::LineScenario(
      {150.0, 50.0}, {{200.0, 0.0}, {-250.0, 30.0}, {0.0, -300.0}, {320.0, 200.0}, {-100.0, -380.0}, {60.0, 420.0}});
  const std::vector<int> proper{1, 2, 3, 4, 5};
  const std::vector<int> reusers{0};
  const std::vector<double> powers{0.004};

  double best = 0.0;
  int best_due = -1;
  for (int d : proper) {
    const PriceSolution sol = Solve(MakeInstance(s, 0, d, reusers, powers, 1.0));
    const std::vector<ReuserPower> others{{0, 0.004}};
    std::vector<ReuserPower> all = others;
    all.push_back({d, sol.p_star});
    const bool ok = CueSinr(s.cues[0], all, s.gains) >= 7.0 &&
                    DueSinr(s.dues[d], sol.p_star, s.cues[0], others, s.gains) >= 3.0;
    const double lambda =
        ok ? SpectralEfficiency(CueSinr(s.cues[0], all, s.gains)) +
                 SpectralEfficiency(DueSinr(s.dues[d], sol.p_star, s.cues[0], others, s.gains))
           : 0.0;
    CHECK(PairwiseThroughput(s, 0, d, sol.p_star, reusers, powers) == doctest::Approx(lambda));
    if (lambda > best) {
      best = lambda;
      best_due = d;
    }
  }
  const auto choice = MaxPairwiseThru(s, proper, 0, reusers, powers, 1.0);
  if (best_due < 0) {
    CHECK_FALSE(choice.has_value());
  } else {
    REQUIRE(choice.has_value());
    CHECK(choice->due == best_due);
    CHECK(choice->value == doctest::Approx(best));
  }
  CHECK_FALSE(MaxPairwiseThru(s, {}, 0, reusers, powers, 1.0).has_value());
}

TEST_CASE("pairwise throughput is zero when the CUE threshold breaks") {
  const Scenario s = d2d::testing::LineScenario({400.0, 0.0}, {{2.0, 0.0}});
  CHECK(PairwiseThroughput(s, 0, 0, 0.2, {}, {}) == 0.0);
}

TEST_CASE("no DUE pairs") {
  Rng rng(1);
  const Scenario s = GenerateScenario(5, 0, RadioParams{}, rng);
  const MissResult r = RunMiss(s);
  CHECK(r.assignment.GrantedCount() == 0);
  for (const auto& set : r.assignment.reuse_sets) CHECK(set.empty());
  for (bool m : r.assignment.marked) CHECK(m);
}

TEST_CASE("single CUE and single pair") {
  RadioParams radio;
  radio.due_sinr_threshold = 1.0;
  const Scenario s = d2d::testing::LineScenario({100.0, 0.0}, {{-300.0, -300.0}}, radio);
  const MissResult r = RunMiss(s);
  REQUIRE(r.assignment.reuse_sets[0] == std::vector<int>{0});
  const PriceSolution sol = Solve(MakeInstance(s, 0, 0, {}, {}, 1.0));
  CHECK(*r.assignment.due_power_w[0] == sol.p_star);
  CHECK(AuditFeasibility(s, r.assignment).empty());
}

TEST_CASE("random scenarios pass the audit and replay exactly") {
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    const Scenario s = RandomScenario(12, seed);
    const Scenario before = s;
    const MissResult r = RunMiss(s);
    CHECK(s == before);
    CHECK(AuditFeasibility(s, r.assignment).empty());
    CHECK_FALSE(r.assignment.CheckStructure(s.radio.due_power_min_w, s.radio.due_power_max_w).has_value());
    CHECK(r.trace.Replay() == r.assignment);

    std::stringstream io;
    r.trace.Write(io);
    const MissTrace back = MissTrace::Read(io);
    CHECK(back == r.trace);
    CHECK(back.Replay() == r.assignment);

    for (int c = 0; c < s.num_cues(); ++c) {
      for (int d : r.assignment.reuse_sets[c]) {
        const auto& g = r.assignment.groups[c];
        CHECK(std::find(g.begin(), g.end(), d) != g.end());
      }
    }
  }
}

TEST_CASE("admitted DUEs come from an independent proper set") {
  const Scenario s = RandomScenario(15, 99);
  const MissResult r = RunMiss(s);
  const ConflictGraph full = BuildConflictGraph(s.dues, 25.0);
  std::vector<int> proper;
  for (const auto& ev : r.trace.events) {
    if (ev.kind == TraceEventKind::kProper) {
      proper = ev.members;
      CHECK(IsIndependent(full, proper));
    }
    if (ev.kind == TraceEventKind::kAdmit) {
      CHECK(std::find(proper.begin(), proper.end(), ev.due) != proper.end());
    }
  }
}

TEST_CASE("determinism") {
  const Scenario s = RandomScenario(20, 5);
  const MissResult a = RunMiss(s);
  const MissResult b = RunMiss(s);
  CHECK(a.assignment == b.assignment);
  CHECK(a.trace == b.trace);
}

TEST_CASE("main loop and solver-call bound") {
  const Scenario s = RandomScenario(15, 3);
  MissConfig config;
  config.rounds_l = 3;
  const MissResult r = RunMiss(s, config);
  int selects = 0;
  for (const auto& ev : r.trace.events) {
    if (ev.kind == TraceEventKind::kSelect) ++selects;
    if (ev.round >= 0) CHECK(ev.round < 3);
  }
  CHECK(selects == s.num_cues());
  const std::int64_t m = s.num_cues();
  const std::int64_t n = s.num_dues();
  CHECK(r.trace.solver_calls <= m * n * (3 + 1) + n * m);
}

TEST_CASE("trace reader rejects malformed input") {
  std::istringstream bad_header("not-a-trace\n");
  CHECK_THROWS(MissTrace::Read(bad_header));
  std::istringstream bad_field("miss-trace v1 cues=1 dues=1 solver_calls=0\niter=0 round=0 event=admit cue=x\n");
  CHECK_THROWS(MissTrace::Read(bad_field));
  std::istringstream unknown("miss-trace v1 cues=1 dues=1 solver_calls=0\niter=0 event=teleport\n");
  CHECK_THROWS(MissTrace::Read(unknown));
}

}  // TEST_SUITE("miss")
