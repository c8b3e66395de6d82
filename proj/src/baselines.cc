#include "d2d/baselines.h"

#include <algorithm>
#include <numeric>
#include <tuple>

#include "d2d/channel.h"
#include "d2d/graph.h"
#include "d2d/miss.h"
#include "d2d/stackelberg.h"

namespace d2d {

Assignment RunNoReuse(const Scenario& scenario) {
  Assignment a(scenario.num_cues(), scenario.num_dues());
  std::fill(a.marked.begin(), a.marked.end(), true);
  return a;
}

Assignment RunBaselineGreedyFixed(const Scenario& scenario) {
  const int m = scenario.num_cues();
  const int n = scenario.num_dues();
  const double power = scenario.radio.due_fixed_power_w;
  const double cue_t = scenario.radio.CueSinrThresholdLinear();
  const double due_t = scenario.radio.DueSinrThresholdLinear();
  Assignment a(m, n);

  const ConflictGraph graph = BuildConflictGraph(scenario.dues, scenario.radio.conflict_distance_m);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int x, int y) { return graph.Degree(x) < graph.Degree(y); });

  std::vector<ReuserPower> members;
  std::vector<ReuserPower> others;
  for (int d : order) {
    int best_cue = -1;
    double best_value = 0.0;
    for (int c = 0; c < m; ++c) {
      const Cue& cue = scenario.cues[c];
      members.clear();
      for (int e : a.reuse_sets[c]) members.push_back({e, *a.due_power_w[e]});
      members.push_back({d, power});
      const double cue_sinr = CueSinr(cue, members, scenario.gains);
      if (cue_sinr < cue_t) continue;
      bool ok = true;
      double own_sinr = 0.0;
      for (const auto& self : members) {
        others.clear();
        for (const auto& o : members) {
          if (o.due != self.due) others.push_back(o);
        }
        const double s = DueSinr(scenario.dues[self.due], self.power_w, cue, others, scenario.gains);
        if (s < due_t) {
          ok = false;
          break;
        }
        if (self.due == d) own_sinr = s;
      }
      if (!ok) continue;
      const double value = SpectralEfficiency(cue_sinr) + SpectralEfficiency(own_sinr);
      if (value > best_value) {
        best_value = value;
        best_cue = c;
      }
    }
    if (best_cue >= 0) a.Grant(best_cue, d, power);
  }
  for (int c = 0; c < m; ++c) {
    a.groups[c] = a.reuse_sets[c];
    a.marked[c] = true;
  }
  return a;
}

Assignment RunBaselineSingleShare(const Scenario& scenario, double beta) {
  const int m = scenario.num_cues();
  const int n = scenario.num_dues();
  struct Edge {
    double value;
    int cue;
    int due;
    double power;
  };
  std::vector<Edge> edges;
  for (int c = 0; c < m; ++c) {
    for (int d = 0; d < n; ++d) {
      PriceSolution sol;
      try {
        sol = Solve(MakeInstance(scenario, c, d, {}, {}, beta));
      } catch (const InfeasiblePricing&) {
        continue;
      }
      const double value = PairwiseThroughput(scenario, c, d, sol.p_star, {}, {});
      if (value > 0.0) edges.push_back({value, c, d, sol.p_star});
    }
  }
  std::sort(edges.begin(), edges.end(), [](const Edge& x, const Edge& y) {
    return std::tie(y.value, x.cue, x.due) < std::tie(x.value, y.cue, y.due);
  });

  Assignment a(m, n);
  std::vector<bool> cue_used(m, false);
  std::vector<bool> due_used(n, false);
  for (const auto& e : edges) {
    if (cue_used[e.cue] || due_used[e.due]) continue;
    cue_used[e.cue] = due_used[e.due] = true;
    a.Grant(e.cue, e.due, e.power);
  }
  for (int c = 0; c < m; ++c) {
    a.groups[c] = a.reuse_sets[c];
    a.marked[c] = true;
  }
  return a;
}

}  // namespace d2d
