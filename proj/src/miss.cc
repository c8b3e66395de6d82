#include "d2d/miss.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <fmt/core.h>

#include "d2d/channel.h"

namespace d2d {

MisScope ParseMisScope(const std::string& text) {
  if (text == "group") return MisScope::kGroup;
  if (text == "global") return MisScope::kGlobal;
  throw std::invalid_argument(fmt::format("unknown mis_scope '{}'", text));
}

std::string ToString(MisScope scope) { return scope == MisScope::kGroup ? "group" : "global"; }

void MissConfig::Validate() const {
  if (rounds_l && *rounds_l < 1) throw std::invalid_argument("miss: rounds_l must be >= 1");
  if (!(conflict_threshold_m > 0.0)) {
    throw std::invalid_argument("miss: conflict_threshold_m must be > 0");
  }
  if (beta && !(*beta > 0.0 && std::isfinite(*beta))) {
    throw std::invalid_argument("miss: beta must be > 0");
  }
}

namespace {

std::optional<PriceSolution> TrySolve(const StackelbergInstance& inst, std::int64_t* calls) {
  if (calls) ++*calls;
  try {
    return Solve(inst);
  } catch (const InfeasiblePricing&) {
    return std::nullopt;
  }
}

std::vector<ReuserPower> Zip(std::span<const int> reusers, std::span<const double> powers) {
  std::vector<ReuserPower> out;
  out.reserve(reusers.size());
  for (size_t i = 0; i < reusers.size(); ++i) out.push_back({reusers[i], powers[i]});
  return out;
}

void InsertSorted(std::vector<int>& list, int x) {
  list.insert(std::lower_bound(list.begin(), list.end(), x), x);
}

void EraseValue(std::vector<int>& list, int x) {
  auto it = std::find(list.begin(), list.end(), x);
  if (it != list.end()) list.erase(it);
}

}  // namespace

double SheerRate(const Scenario& scenario, int cue, int due, double p_star) {
  const Cue& c = scenario.cues[cue];
  const DuePair& d = scenario.dues[due];
  const GainTable& g = scenario.gains;
  const double cue_term =
      std::log2(1.0 + c.tx_power_w * g.cue_to_bs(cue) / (c.noise_power_w + p_star * g.due_tx_to_bs(due)));
  const double due_term = std::log2(
      1.0 + p_star * g.due_tx_to_due_rx(due, due) / (d.noise_power_w + c.tx_power_w * g.cue_to_due_rx(cue, due)));
  return c.bandwidth_hz * cue_term + c.bandwidth_hz * due_term;
}

namespace {

// Sheer-rate choice with pricing supplied by the caller, so a run can reuse
// empty-set prices that never change.
template <typename PriceFn>
std::optional<SheerRateChoice> ChooseBySheerRate(const Scenario& scenario, int due,
                                                 std::span<const int> candidates, PriceFn&& price) {
  const double cue_threshold = scenario.radio.CueSinrThresholdLinear();
  std::optional<SheerRateChoice> best;
  double max_value = 0.0;
  for (int c : candidates) {
    const std::optional<PriceSolution> sol = price(c);
    if (!sol) continue;
    const ReuserPower self{due, sol->p_star};
    if (CueSinr(scenario.cues[c], std::span(&self, 1), scenario.gains) < cue_threshold) continue;
    const double r = SheerRate(scenario, c, due, sol->p_star);
    if (r > max_value) {
      max_value = r;
      best = SheerRateChoice{c, sol->p_star, r};
    }
  }
  return best;
}

}  // namespace

std::optional<SheerRateChoice> WhoGivesMaxSheerRate(const Scenario& scenario, int due,
                                                    std::span<const int> candidates, double beta,
                                                    std::int64_t* solver_calls) {
  return ChooseBySheerRate(scenario, due, candidates, [&](int c) {
    return TrySolve(MakeInstance(scenario, c, due, {}, {}, beta), solver_calls);
  });
}

double PairwiseThroughput(const Scenario& scenario, int cue, int due, double p_star,
                          std::span<const int> reusers, std::span<const double> powers) {
  std::vector<ReuserPower> members = Zip(reusers, powers);
  const Cue& c = scenario.cues[cue];
  const double due_sinr = DueSinr(scenario.dues[due], p_star, c, members, scenario.gains);
  members.push_back({due, p_star});
  const double cue_sinr = CueSinr(c, members, scenario.gains);
  if (cue_sinr < scenario.radio.CueSinrThresholdLinear() ||
      due_sinr < scenario.radio.DueSinrThresholdLinear()) {
    return 0.0;
  }
  return SpectralEfficiency(cue_sinr) + SpectralEfficiency(due_sinr);
}

std::optional<PairwiseChoice> MaxPairwiseThru(const Scenario& scenario,
                                              std::span<const int> proper, int cue,
                                              std::span<const int> reusers,
                                              std::span<const double> powers, double beta,
                                              std::int64_t* solver_calls) {
  std::optional<PairwiseChoice> best;
  double max_value = 0.0;
  for (int d : proper) {
    auto sol = TrySolve(MakeInstance(scenario, cue, d, reusers, powers, beta), solver_calls);
    if (!sol) continue;
    const double value = PairwiseThroughput(scenario, cue, d, sol->p_star, reusers, powers);
    if (value > max_value) {
      max_value = value;
      best = PairwiseChoice{d, *sol, value};
    }
  }
  return best;
}

namespace {

// Mutable state of one MISS run. Confined to RunMiss.
class MissRun {
 public:
  MissRun(const Scenario& scenario, const MissConfig& config)
      : scenario_(scenario),
        config_(config),
        beta_(config.beta.value_or(scenario.radio.beta)),
        cue_threshold_(scenario.radio.CueSinrThresholdLinear()),
        due_threshold_(scenario.radio.DueSinrThresholdLinear()),
        assignment_(scenario.num_cues(), scenario.num_dues()),
        group_of_(scenario.num_dues(), -1),
        lone_price_(static_cast<size_t>(scenario.num_cues()) * scenario.num_dues()) {
    trace_.num_cues = scenario.num_cues();
    trace_.num_dues = scenario.num_dues();
  }

  MissResult Run() {
    Initialize();
    for (iteration_ = 0; HasUnmarked(); ++iteration_) {
      const int c = LargestUnmarkedGroup();
      Record(TraceEventKind::kSelect, c, -1);
      std::vector<int> proper = ProperDues(c);
      TraceEvent ev = Event(TraceEventKind::kProper, c, -1);
      ev.members = proper;
      trace_.events.push_back(std::move(ev));

      BestFit(c, proper);
      EnforceFeasibility(c);
      Rehome(c);

      const std::vector<int>& granted = assignment_.reuse_sets[c];
      graph_ = graph_.RemoveVertices(granted);
      assignment_.marked[c] = true;
      TraceEvent mark = Event(TraceEventKind::kMark, c, -1);
      mark.members = granted;
      trace_.events.push_back(std::move(mark));
    }
    return {std::move(assignment_), std::move(trace_)};
  }

 private:
  void Initialize() {
    std::vector<int> all(scenario_.num_cues());
    for (int c = 0; c < scenario_.num_cues(); ++c) all[c] = c;
    for (int d = 0; d < scenario_.num_dues(); ++d) {
      auto choice = ChooseBySheerRate(scenario_, d, all, [&](int c) { return LonePrice(c, d); });
      if (choice) {
        Join(d, choice->cue, choice->rate);
      } else {
        Record(TraceEventKind::kReject, -1, d);
      }
    }
    graph_ = BuildConflictGraph(scenario_.dues, config_.conflict_threshold_m, config_.pair_distance);
  }

  bool HasUnmarked() const {
    return std::find(assignment_.marked.begin(), assignment_.marked.end(), false) !=
           assignment_.marked.end();
  }

  int LargestUnmarkedGroup() const {
    int best = -1;
    for (int c = 0; c < scenario_.num_cues(); ++c) {
      if (assignment_.marked[c]) continue;
      if (best < 0 || assignment_.groups[c].size() > assignment_.groups[best].size()) best = c;
    }
    return best;
  }

  std::vector<int> ProperDues(int c) const {
    if (config_.mis_scope == MisScope::kGlobal) return MaximalIndependentSet(graph_);
    return MaximalIndependentSet(graph_.Induced(assignment_.groups[c]));
  }

  // Price of d alone on c's RB. Depends on nothing but the scenario, so
  // re-homing reuses the value computed at initialization.
  const std::optional<PriceSolution>& LonePrice(int c, int d) {
    auto& slot = lone_price_[static_cast<size_t>(c) * scenario_.num_dues() + d];
    if (!slot.known) {
      slot.price = TrySolve(MakeInstance(scenario_, c, d, {}, {}, beta_), &trace_.solver_calls);
      slot.known = true;
    }
    return slot.price;
  }

  void Join(int d, int c, double rate) {
    if (group_of_[d] >= 0) EraseValue(assignment_.groups[group_of_[d]], d);
    group_of_[d] = c;
    assignment_.groups[c].push_back(d);
    TraceEvent ev = Event(TraceEventKind::kJoin, c, d);
    ev.value = rate;
    trace_.events.push_back(std::move(ev));
  }

  void Reject(int d) {
    if (group_of_[d] >= 0) EraseValue(assignment_.groups[group_of_[d]], d);
    group_of_[d] = -1;
    if (graph_.HasVertex(d)) graph_ = graph_.RemoveVertices(std::span(&d, 1));
    Record(TraceEventKind::kReject, -1, d);
  }

  // Current reuse set of c with powers, excluding `skip`.
  void Members(int c, int skip, std::vector<int>& ids, std::vector<double>& powers) const {
    ids.clear();
    powers.clear();
    for (int d : assignment_.reuse_sets[c]) {
      if (d == skip) continue;
      ids.push_back(d);
      powers.push_back(*assignment_.due_power_w[d]);
    }
  }

  void BestFit(int c, std::vector<int>& proper) {
    const bool auto_rounds = !config_.rounds_l.has_value();
    const int rounds = config_.rounds_l.value_or(
        static_cast<int>(proper.size() + assignment_.reuse_sets[c].size()));
    std::vector<int> ids;
    std::vector<double> powers;
    for (round_ = 0; round_ < rounds; ++round_) {
      bool changed = false;

      // Re-check every granted DUE against the others, oldest first.
      const std::vector<int> snapshot = assignment_.reuse_sets[c];
      for (int d : snapshot) {
        Members(c, d, ids, powers);
        auto sol = TrySolve(MakeInstance(scenario_, c, d, ids, powers, beta_), &trace_.solver_calls);
        const std::vector<ReuserPower> others = Zip(ids, powers);
        if (!sol || DueSinr(scenario_.dues[d], sol->p_star, scenario_.cues[c], others,
                            scenario_.gains) < due_threshold_) {
          assignment_.Revoke(c, d);
          InsertSorted(proper, d);
          Record(TraceEventKind::kEvict, c, d);
          changed = true;
        } else if (sol->p_star != *assignment_.due_power_w[d]) {
          assignment_.due_power_w[d] = sol->p_star;
          RecordPrice(TraceEventKind::kReprice, c, d, *sol, std::nan(""));
        }
      }

      Members(c, -1, ids, powers);
      auto choice = MaxPairwiseThru(scenario_, proper, c, ids, powers, beta_, &trace_.solver_calls);
      if (choice) {
        EraseValue(proper, choice->due);
        if (group_of_[choice->due] != c) {
          // Only reachable with a global independent set.
          if (group_of_[choice->due] >= 0) {
            EraseValue(assignment_.groups[group_of_[choice->due]], choice->due);
          }
          group_of_[choice->due] = c;
          assignment_.groups[c].push_back(choice->due);
        }
        assignment_.Grant(c, choice->due, choice->price.p_star);
        RecordPrice(TraceEventKind::kAdmit, c, choice->due, choice->price, choice->value);
        changed = true;
      }
      if (auto_rounds && !changed) break;
    }
    round_ = -1;
  }

  // The last admission is never followed by a re-check, and re-pricing can
  // raise powers, so close the group only once every constraint holds as the
  // channel model evaluates it. Each pass drops the worst offender.
  void EnforceFeasibility(int c) {
    const Cue& cue = scenario_.cues[c];
    std::vector<ReuserPower> members;
    std::vector<ReuserPower> others;
    while (!assignment_.reuse_sets[c].empty()) {
      members.clear();
      for (int d : assignment_.reuse_sets[c]) members.push_back({d, *assignment_.due_power_w[d]});

      int victim = -1;
      if (CueSinr(cue, members, scenario_.gains) < cue_threshold_) {
        double worst = -1.0;
        for (const auto& m : members) {
          const double interference = m.power_w * scenario_.gains.due_tx_to_bs(m.due);
          if (interference >= worst) {
            worst = interference;
            victim = m.due;
          }
        }
      } else {
        double worst_margin = 1.0;
        for (const auto& self : members) {
          others.clear();
          for (const auto& o : members) {
            if (o.due != self.due) others.push_back(o);
          }
          const double margin =
              DueSinr(scenario_.dues[self.due], self.power_w, cue, others, scenario_.gains) /
              due_threshold_;
          if (margin < worst_margin) {
            worst_margin = margin;
            victim = self.due;
          }
        }
      }
      if (victim < 0) return;
      assignment_.Revoke(c, victim);
      Record(TraceEventKind::kAuditEvict, c, victim);
    }
  }

  void Rehome(int c) {
    std::vector<int> leftovers;
    for (int d : assignment_.groups[c]) {
      const auto& granted = assignment_.reuse_sets[c];
      if (std::find(granted.begin(), granted.end(), d) == granted.end()) leftovers.push_back(d);
    }
    std::sort(leftovers.begin(), leftovers.end());
    std::vector<int> targets;
    for (int u = 0; u < scenario_.num_cues(); ++u) {
      if (u != c && !assignment_.marked[u]) targets.push_back(u);
    }
    for (int d : leftovers) {
      auto choice = ChooseBySheerRate(scenario_, d, targets, [&](int c) { return LonePrice(c, d); });
      if (choice) {
        Join(d, choice->cue, choice->rate);
      } else {
        Reject(d);
      }
    }
  }

  TraceEvent Event(TraceEventKind kind, int c, int d) const {
    TraceEvent ev;
    ev.iteration = iteration_;
    ev.round = round_;
    ev.kind = kind;
    ev.cue = c;
    ev.due = d;
    return ev;
  }

  void Record(TraceEventKind kind, int c, int d) { trace_.events.push_back(Event(kind, c, d)); }

  void RecordPrice(TraceEventKind kind, int c, int d, const PriceSolution& sol, double value) {
    TraceEvent ev = Event(kind, c, d);
    ev.alpha = sol.alpha_star;
    ev.power = sol.p_star;
    ev.u_c = sol.u_c;
    ev.u_d = sol.u_d;
    ev.value = value;
    trace_.events.push_back(std::move(ev));
  }

  const Scenario& scenario_;
  const MissConfig& config_;
  const double beta_;
  const double cue_threshold_;
  const double due_threshold_;
  Assignment assignment_;
  std::vector<int> group_of_;
  struct CachedPrice {
    bool known = false;
    std::optional<PriceSolution> price;
  };
  std::vector<CachedPrice> lone_price_;  // [c * N + d]
  ConflictGraph graph_;
  MissTrace trace_;
  int iteration_ = -1;
  int round_ = -1;
};

}  // namespace

MissResult RunMiss(const Scenario& scenario, const MissConfig& config) {
  config.Validate();
  return MissRun(scenario, config).Run();
}

}  // namespace d2d
