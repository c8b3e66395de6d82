#ifndef D2D_MISS_H_
#define D2D_MISS_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "d2d/graph.h"
#include "d2d/model.h"
#include "d2d/stackelberg.h"

namespace d2d {

// Which vertices the proper-DUE independent set is drawn from.
enum class MisScope {
  kGroup,   // subgraph induced by the selected group's members
  kGlobal,  // whole remaining conflict graph
};

MisScope ParseMisScope(const std::string& text);
std::string ToString(MisScope scope);

struct MissConfig {
  // Best-fit rounds per group. nullopt ("auto") runs up to |proper| + |granted|
  // rounds and stops early once a round changes nothing.
  std::optional<int> rounds_l;
  double conflict_threshold_m = 25.0;
  PairDistance pair_distance = PairDistance::kMinEndpoint;
  // Overrides Scenario::radio.beta when set.
  std::optional<double> beta;
  MisScope mis_scope = MisScope::kGroup;

  void Validate() const;
};

enum class TraceEventKind {
  kJoin,        // DUE joins a group (initial grouping or re-homing)
  kReject,      // no group will take the DUE
  kSelect,      // group chosen for this iteration
  kProper,      // independent set of proper DUEs for the group
  kReprice,     // granted DUE re-priced, power updated
  kEvict,       // granted DUE failed its SINR check and returns to the proper set
  kAdmit,       // best pairwise-throughput DUE granted
  kAuditEvict,  // removed by the end-of-group feasibility guard
  kMark,        // group closed; members lists the final reuse set
};

std::string ToString(TraceEventKind kind);
TraceEventKind ParseTraceEventKind(const std::string& text);

struct TraceEvent {
  int iteration = -1;  // -1 during initialization
  int round = -1;
  TraceEventKind kind = TraceEventKind::kJoin;
  int cue = -1;
  int due = -1;
  // NaN where not applicable.
  double alpha = 0.0;
  double power = 0.0;
  double u_c = 0.0;
  double u_d = 0.0;
  double value = 0.0;
  std::vector<int> members;

  TraceEvent();
  friend bool operator==(const TraceEvent& a, const TraceEvent& b);
};

struct MissTrace {
  int num_cues = 0;
  int num_dues = 0;
  std::int64_t solver_calls = 0;
  std::vector<TraceEvent> events;

  // Line-oriented text: a header line, then one "key=value ..." record per event.
  void Write(std::ostream& os) const;
  // Throws std::runtime_error on malformed input.
  static MissTrace Read(std::istream& is);

  // Applies the events to an empty assignment.
  Assignment Replay() const;

  friend bool operator==(const MissTrace&, const MissTrace&) = default;
};

struct MissResult {
  Assignment assignment;
  MissTrace trace;
};

// r(c, d): combined CUE and DUE throughput in bit/s with d as the only reuser.
double SheerRate(const Scenario& scenario, int cue, int due, double p_star);

struct SheerRateChoice {
  int cue = -1;
  double p_star = 0.0;
  double rate = 0.0;
};

// The CUE in `candidates` giving d the highest sheer rate while keeping its own
// SINR threshold, pricing d against an empty reuse set. nullopt if none
// qualifies. `solver_calls` is incremented per pricing call when non-null.
std::optional<SheerRateChoice> WhoGivesMaxSheerRate(const Scenario& scenario, int due,
                                                    std::span<const int> candidates, double beta,
                                                    std::int64_t* solver_calls = nullptr);

// Pairwise throughput in bit/s/Hz of d joining `cue` at p_star next to
// `reusers`; zero when either SINR threshold fails.
double PairwiseThroughput(const Scenario& scenario, int cue, int due, double p_star,
                          std::span<const int> reusers, std::span<const double> powers);

struct PairwiseChoice {
  int due = -1;
  PriceSolution price;
  double value = 0.0;
};

// Best DUE of `proper` to admit to `cue` given the current reuse set and its
// powers (aligned). nullopt when every pairwise throughput is zero.
std::optional<PairwiseChoice> MaxPairwiseThru(const Scenario& scenario,
                                              std::span<const int> proper, int cue,
                                              std::span<const int> reusers,
                                              std::span<const double> powers, double beta,
                                              std::int64_t* solver_calls = nullptr);

MissResult RunMiss(const Scenario& scenario, const MissConfig& config = {});

}  // namespace d2d

#endif  // D2D_MISS_H_
