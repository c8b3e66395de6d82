#ifndef D2D_BASELINES_H_
#define D2D_BASELINES_H_

#include "d2d/model.h"

namespace d2d {

// Comparison algorithms. These are simplified stand-ins written for this
// simulator, not reproductions of any published scheme.

// Every CUE keeps its RB to itself.
Assignment RunNoReuse(const Scenario& scenario);

// Fixed powers, no power control, multi-sharing. DUEs are visited in
// ascending conflict-graph degree (radio.conflict_distance_m); each joins the
// CUE giving the highest pairwise throughput among those where the CUE and
// every DUE on the RB keep their SINR thresholds at radio.due_fixed_power_w.
Assignment RunBaselineGreedyFixed(const Scenario& scenario);

// At most one DUE per CUE. Every (CUE, DUE) pair is priced with the
// Stackelberg solver on an otherwise empty RB; pairs are then matched greedily
// by descending pairwise throughput.
Assignment RunBaselineSingleShare(const Scenario& scenario, double beta);

}  // namespace d2d

#endif  // D2D_BASELINES_H_
