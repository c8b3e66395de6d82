#ifndef D2D_SCENARIO_H_
#define D2D_SCENARIO_H_

#include <vector>

#include "d2d/channel.h"
#include "d2d/model.h"
#include "d2d/rng.h"

namespace d2d {

Cue MakeCue(int id, Point position, const RadioParams& radio);
DuePair MakeDuePair(int id, Point tx, Point rx, const RadioParams& radio);

// Assembles a scenario from explicit geometry and computes its gains.
Scenario MakeScenario(const RadioParams& radio, std::vector<Cue> cues, std::vector<DuePair> dues,
                      const ChannelModels& models = {});

// BS at the origin; m CUEs and ratio*m DUE transmitters uniform over the
// annulus [min_bs_distance_m, cell_radius_m]; each receiver due_pair_distance_m
// away in a uniform direction, redrawn until it lands inside the cell.
Scenario GenerateScenario(int m, int ratio, const RadioParams& radio, Rng& rng,
                          const ChannelModels& models = {});

}  // namespace d2d

#endif  // D2D_SCENARIO_H_
