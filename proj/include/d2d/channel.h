#ifndef D2D_CHANNEL_H_
#define D2D_CHANNEL_H_

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "d2d/model.h"

namespace d2d {

enum class LinkKind { kCellular, kD2d };

// Log-distance path loss: intercept + slope * log10(d [km]).
struct PathLossModel {
  LinkKind kind = LinkKind::kCellular;
  double intercept_db = 128.1;
  double slope_db_per_decade = 37.6;

  static PathLossModel Cellular() { return {LinkKind::kCellular, 128.1, 37.6}; }
  static PathLossModel D2d() { return {LinkKind::kD2d, 148.0, 40.0}; }
};

// Throws std::domain_error for non-positive or non-finite distances.
double PathLossDb(const PathLossModel& model, double distance_m);
double LinearGain(const PathLossModel& model, double distance_m);

enum class GainFamily { kCueToBs, kDueTxToBs, kCueToDueRx, kDueTxToDueRx };

struct ChannelModels {
  PathLossModel cellular = PathLossModel::Cellular();
  PathLossModel d2d = PathLossModel::D2d();
  // CUE -> DUE receiver interference links. Cellular by default.
  bool cue_to_due_rx_cellular = true;
  // Multiplicative per-link factor (shadowing/fading); empty means 1.
  // Arguments: family, transmitter index, receiver index (-1 for the BS).
  std::function<double(GainFamily, int, int)> fading;
};

// Throws std::domain_error on coincident endpoints.
GainTable BuildGainTable(std::span<const Cue> cues, std::span<const DuePair> dues,
                         const ChannelModels& models = {});

struct ReuserPower {
  int due = 0;
  double power_w = 0.0;
};

// Uplink SINR of CUE c at the BS with the given DUEs reusing its RB.
double CueSinr(const Cue& cue, std::span<const ReuserPower> reusing, const GainTable& gains);

// SINR at the receiver of `due` transmitting at power_w on `host`'s RB.
// `cohabitants` must not contain `due`.
double DueSinr(const DuePair& due, double power_w, const Cue& host,
               std::span<const ReuserPower> cohabitants, const GainTable& gains);

double ShannonRate(double bandwidth_hz, double sinr);
double SpectralEfficiency(double sinr);  // bit/s/Hz

// SINRs of every link under an assignment. DUEs without a host get 0.
struct LinkSinrs {
  std::vector<double> cue;
  std::vector<double> due;
};
LinkSinrs EvaluateSinrs(const Scenario& scenario, const Assignment& assignment);

struct FeasibilityViolation {
  bool is_cue = false;
  int index = 0;
  double sinr = 0.0;
  double threshold = 0.0;
};

// Every CUE against its threshold, every granted DUE against its own. Pure
// recomputation from the scenario; shares no state with any algorithm.
std::vector<FeasibilityViolation> AuditFeasibility(const Scenario& scenario,
                                                   const Assignment& assignment);

}  // namespace d2d

#endif  // D2D_CHANNEL_H_
