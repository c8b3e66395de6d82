#ifndef D2D_MODEL_H_
#define D2D_MODEL_H_

#include <optional>
#include <string>
#include <vector>

namespace d2d {

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point&, const Point&) = default;
};

double Distance(const Point& a, const Point& b);

enum class SinrUnit { kLinear, kDb };

SinrUnit ParseSinrUnit(const std::string& text);
std::string ToString(SinrUnit unit);

// dBm <-> Watt.
double DbmToWatt(double dbm);
double WattToDbm(double watt);
double DbToLinear(double db);

// Thermal noise power over a band: density in dBm/Hz, bandwidth in Hz.
double NoisePower(double density_dbm_hz, double bandwidth_hz);

// Cell-wide radio configuration. Powers and gains are linear; dB quantities
// stay at this boundary.
struct RadioParams {
  double cue_power_w = 0.19952623149688797;       // 23 dBm
  double due_power_min_w = 0.0;
  double due_power_max_w = 0.19952623149688797;   // 23 dBm
  double due_fixed_power_w = 0.01;                // 10 dBm, no-power-control baselines
  double cue_sinr_threshold = 7.0;
  double due_sinr_threshold = 3.0;
  SinrUnit sinr_threshold_unit = SinrUnit::kLinear;
  double noise_spectral_density_dbm_hz = -174.0;
  double rb_bandwidth_hz = 180e3;
  double cell_radius_m = 500.0;
  double due_pair_distance_m = 15.0;
  double conflict_distance_m = 25.0;
  double min_bs_distance_m = 1.0;
  double beta = 1.0;

  // Throws std::invalid_argument naming the offending field.
  void Validate() const;

  double CueSinrThresholdLinear() const;
  double DueSinrThresholdLinear() const;

  friend bool operator==(const RadioParams&, const RadioParams&) = default;
};

struct Cue {
  int id = 0;  // 0-based index into Scenario::cues
  Point position;
  double bandwidth_hz = 0.0;
  double tx_power_w = 0.0;
  double noise_power_w = 0.0;

  friend bool operator==(const Cue&, const Cue&) = default;
};

struct DuePair {
  int id = 0;  // 0-based index into Scenario::dues
  Point tx_position;
  Point rx_position;
  double noise_power_w = 0.0;

  double Separation() const { return Distance(tx_position, rx_position); }

  friend bool operator==(const DuePair&, const DuePair&) = default;
};

// Linear channel gains for every link the uplink model needs.
class GainTable {
 public:
  GainTable() = default;
  GainTable(int num_cues, int num_dues);

  int num_cues() const { return num_cues_; }
  int num_dues() const { return num_dues_; }

  double cue_to_bs(int c) const { return cue_to_bs_[c]; }
  double due_tx_to_bs(int d) const { return due_tx_to_bs_[d]; }
  double cue_to_due_rx(int c, int d) const { return cue_to_due_rx_[c * num_dues_ + d]; }
  // Gain from the transmitter of pair `from` to the receiver of pair `to`.
  // The diagonal is the pair's own link.
  double due_tx_to_due_rx(int from, int to) const {
    return due_tx_to_due_rx_[from * num_dues_ + to];
  }

  void set_cue_to_bs(int c, double g) { cue_to_bs_[c] = g; }
  void set_due_tx_to_bs(int d, double g) { due_tx_to_bs_[d] = g; }
  void set_cue_to_due_rx(int c, int d, double g) { cue_to_due_rx_[c * num_dues_ + d] = g; }
  void set_due_tx_to_due_rx(int from, int to, double g) {
    due_tx_to_due_rx_[from * num_dues_ + to] = g;
  }

  // Throws std::domain_error if any entry is non-positive or non-finite.
  void Validate() const;

  friend bool operator==(const GainTable&, const GainTable&) = default;

 private:
  int num_cues_ = 0;
  int num_dues_ = 0;
  std::vector<double> cue_to_bs_;
  std::vector<double> due_tx_to_bs_;
  std::vector<double> cue_to_due_rx_;
  std::vector<double> due_tx_to_due_rx_;
};

// One cell instance. Treated as immutable once built; algorithms take it by
// const reference.
struct Scenario {
  RadioParams radio;
  std::vector<Cue> cues;
  std::vector<DuePair> dues;
  GainTable gains;

  int num_cues() const { return static_cast<int>(cues.size()); }
  int num_dues() const { return static_cast<int>(dues.size()); }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

// Reuse decision plus the algorithm-internal grouping state.
struct Assignment {
  Assignment() = default;
  Assignment(int num_cues, int num_dues);

  // Delta_c per CUE, in admission order.
  std::vector<std::vector<int>> reuse_sets;
  // Transmit power per DUE; empty for DUEs that were not granted.
  std::vector<std::optional<double>> due_power_w;
  // Gamma_c per CUE.
  std::vector<std::vector<int>> groups;
  std::vector<bool> marked;

  int num_cues() const { return static_cast<int>(reuse_sets.size()); }
  int num_dues() const { return static_cast<int>(due_power_w.size()); }

  void Grant(int c, int d, double power_w);
  // Removes d from Delta_c and clears its power. No-op if absent.
  void Revoke(int c, int d);

  // Host CUE of a granted DUE, or nullopt.
  std::optional<int> HostOf(int d) const;
  int GrantedCount() const;

  // Checks disjointness of reuse sets, that every member has a power and that
  // powers lie in [p_min, p_max]. Returns a description of the first
  // violation, or nullopt.
  std::optional<std::string> CheckStructure(double p_min, double p_max) const;

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

}  // namespace d2d

#endif  // D2D_MODEL_H_
