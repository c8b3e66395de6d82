#include "d2d/model.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/core.h>

namespace d2d {

double Distance(const Point& a, const Point& b) { return std::hypot(a.x - b.x, a.y - b.y); }

SinrUnit ParseSinrUnit(const std::string& text) {
  if (text == "linear") return SinrUnit::kLinear;
  if (text == "db") return SinrUnit::kDb;
  throw std::invalid_argument(fmt::format("unknown sinr_threshold_unit '{}'", text));
}

std::string ToString(SinrUnit unit) { return unit == SinrUnit::kLinear ? "linear" : "db"; }

double DbmToWatt(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
double WattToDbm(double watt) { return 10.0 * std::log10(watt) + 30.0; }
double DbToLinear(double db) { return std::pow(10.0, db / 10.0); }

double NoisePower(double density_dbm_hz, double bandwidth_hz) {
  return DbmToWatt(density_dbm_hz) * bandwidth_hz;
}

namespace {

void Require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(fmt::format("invalid radio parameters: {}", what));
}

}  // namespace

void RadioParams::Validate() const {
  Require(std::isfinite(cue_power_w) && cue_power_w > 0.0, "cue_power_w must be > 0");
  Require(due_power_min_w >= 0.0, "due_power_min_w must be >= 0");
  Require(std::isfinite(due_power_max_w) && due_power_min_w < due_power_max_w,
          "due_power_min_w must be < due_power_max_w");
  Require(due_fixed_power_w >= due_power_min_w && due_fixed_power_w <= due_power_max_w,
          "due_fixed_power_w must lie in the power box");
  if (sinr_threshold_unit == SinrUnit::kLinear) {
    Require(cue_sinr_threshold > 0.0, "cue_sinr_threshold must be > 0");
    Require(due_sinr_threshold > 0.0, "due_sinr_threshold must be > 0");
  } else {
    Require(std::isfinite(cue_sinr_threshold), "cue_sinr_threshold must be finite");
    Require(std::isfinite(due_sinr_threshold), "due_sinr_threshold must be finite");
  }
  Require(std::isfinite(noise_spectral_density_dbm_hz), "noise_spectral_density_dbm_hz");
  Require(rb_bandwidth_hz > 0.0, "rb_bandwidth_hz must be > 0");
  Require(cell_radius_m > 0.0, "cell_radius_m must be > 0");
  Require(due_pair_distance_m > 0.0, "due_pair_distance_m must be > 0");
  Require(conflict_distance_m > 0.0, "conflict_distance_m must be > 0");
  Require(min_bs_distance_m > 0.0 && min_bs_distance_m < cell_radius_m,
          "min_bs_distance_m must lie in (0, cell_radius_m)");
  Require(beta > 0.0 && std::isfinite(beta), "beta must be > 0");
}

double RadioParams::CueSinrThresholdLinear() const {
  return sinr_threshold_unit == SinrUnit::kLinear ? cue_sinr_threshold
                                                  : DbToLinear(cue_sinr_threshold);
}

double RadioParams::DueSinrThresholdLinear() const {
  return sinr_threshold_unit == SinrUnit::kLinear ? due_sinr_threshold
                                                  : DbToLinear(due_sinr_threshold);
}

GainTable::GainTable(int num_cues, int num_dues)
    : num_cues_(num_cues),
      num_dues_(num_dues),
      cue_to_bs_(num_cues, 0.0),
      due_tx_to_bs_(num_dues, 0.0),
      cue_to_due_rx_(static_cast<size_t>(num_cues) * num_dues, 0.0),
      due_tx_to_due_rx_(static_cast<size_t>(num_dues) * num_dues, 0.0) {}

void GainTable::Validate() const {
  auto check = [](const std::vector<double>& v, const char* family) {
    for (double g : v) {
      if (!(g > 0.0) || !std::isfinite(g)) {
        throw std::domain_error(fmt::format("gain table: non-positive or non-finite {} entry", family));
      }
    }
  };
  check(cue_to_bs_, "cue_to_bs");
  check(due_tx_to_bs_, "due_tx_to_bs");
  check(cue_to_due_rx_, "cue_to_due_rx");
  check(due_tx_to_due_rx_, "due_tx_to_due_rx");
}

Assignment::Assignment(int num_cues, int num_dues)
    : reuse_sets(num_cues), due_power_w(num_dues), groups(num_cues), marked(num_cues, false) {}

void Assignment::Grant(int c, int d, double power_w) {
  auto& set = reuse_sets[c];
  if (std::find(set.begin(), set.end(), d) == set.end()) set.push_back(d);
  due_power_w[d] = power_w;
}

void Assignment::Revoke(int c, int d) {
  auto& set = reuse_sets[c];
  auto it = std::find(set.begin(), set.end(), d);
  if (it == set.end()) return;
  set.erase(it);
  due_power_w[d].reset();
}

std::optional<int> Assignment::HostOf(int d) const {
  for (int c = 0; c < num_cues(); ++c) {
    const auto& set = reuse_sets[c];
    if (std::find(set.begin(), set.end(), d) != set.end()) return c;
  }
  return std::nullopt;
}

int Assignment::GrantedCount() const {
  int n = 0;
  for (const auto& set : reuse_sets) n += static_cast<int>(set.size());
  return n;
}

std::optional<std::string> Assignment::CheckStructure(double p_min, double p_max) const {
  std::vector<int> host(num_dues(), -1);
  for (int c = 0; c < num_cues(); ++c) {
    for (int d : reuse_sets[c]) {
      if (d < 0 || d >= num_dues()) return fmt::format("CUE {} holds unknown DUE {}", c, d);
      if (host[d] >= 0) return fmt::format("DUE {} reuses both CUE {} and CUE {}", d, host[d], c);
      host[d] = c;
      if (!due_power_w[d]) return fmt::format("granted DUE {} has no power", d);
      double p = *due_power_w[d];
      if (!(p >= p_min && p <= p_max)) {
        return fmt::format("DUE {} power {} outside [{}, {}]", d, p, p_min, p_max);
      }
    }
  }
  for (int d = 0; d < num_dues(); ++d) {
    if (host[d] < 0 && due_power_w[d]) return fmt::format("ungranted DUE {} carries a power", d);
  }
  return std::nullopt;
}

}  // namespace d2d
