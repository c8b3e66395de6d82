#include "d2d/scenario.h"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace d2d {

std::uint64_t SplitMix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t DeriveSeed(std::uint64_t master, std::uint64_t m, std::uint64_t instance) {
  return SplitMix64(SplitMix64(SplitMix64(master) ^ m) ^ instance);
}

Cue MakeCue(int id, Point position, const RadioParams& radio) {
  Cue c;
  c.id = id;
  c.position = position;
  c.bandwidth_hz = radio.rb_bandwidth_hz;
  c.tx_power_w = radio.cue_power_w;
  c.noise_power_w = NoisePower(radio.noise_spectral_density_dbm_hz, radio.rb_bandwidth_hz);
  return c;
}

DuePair MakeDuePair(int id, Point tx, Point rx, const RadioParams& radio) {
  DuePair d;
  d.id = id;
  d.tx_position = tx;
  d.rx_position = rx;
  d.noise_power_w = NoisePower(radio.noise_spectral_density_dbm_hz, radio.rb_bandwidth_hz);
  return d;
}

Scenario MakeScenario(const RadioParams& radio, std::vector<Cue> cues, std::vector<DuePair> dues,
                      const ChannelModels& models) {
  radio.Validate();
  for (size_t i = 0; i < cues.size(); ++i) {
    if (cues[i].id != static_cast<int>(i)) throw std::invalid_argument("scenario: CUE ids must be 0..M-1");
  }
  for (size_t i = 0; i < dues.size(); ++i) {
    if (dues[i].id != static_cast<int>(i)) throw std::invalid_argument("scenario: DUE ids must be 0..N-1");
  }
  Scenario s;
  s.radio = radio;
  s.gains = BuildGainTable(cues, dues, models);
  s.cues = std::move(cues);
  s.dues = std::move(dues);
  return s;
}

namespace {

Point UniformInAnnulus(Rng& rng, double r_min, double r_max) {
  const double r = std::sqrt(rng.Uniform(r_min * r_min, r_max * r_max));
  const double theta = rng.Uniform(0.0, 2.0 * std::numbers::pi);
  return {r * std::cos(theta), r * std::sin(theta)};
}

}  // namespace

Scenario GenerateScenario(int m, int ratio, const RadioParams& radio, Rng& rng,
                          const ChannelModels& models) {
  if (m < 1) throw std::invalid_argument("scenario: need at least one CUE");
  if (ratio < 0) throw std::invalid_argument("scenario: DUE ratio must be >= 0");
  radio.Validate();
  const double r_min = radio.min_bs_distance_m;
  const double r_max = radio.cell_radius_m;

  std::vector<Cue> cues;
  cues.reserve(m);
  for (int c = 0; c < m; ++c) cues.push_back(MakeCue(c, UniformInAnnulus(rng, r_min, r_max), radio));

  const int n = m * ratio;
  std::vector<DuePair> dues;
  dues.reserve(n);
  for (int d = 0; d < n; ++d) {
    const Point tx = UniformInAnnulus(rng, r_min, r_max);
    Point rx;
    do {
      const double theta = rng.Uniform(0.0, 2.0 * std::numbers::pi);
      rx = {tx.x + radio.due_pair_distance_m * std::cos(theta),
            tx.y + radio.due_pair_distance_m * std::sin(theta)};
    } while (std::hypot(rx.x, rx.y) > r_max);
    dues.push_back(MakeDuePair(d, tx, rx, radio));
  }
  return MakeScenario(radio, std::move(cues), std::move(dues), models);
}

}  // namespace d2d
