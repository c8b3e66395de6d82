#include "d2d/metrics.h"

#include "d2d/channel.h"

namespace d2d {

MetricsReport ComputeMetrics(const Scenario& scenario, const Assignment& assignment,
                             double runtime_s) {
  MetricsReport r;
  r.m = scenario.num_cues();
  r.runtime_s = runtime_s;
  const LinkSinrs sinrs = EvaluateSinrs(scenario, assignment);
  const double cue_t = scenario.radio.CueSinrThresholdLinear();
  const double due_t = scenario.radio.DueSinrThresholdLinear();

  double total_bandwidth = 0.0;
  for (int c = 0; c < scenario.num_cues(); ++c) {
    const double w = scenario.cues[c].bandwidth_hz;
    total_bandwidth += w;
    if (sinrs.cue[c] >= cue_t) {
      r.throughput_bps += ShannonRate(w, sinrs.cue[c]);
      r.throughput_bps_hz_per_cue += SpectralEfficiency(sinrs.cue[c]);
    }
    for (int d : assignment.reuse_sets[c]) {
      r.due_total_power_w += *assignment.due_power_w[d];
      if (sinrs.due[d] >= due_t) {
        r.throughput_bps += ShannonRate(w, sinrs.due[d]);
        r.throughput_bps_hz_per_cue += SpectralEfficiency(sinrs.due[d]);
      }
    }
  }
  r.throughput_bps_hz_system = total_bandwidth > 0.0 ? r.throughput_bps / total_bandwidth : 0.0;
  r.permitted_fraction = scenario.num_dues() > 0
                             ? static_cast<double>(assignment.GrantedCount()) / scenario.num_dues()
                             : 0.0;
  return r;
}

}  // namespace d2d
