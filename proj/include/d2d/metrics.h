#ifndef D2D_METRICS_H_
#define D2D_METRICS_H_

#include <string>

#include "d2d/model.h"

namespace d2d {

struct MetricsReport {
  std::string algorithm;
  int m = 0;
  int instance = 0;
  // Shannon rate of every CUE and granted DUE that meets its own SINR
  // threshold; the rest count as zero.
  double throughput_bps = 0.0;
  // Sum over counted users of rate / bandwidth of the RB they use.
  double throughput_bps_hz_per_cue = 0.0;
  // throughput_bps / total CUE bandwidth.
  double throughput_bps_hz_system = 0.0;
  double due_total_power_w = 0.0;
  double permitted_fraction = 0.0;
  double runtime_s = 0.0;
};

MetricsReport ComputeMetrics(const Scenario& scenario, const Assignment& assignment,
                             double runtime_s);

}  // namespace d2d

#endif  // D2D_METRICS_H_
