#include "d2d/channel.h"

#include <cmath>
#include <stdexcept>

#include <fmt/core.h>

namespace d2d {

double PathLossDb(const PathLossModel& model, double distance_m) {
  if (!(distance_m > 0.0) || !std::isfinite(distance_m)) {
    throw std::domain_error(fmt::format("path loss: distance must be positive, got {}", distance_m));
  }
  return model.intercept_db + model.slope_db_per_decade * std::log10(distance_m / 1000.0);
}

double LinearGain(const PathLossModel& model, double distance_m) {
  return std::pow(10.0, -PathLossDb(model, distance_m) / 10.0);
}

namespace {

const Point kBaseStation{0.0, 0.0};

double LinkGain(const ChannelModels& models, const PathLossModel& pl, GainFamily family, int tx,
                int rx, const Point& a, const Point& b) {
  double d = Distance(a, b);
  if (!(d > 0.0)) {
    throw std::domain_error(fmt::format("gain table: coincident endpoints (tx {}, rx {})", tx, rx));
  }
  double g = LinearGain(pl, d);
  if (models.fading) g *= models.fading(family, tx, rx);
  return g;
}

}  // namespace

GainTable BuildGainTable(std::span<const Cue> cues, std::span<const DuePair> dues,
                         const ChannelModels& models) {
  const int m = static_cast<int>(cues.size());
  const int n = static_cast<int>(dues.size());
  GainTable table(m, n);
  const PathLossModel& cue_due = models.cue_to_due_rx_cellular ? models.cellular : models.d2d;

  for (int c = 0; c < m; ++c) {
    table.set_cue_to_bs(c, LinkGain(models, models.cellular, GainFamily::kCueToBs, c, -1,
                                    cues[c].position, kBaseStation));
    for (int d = 0; d < n; ++d) {
      table.set_cue_to_due_rx(c, d, LinkGain(models, cue_due, GainFamily::kCueToDueRx, c, d,
                                             cues[c].position, dues[d].rx_position));
    }
  }
  for (int d = 0; d < n; ++d) {
    table.set_due_tx_to_bs(d, LinkGain(models, models.cellular, GainFamily::kDueTxToBs, d, -1,
                                       dues[d].tx_position, kBaseStation));
    for (int r = 0; r < n; ++r) {
      table.set_due_tx_to_due_rx(d, r, LinkGain(models, models.d2d, GainFamily::kDueTxToDueRx, d,
                                                r, dues[d].tx_position, dues[r].rx_position));
    }
  }
  table.Validate();
  return table;
}

double CueSinr(const Cue& cue, std::span<const ReuserPower> reusing, const GainTable& gains) {
  double interference = cue.noise_power_w;
  for (const auto& r : reusing) interference += r.power_w * gains.due_tx_to_bs(r.due);
  return cue.tx_power_w * gains.cue_to_bs(cue.id) / interference;
}

double DueSinr(const DuePair& due, double power_w, const Cue& host,
               std::span<const ReuserPower> cohabitants, const GainTable& gains) {
  double interference = host.tx_power_w * gains.cue_to_due_rx(host.id, due.id) + due.noise_power_w;
  for (const auto& r : cohabitants) interference += r.power_w * gains.due_tx_to_due_rx(r.due, due.id);
  return power_w * gains.due_tx_to_due_rx(due.id, due.id) / interference;
}

double ShannonRate(double bandwidth_hz, double sinr) { return bandwidth_hz * std::log2(1.0 + sinr); }

double SpectralEfficiency(double sinr) { return std::log2(1.0 + sinr); }

LinkSinrs EvaluateSinrs(const Scenario& scenario, const Assignment& assignment) {
  LinkSinrs out;
  out.cue.assign(scenario.num_cues(), 0.0);
  out.due.assign(scenario.num_dues(), 0.0);
  std::vector<ReuserPower> members;
  std::vector<ReuserPower> others;
  for (int c = 0; c < scenario.num_cues(); ++c) {
    members.clear();
    for (int d : assignment.reuse_sets[c]) members.push_back({d, assignment.due_power_w[d].value()});
    const Cue& cue = scenario.cues[c];
    out.cue[c] = CueSinr(cue, members, scenario.gains);
    for (const auto& self : members) {
      others.clear();
      for (const auto& o : members) {
        if (o.due != self.due) others.push_back(o);
      }
      out.due[self.due] =
          DueSinr(scenario.dues[self.due], self.power_w, cue, others, scenario.gains);
    }
  }
  return out;
}

std::vector<FeasibilityViolation> AuditFeasibility(const Scenario& scenario,
                                                   const Assignment& assignment) {
  std::vector<FeasibilityViolation> violations;
  LinkSinrs sinrs = EvaluateSinrs(scenario, assignment);
  const double cue_t = scenario.radio.CueSinrThresholdLinear();
  const double due_t = scenario.radio.DueSinrThresholdLinear();
  for (int c = 0; c < scenario.num_cues(); ++c) {
    if (!(sinrs.cue[c] >= cue_t)) violations.push_back({true, c, sinrs.cue[c], cue_t});
    for (int d : assignment.reuse_sets[c]) {
      if (!(sinrs.due[d] >= due_t)) violations.push_back({false, d, sinrs.due[d], due_t});
    }
  }
  return violations;
}

}  // namespace d2d
