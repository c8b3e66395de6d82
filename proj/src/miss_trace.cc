#include <cmath>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <fmt/core.h>

#include "d2d/miss.h"

namespace d2d {

namespace {

constexpr const char* kKindNames[] = {"join",  "reject", "select",      "proper", "reprice",
                                      "evict", "admit",  "audit_evict", "mark"};

bool SameDouble(double a, double b) { return (std::isnan(a) && std::isnan(b)) || a == b; }

bool HasMembers(TraceEventKind kind) {
  return kind == TraceEventKind::kProper || kind == TraceEventKind::kMark;
}

int ParseInt(const std::string& text, const std::string& key) {
  size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) {
    throw std::runtime_error(fmt::format("trace: bad integer for '{}': '{}'", key, text));
  }
  return v;
}

double ParseDouble(const std::string& text, const std::string& key) {
  char* end = nullptr;
  const double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw std::runtime_error(fmt::format("trace: bad number for '{}': '{}'", key, text));
  }
  return v;
}

void EraseValue(std::vector<int>& list, int x) {
  for (auto it = list.begin(); it != list.end(); ++it) {
    if (*it == x) {
      list.erase(it);
      return;
    }
  }
}

}  // namespace

std::string ToString(TraceEventKind kind) { return kKindNames[static_cast<int>(kind)]; }

TraceEventKind ParseTraceEventKind(const std::string& text) {
  for (int i = 0; i < static_cast<int>(std::size(kKindNames)); ++i) {
    if (text == kKindNames[i]) return static_cast<TraceEventKind>(i);
  }
  throw std::runtime_error(fmt::format("trace: unknown event kind '{}'", text));
}

TraceEvent::TraceEvent()
    : alpha(std::nan("")), power(std::nan("")), u_c(std::nan("")), u_d(std::nan("")),
      value(std::nan("")) {}

bool operator==(const TraceEvent& a, const TraceEvent& b) {
  return a.iteration == b.iteration && a.round == b.round && a.kind == b.kind && a.cue == b.cue &&
         a.due == b.due && SameDouble(a.alpha, b.alpha) && SameDouble(a.power, b.power) &&
         SameDouble(a.u_c, b.u_c) && SameDouble(a.u_d, b.u_d) && SameDouble(a.value, b.value) &&
         a.members == b.members;
}

void MissTrace::Write(std::ostream& os) const {
  os << fmt::format("miss-trace v1 cues={} dues={} solver_calls={}\n", num_cues, num_dues,
                    solver_calls);
  for (const auto& ev : events) {
    std::string line = fmt::format("iter={} round={} event={}", ev.iteration, ev.round, ToString(ev.kind));
    if (ev.cue >= 0) line += fmt::format(" cue={}", ev.cue);
    if (ev.due >= 0) line += fmt::format(" due={}", ev.due);
    auto put = [&line](const char* key, double v) {
      if (!std::isnan(v)) line += fmt::format(" {}={:.17g}", key, v);
    };
    put("alpha", ev.alpha);
    put("power", ev.power);
    put("u_c", ev.u_c);
    put("u_d", ev.u_d);
    put("value", ev.value);
    if (HasMembers(ev.kind)) {
      line += " members=";
      for (size_t i = 0; i < ev.members.size(); ++i) {
        if (i) line += ',';
        line += std::to_string(ev.members[i]);
      }
    }
    os << line << '\n';
  }
}

MissTrace MissTrace::Read(std::istream& is) {
  MissTrace trace;
  std::string line;
  if (!std::getline(is, line)) throw std::runtime_error("trace: missing header");
  {
    std::istringstream hs(line);
    std::string magic, version, token;
    hs >> magic >> version;
    if (magic != "miss-trace" || version != "v1") throw std::runtime_error("trace: bad header");
    while (hs >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos) throw std::runtime_error("trace: bad header field");
      const std::string key = token.substr(0, eq);
      const std::string val = token.substr(eq + 1);
      if (key == "cues") trace.num_cues = ParseInt(val, key);
      else if (key == "dues") trace.num_dues = ParseInt(val, key);
      else if (key == "solver_calls") trace.solver_calls = std::stoll(val);
    }
  }
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string token;
    TraceEvent ev;
    bool have_kind = false;
    while (ls >> token) {
      const auto eq = token.find('=');
      if (eq == std::string::npos) throw std::runtime_error(fmt::format("trace: bad field '{}'", token));
      const std::string key = token.substr(0, eq);
      const std::string val = token.substr(eq + 1);
      if (key == "iter") ev.iteration = ParseInt(val, key);
      else if (key == "round") ev.round = ParseInt(val, key);
      else if (key == "event") { ev.kind = ParseTraceEventKind(val); have_kind = true; }
      else if (key == "cue") ev.cue = ParseInt(val, key);
      else if (key == "due") ev.due = ParseInt(val, key);
      else if (key == "alpha") ev.alpha = ParseDouble(val, key);
      else if (key == "power") ev.power = ParseDouble(val, key);
      else if (key == "u_c") ev.u_c = ParseDouble(val, key);
      else if (key == "u_d") ev.u_d = ParseDouble(val, key);
      else if (key == "value") ev.value = ParseDouble(val, key);
      else if (key == "members") {
        std::istringstream ms(val);
        std::string item;
        while (std::getline(ms, item, ',')) ev.members.push_back(ParseInt(item, key));
      } else {
        throw std::runtime_error(fmt::format("trace: unknown field '{}'", key));
      }
    }
    if (!have_kind) throw std::runtime_error("trace: record without event kind");
    trace.events.push_back(std::move(ev));
  }
  return trace;
}

Assignment MissTrace::Replay() const {
  Assignment a(num_cues, num_dues);
  std::vector<int> group_of(num_dues, -1);
  auto check_ids = [&](const TraceEvent& ev) {
    if (ev.cue >= num_cues || ev.due >= num_dues) {
      throw std::runtime_error("trace: event refers to an unknown device");
    }
  };
  auto move_to = [&](int d, int c) {
    if (group_of[d] == c) return;
    if (group_of[d] >= 0) EraseValue(a.groups[group_of[d]], d);
    group_of[d] = c;
    if (c >= 0) a.groups[c].push_back(d);
  };
  for (const auto& ev : events) {
    check_ids(ev);
    switch (ev.kind) {
      case TraceEventKind::kJoin:
        // Re-homing always leaves the old group, even when it is the same id.
        if (group_of[ev.due] >= 0) EraseValue(a.groups[group_of[ev.due]], ev.due);
        group_of[ev.due] = ev.cue;
        a.groups[ev.cue].push_back(ev.due);
        break;
      case TraceEventKind::kReject:
        move_to(ev.due, -1);
        break;
      case TraceEventKind::kAdmit:
        move_to(ev.due, ev.cue);
        a.Grant(ev.cue, ev.due, ev.power);
        break;
      case TraceEventKind::kReprice:
        a.due_power_w[ev.due] = ev.power;
        break;
      case TraceEventKind::kEvict:
      case TraceEventKind::kAuditEvict:
        a.Revoke(ev.cue, ev.due);
        break;
      case TraceEventKind::kMark:
        a.marked[ev.cue] = true;
        break;
      case TraceEventKind::kSelect:
      case TraceEventKind::kProper:
        break;
    }
  }
  return a;
}

}  // namespace d2d
