#pragma once

// Text and JSON renderings of run reports and policy comparisons.

#include <cstdio>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "tewa/document.hpp"
#include "tewa/sim_engine.hpp"

namespace tewa {

inline Json to_json(const SimReport& r) {
  Json j;
  j["scenario"] = r.scenario;
  j["seed"] = r.seed;
  j["policy"] = std::string(to_string(r.policy));
  j["cycles"] = r.cycles;
  j["end_time"] = r.end_time;
  j["summary"] = {{"threats", r.threats.size()},
                  {"allocated", r.allocated},
                  {"locked", r.locked},
                  {"covered", r.covered},
                  {"queued", r.queued},
                  {"destroyed", r.destroyed},
                  {"leakers", r.leakers},
                  {"active", r.active},
                  {"shots", r.shots},
                  {"kills", r.kills},
                  {"misses", r.misses},
                  {"voided", r.voided},
                  {"leak_risk_events", r.leak_risk_events},
                  {"total_survival", r.total_survival()},
                  {"idle_weapons", r.idle_weapons}};
  Json das = Json::array();
  for (const auto& d : r.das)
    das.push_back({{"id", d.id},
                   {"priority", d.priority},
                   {"survival_value", d.survival_value},
                   {"kill_probability", d.kill_probability},
                   {"threats_allocated", d.threats_allocated}});
  j["defended_assets"] = das;
  Json threats = Json::array();
  for (const auto& t : r.threats) {
    Json tj{{"id", t.id},
            {"outcome", std::string(to_string(t.outcome))},
            {"detected", t.detected},
            {"allocated_da", t.allocated_da},
            {"locked", t.locked},
            {"queued", t.queued},
            {"shots", t.shots}};
    if (t.detected) tj["detection_time"] = t.detection_time;
    if (t.outcome != Outcome::Active) tj["resolved_at"] = t.resolved_at;
    if (!t.leaked_into.empty()) tj["leaked_into"] = t.leaked_into;
    threats.push_back(std::move(tj));
  }
  j["threats"] = threats;
  Json modes = Json::array();
  for (const auto& [t, m] : r.mode_timeline) modes.push_back({{"t", t}, {"mode", std::string(to_string(m))}});
  j["mode_timeline"] = modes;
  j["timing"] = {{"max_cycle_ms", r.max_cycle_ms}, {"mean_cycle_ms", r.mean_cycle_ms}};
  return j;
}

namespace detail {

inline std::string padded(const std::string& s, int width) {
  if (static_cast<int>(s.size()) >= width) return s;
  return s + std::string(static_cast<std::size_t>(width - static_cast<int>(s.size())), ' ');
}

inline std::string right(const std::string& s, int width) {
  if (static_cast<int>(s.size()) >= width) return s;
  return std::string(static_cast<std::size_t>(width - static_cast<int>(s.size())), ' ') + s;
}

}  // namespace detail

/// Mode the system shifted into under the heaviest load of the run:
/// Preferential if it was ever entered.
inline std::optional<Mode> peak_mode(const SimReport& r) {
  if (r.ever_in(Mode::Preferential)) return Mode::Preferential;
  return r.final_mode();
}

/// One-line summary of a run.
inline std::string summary_line(const SimReport& r) {
  auto name = [](std::optional<Mode> m) { return m ? std::string(to_string(*m)) : std::string("none"); };
  std::ostringstream os;
  os << "threats=" << r.threats.size() << " allocated=" << r.allocated << " covered=" << r.covered
     << " idle_ws=" << r.idle_weapons.size() << " mode=" << name(peak_mode(r)) << " final_mode=" << name(r.final_mode())
     << " leakers=" << r.leakers << " max_cycle_ms=" << format_fixed(r.max_cycle_ms, 3);
  return os.str();
}

inline std::string to_text(const SimReport& r) {
  using detail::padded;
  using detail::right;
  std::ostringstream os;
  os << "scenario " << r.scenario << "  policy " << to_string(r.policy) << "  seed " << r.seed << "\n";
  os << summary_line(r) << "\n\n";
  os << padded("metric", 20) << right("value", 10) << "\n";
  auto row = [&](const std::string& k, const std::string& v) { os << padded(k, 20) << right(v, 10) << "\n"; };
  row("threats", std::to_string(r.threats.size()));
  row("allocated", std::to_string(r.allocated));
  row("locked", std::to_string(r.locked));
  row("covered", std::to_string(r.covered));
  row("queued", std::to_string(r.queued));
  row("destroyed", std::to_string(r.destroyed));
  row("leakers", std::to_string(r.leakers));
  row("active", std::to_string(r.active));
  row("shots", std::to_string(r.shots));
  row("kills", std::to_string(r.kills));
  row("misses", std::to_string(r.misses));
  row("voided", std::to_string(r.voided));
  row("leak_risk_events", std::to_string(r.leak_risk_events));
  row("total_survival", format_fixed(r.total_survival(), 4));
  row("cycles", std::to_string(r.cycles));
  row("mean_cycle_ms", format_fixed(r.mean_cycle_ms, 4));
  row("max_cycle_ms", format_fixed(r.max_cycle_ms, 4));
  os << "\n" << padded("da", 12) << right("priority", 10) << right("survival", 10) << right("kp", 10)
     << right("allocated", 10) << "\n";
  for (const auto& d : r.das)
    os << padded(d.id, 12) << right(format_fixed(d.priority, 3), 10) << right(format_fixed(d.survival_value, 4), 10)
       << right(format_fixed(d.kill_probability, 4), 10) << right(std::to_string(d.threats_allocated), 10) << "\n";
  os << "\n" << padded("threat", 12) << padded("outcome", 12) << right("da", 4) << right("lock", 6) << right("shots", 7)
     << "\n";
  for (const auto& t : r.threats)
    os << padded(t.id, 12) << padded(std::string(to_string(t.outcome)), 12) << right(t.allocated_da ? "y" : "n", 4)
       << right(t.locked ? "y" : "n", 6) << right(std::to_string(t.shots), 7) << "\n";
  os << "\nmode timeline:";
  if (r.mode_timeline.empty()) os << " none";
  for (const auto& [t, m] : r.mode_timeline) os << " t=" << format_fixed(t, 3) << ":" << to_string(m);
  os << "\nidle weapons:";
  if (r.idle_weapons.empty()) os << " none";
  for (const auto& w : r.idle_weapons) os << " " << w;
  os << "\n";
  return os.str();
}

/// Both policies on the same scenario and seed.
struct ComparisonRow {
  std::uint64_t seed = 0;
  SimReport two_stage;
  SimReport greedy;

  bool greedy_covers_fewer() const { return greedy.covered < two_stage.covered; }
};

inline Json to_json(const std::vector<ComparisonRow>& rows) {
  Json j;
  Json arr = Json::array();
  double sums[2][4] = {};
  for (const auto& row : rows) {
    auto metrics = [](const SimReport& r) {
      return Json{{"covered", r.covered},
                  {"leakers", r.leakers},
                  {"survival", r.total_survival()},
                  {"shots", r.shots}};
    };
    arr.push_back({{"seed", row.seed},
                   {"two_stage", metrics(row.two_stage)},
                   {"greedy", metrics(row.greedy)},
                   {"greedy_covers_fewer", row.greedy_covers_fewer()}});
    const SimReport* rs[2] = {&row.two_stage, &row.greedy};
    for (int p = 0; p < 2; ++p) {
      sums[p][0] += rs[p]->covered;
      sums[p][1] += rs[p]->leakers;
      sums[p][2] += rs[p]->total_survival();
      sums[p][3] += rs[p]->shots;
    }
  }
  j["runs"] = arr;
  const double n = rows.empty() ? 1.0 : static_cast<double>(rows.size());
  auto means = [&](int p) {
    return Json{{"covered", sums[p][0] / n}, {"leakers", sums[p][1] / n}, {"survival", sums[p][2] / n},
                {"shots", sums[p][3] / n}};
  };
  j["mean"] = {{"two_stage", means(0)}, {"greedy", means(1)}};
  return j;
}

inline std::string to_text(const std::vector<ComparisonRow>& rows) {
  using detail::padded;
  using detail::right;
  std::ostringstream os;
  os << padded("seed", 12) << padded("policy", 11) << right("covered", 9) << right("leakers", 9)
     << right("survival", 10) << right("shots", 7) << "  flag\n";
  double sums[2][4] = {};
  for (const auto& row : rows) {
    const SimReport* rs[2] = {&row.two_stage, &row.greedy};
    for (int p = 0; p < 2; ++p) {
      const SimReport& r = *rs[p];
      os << padded(std::to_string(row.seed), 12) << padded(std::string(to_string(r.policy)), 11)
         << right(std::to_string(r.covered), 9) << right(std::to_string(r.leakers), 9)
         << right(format_fixed(r.total_survival(), 4), 10) << right(std::to_string(r.shots), 7);
      if (p == 1 && row.greedy_covers_fewer()) os << "  GREEDY_COVERS_FEWER";
      os << "\n";
      sums[p][0] += r.covered;
      sums[p][1] += r.leakers;
      sums[p][2] += r.total_survival();
      sums[p][3] += r.shots;
    }
  }
  const double n = rows.empty() ? 1.0 : static_cast<double>(rows.size());
  const char* names[2] = {"two-stage", "greedy"};
  for (int p = 0; p < 2; ++p)
    os << padded("mean", 12) << padded(names[p], 11) << right(format_fixed(sums[p][0] / n, 2), 9)
       << right(format_fixed(sums[p][1] / n, 2), 9) << right(format_fixed(sums[p][2] / n, 4), 10)
       << right(format_fixed(sums[p][3] / n, 2), 7) << "\n";
  return os.str();
}

}  // namespace tewa
