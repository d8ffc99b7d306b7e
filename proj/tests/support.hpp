#pragma once

// Helpers shared by the test binaries: fixture paths, small scenario
// builders and brute-force oracles.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "tewa/tewa.hpp"

namespace tewa::test {

inline std::filesystem::path data_file(const std::string& name) { return std::filesystem::path(TEWA_DATA_DIR) / name; }

#ifdef TEWA_TEST_DATA_DIR
inline std::filesystem::path test_data_file(const std::string& name) {
  return std::filesystem::path(TEWA_TEST_DATA_DIR) / name;
}
#endif

inline Scenario fixture(const std::string& name) { return load_scenario_file(data_file(name)); }

/// Deterministic uniform doubles for property tests.
class Draw {
 public:
  explicit Draw(std::uint64_t seed) : rng_(seed) {}
  double operator()(double lo, double hi) { return lo + (hi - lo) * rng_.uniform(); }
  int integer(int lo, int hi) { return lo + static_cast<int>(std::floor((*this)(0.0, 1.0) * (hi - lo + 1))); }
  bool coin(double p = 0.5) { return rng_.bernoulli(p); }

 private:
  Rng rng_;
};

/// Every matching that respects capacities and allowed pairs.
inline std::vector<Matching> all_matchings(const MatchInstance& inst) {
  std::vector<Matching> out;
  Matching cur;
  cur.partner.assign(inst.proposer_count(), std::nullopt);
  std::vector<int> load(inst.acceptor_count(), 0);
  std::function<void(std::size_t)> rec = [&](std::size_t p) {
    if (p == inst.proposer_count()) {
      out.push_back(cur);
      return;
    }
    cur.partner[p].reset();
    rec(p + 1);
    for (std::size_t a = 0; a < inst.acceptor_count(); ++a) {
      if (!inst.allowed(p, a) || load[a] >= inst.capacity(a)) continue;
      ++load[a];
      cur.partner[p] = a;
      rec(p + 1);
      --load[a];
      cur.partner[p].reset();
    }
  };
  rec(0);
  return out;
}

/// Blocking-pair test written independently of is_stable.
inline bool brute_force_stable(const MatchInstance& inst, const Matching& m) {
  for (std::size_t p = 0; p < inst.proposer_count(); ++p) {
    for (std::size_t a = 0; a < inst.acceptor_count(); ++a) {
      if (!inst.allowed(p, a) || m.partner[p] == a) continue;
      const bool p_wants = !m.partner[p] || inst.proposer_prefers(p, a, *m.partner[p]);
      if (!p_wants) continue;
      std::vector<std::size_t> held;
      for (std::size_t q = 0; q < inst.proposer_count(); ++q)
        if (m.partner[q] == a) held.push_back(q);
      if (static_cast<int>(held.size()) < inst.capacity(a)) return false;
      for (std::size_t q : held)
        if (inst.acceptor_prefers(a, p, q)) return false;
    }
  }
  return true;
}

/// Random instance with strict, distinct weights.
inline MatchInstance random_instance(Draw& draw, std::size_t np, std::size_t na, double density = 0.7,
                                     int max_capacity = 2) {
  MatchInstance inst(np, na);
  for (std::size_t p = 0; p < np; ++p)
    for (std::size_t a = 0; a < na; ++a)
      if (draw.coin(density)) inst.allow(p, a, draw(0.0, 1.0));
  for (std::size_t a = 0; a < na; ++a) inst.set_capacity(a, draw.integer(1, max_capacity));
  return inst;
}

/// A track flying a straight line from `from` at time t0 with the given
/// velocity, evaluated at t = t0.
inline ThreatTrack straight_track(const std::string& id, const std::string& type, Point2 from, Vec2 velocity,
                                  double altitude = 500.0, double duration = 1000.0) {
  ThreatTrack tr;
  tr.id = id;
  tr.threat_type = type;
  tr.waypoints = {{0.0, from, altitude}, {duration, from + velocity * duration, altitude}};
  step_kinematics(tr, 0.0);
  return tr;
}

inline WeaponSystem make_ws(const std::string& id, const std::string& da, Point2 at, const std::string& type,
                            double max_range = 8000.0, double min_range = 100.0) {
  WeaponSystem ws;
  ws.id = id;
  ws.da_id = da;
  ws.position = at;
  ws.weapon_type = type;
  ws.sector.origin = at;
  ws.sector.min_range = min_range;
  ws.sector.max_range = max_range;
  ws.sector.max_elevation = 85.0 * std::numbers::pi / 180.0;
  ws.lethality_index = 1.0;
  ws.rof = 1.0;
  ws.stabilization_time = 2.0;
  ws.projectile_speed = 1000.0;
  return ws;
}

inline DefendedAsset make_da(const std::string& id, Point2 at, double radius = 500.0, double priority = 1.0) {
  DefendedAsset da;
  da.id = id;
  da.footprint = {at, radius};
  da.priority = priority;
  da.vulnerability_index = 0.5;
  return da;
}

/// One threat type "jet" and the given weapon types, all with correlation c.
inline Catalog simple_catalog(const std::vector<std::string>& weapons, double c = 1.0) {
  Json doc;
  doc["threat_types"] = Json::array({{{"id", "jet"}, {"base_capability", 0.8}, {"speed_min", 100}, {"speed_max", 400}}});
  doc["weapon_types"] = Json::array();
  doc["correlation"] = Json::array();
  for (const auto& w : weapons) {
    doc["weapon_types"].push_back(
        {{"id", w}, {"lethality_index", 1.0}, {"projectile_speed", 1000}, {"rof", 1}, {"stabilization_time", 2}});
    doc["correlation"].push_back({{"weapon", w}, {"threat", "jet"}, {"effectiveness", c}});
  }
  return load_catalogs(doc);
}

/// Fields of one event log line.
struct ParsedEvent {
  double t = 0.0;
  std::string kind, src, dst;
  std::map<std::string, std::string> data;
};

inline std::vector<ParsedEvent> parse_log(const EventLog& log) {
  std::vector<ParsedEvent> out;
  for (const auto& e : log.events()) {
    ParsedEvent pe;
    pe.t = e.t;
    pe.kind = std::string(to_string(e.kind));
    pe.src = e.src;
    pe.dst = e.dst;
    for (const auto& [k, v] : e.data) pe.data[k] = v;
    out.push_back(std::move(pe));
  }
  return out;
}

/// Lock-only assignments at one instant: each threat gets at most one weapon
/// from its candidate set and each weapon locks at most one threat.
struct LockEnumeration {
  std::vector<std::string> threats;
  std::map<std::string, std::vector<std::string>> candidates;  // threat -> weapons
  std::vector<std::map<std::string, std::string>> assignments;  // every feasible one
  std::vector<std::map<std::string, std::string>> covering;     // those locking every threat
};

inline LockEnumeration enumerate_locks(const Scenario& sc, double t) {
  LockEnumeration out;
  std::vector<ThreatTrack> tracks = sc.tracks;
  AssignmentState empty(sc.weapon_systems);
  for (auto& tr : tracks) {
    if (step_kinematics(tr, t) != TrackPhase::Active) continue;
    out.threats.push_back(tr.id);
    auto& row = out.candidates[tr.id];
    for (const auto& da : sc.das)
      for (const auto& plan : candidate_ws_set(tr, da, sc.weapon_systems, sc.catalog, empty, sc.config.wa))
        row.push_back(plan.ws_id);
  }
  std::map<std::string, std::string> cur;
  std::set<std::string> used;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == out.threats.size()) {
      out.assignments.push_back(cur);
      if (cur.size() == out.threats.size()) out.covering.push_back(cur);
      return;
    }
    const auto& th = out.threats[i];
    rec(i + 1);
    for (const auto& ws : out.candidates[th]) {
      if (used.count(ws)) continue;
      used.insert(ws);
      cur[th] = ws;
      rec(i + 1);
      cur.erase(th);
      used.erase(ws);
    }
  };
  rec(0);
  return out;
}

/// Threat -> locking weapon after the first decision cycle of a policy.
inline std::map<std::string, std::string> first_cycle_locks(const Scenario& sc, Policy policy) {
  Engine eng(sc, policy);
  eng.decision_cycle();
  std::map<std::string, std::string> out;
  for (const auto& [ws, s] : eng.state().all_slots())
    if (s.locked) out[*s.locked] = ws;
  return out;
}

}  // namespace tewa::test
