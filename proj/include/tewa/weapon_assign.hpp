#pragma once

// Weapon assignment: candidate weapon systems per DA-paired threat,
// engagement geometry for each temporary pairing, pair weights, and the
// best-first proposal protocol over lock / queue slots.
//
// Scheduling constraints kept by AssignmentState:
//   - a weapon system holds at most two threats, one locked and one queued;
//   - a threat is scheduled on at most one weapon system, so every locked
//     threat is locked by exactly one;
//   - proposals are only sent along capability-gated candidate pairs.

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "tewa/catalog.hpp"
#include "tewa/events.hpp"
#include "tewa/fuzzy.hpp"
#include "tewa/geometry.hpp"
#include "tewa/threat_eval.hpp"
#include "tewa/types.hpp"

namespace tewa {

struct WeaponSystem {
  std::string id;
  std::string da_id;
  Point2 position;
  WSSector sector;  // sector.origin == position
  std::string weapon_type;
  double lethality_index = 1.0;
  double rof = 1.0;                 // rounds/s
  double stabilization_time = 1.0;  // s
  double projectile_speed = 1.0;    // m/s
  Condition condition = Condition::Up;
  Status status = Status::FreeToFire;
  double load = 0.0;

  bool operational() const { return condition == Condition::Up; }
};

struct EngagementPlan {
  std::string threat_id;
  std::string ws_id;
  Point2 entry;
  Point2 exit;
  double entry_time = 0.0;  // s from now
  double exit_time = 0.0;
  double intercept_time = 0.0;  // s from now until the projectile meets the threat
  double launch_delay = 0.0;    // s from now until the round must leave
  double tof = 0.0;
  double required_elevation = 0.0;
  Point2 launch_point;  // predicted threat position at intercept
  double distance = 0.0;  // current range from the weapon
  double pair_weight = 0.0;
};

struct WAConfig {
  double min_capability = 0.2;  // correlation threshold for the weapon preference list

  double ws_time_weight = 0.2;
  double ws_elevation_weight = 0.2;
  double ws_lethality_weight = 0.2;
  double ws_stabilization_weight = 0.2;
  double ws_rof_weight = 0.2;

  TimeScale time_scale{5.0, 300.0};
  TimeScale stabilization_scale{1.0, 30.0};
  double rof_full = 10.0;  // rounds/s scoring 1

  void validate() const {
    for (double v : {min_capability, ws_time_weight, ws_elevation_weight, ws_lethality_weight, ws_stabilization_weight,
                     ws_rof_weight})
      if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("weapon assignment weights must lie in [0, 1]");
    if (!(rof_full > 0.0)) throw std::invalid_argument("rof_full must be positive");
    for (const auto& s : {time_scale, stabilization_scale})
      if (!(s.full >= 0.0 && s.full < s.zero)) throw std::invalid_argument("time scale requires 0 <= full < zero");
  }
};

/// Engagement geometry for one threat/weapon pairing, or nothing when the
/// threat never offers a reachable intercept inside the sector.
///
/// The intercept is the earliest time T inside the sector window at which a
/// round launched no earlier than now can meet the threat: T is the later of
/// the sector entry time and the fire-now lead solution.
inline std::optional<EngagementPlan> plan_engagement(const ThreatTrack& threat, const WeaponSystem& ws) {
  const WSSector& sector = ws.sector;
  EngagementPlan plan;
  plan.threat_id = threat.id;
  plan.ws_id = ws.id;
  plan.distance = euclidean_distance(threat.position, sector.origin);

  if (threat.speed > 0.0) {
    auto window = sector_entry_exit(threat.position, threat.heading, threat.speed, sector);
    if (!window || !(window->entry_time < window->exit_time)) return std::nullopt;
    plan.entry = window->entry;
    plan.exit = window->exit;
    plan.entry_time = window->entry_time;
    plan.exit_time = window->exit_time;
  } else {
    if (!sector.contains(threat.position)) return std::nullopt;
    plan.entry = plan.exit = threat.position;
    plan.entry_time = 0.0;
    plan.exit_time = std::numeric_limits<double>::infinity();
  }

  // Smallest positive root of |w + v t| = s t, ignoring the sector.
  const Vec2 w = threat.position - sector.origin;
  const Vec2 v = threat.velocity;
  const double s = ws.projectile_speed;
  const double a = dot(v, v) - s * s;
  const double b = 2.0 * dot(w, v);
  const double c = dot(w, w);
  std::optional<double> lead;
  auto consider = [&](double t) {
    if (t > 0.0 && std::isfinite(t) && (!lead || t < *lead)) lead = t;
  };
  if (std::abs(a) <= 1e-12 * std::max(dot(v, v), s * s)) {
    if (b != 0.0) consider(-c / b);
  } else if (const double disc = b * b - 4.0 * a * c; disc >= 0.0) {
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    if (q != 0.0) {
      consider(q / a);
      consider(c / q);
    }
  }
  if (!lead) return std::nullopt;

  const double t_hit = std::max(plan.entry_time, *lead);
  if (t_hit > plan.exit_time) return std::nullopt;
  const Point2 hit = threat.position + v * t_hit;
  const double range = euclidean_distance(hit, sector.origin);
  if (range > s * t_hit * (1.0 + 1e-9)) return std::nullopt;
  if (!sector.contains(hit)) return std::nullopt;

  const double altitude = std::max(0.0, threat.altitude + threat.climb_rate * t_hit);
  plan.required_elevation = required_elevation(range, altitude);
  if (plan.required_elevation > sector.max_elevation) return std::nullopt;
  plan.intercept_time = t_hit;
  plan.tof = range / s;
  plan.launch_delay = std::max(0.0, t_hit - plan.tof);
  plan.launch_point = hit;
  return plan;
}

/// Normalized terms entering the weapon/threat pair weight.
struct WSPairTerms {
  double time = 0.0;           // inverse time-to-WS
  double elevation = 0.0;      // 1 - required / max elevation
  double lethality = 0.0;
  double stabilization = 0.0;  // inverse stabilization time
  double rof = 0.0;
};

inline WSPairTerms ws_pair_terms(const EngagementPlan& plan, const WeaponSystem& ws, const WAConfig& cfg = {}) {
  WSPairTerms t;
  t.time = cfg.time_scale.score(plan.entry_time);
  t.elevation = ws.sector.max_elevation > 0.0 ? fuzzy::clamp01(1.0 - plan.required_elevation / ws.sector.max_elevation)
                                              : 1.0;
  t.lethality = fuzzy::clamp01(ws.lethality_index);
  t.stabilization = cfg.stabilization_scale.score(ws.stabilization_time);
  t.rof = fuzzy::ramp(ws.rof, 0.0, cfg.rof_full);
  return t;
}

inline double ws_pair_weight(const WSPairTerms& t, const WAConfig& cfg = {}) {
  return fuzzy::weighted_mean({{cfg.ws_time_weight, t.time},
                               {cfg.ws_elevation_weight, t.elevation},
                               {cfg.ws_lethality_weight, t.lethality},
                               {cfg.ws_stabilization_weight, t.stabilization},
                               {cfg.ws_rof_weight, t.rof}});
}

inline double ws_pair_weight(const EngagementPlan& plan, const WeaponSystem& ws, const WAConfig& cfg = {}) {
  return ws_pair_weight(ws_pair_terms(plan, ws, cfg), cfg);
}

/// Lock/queue slots of every weapon system plus this cycle's proposals.
class AssignmentState {
 public:
  struct Slots {
    std::optional<std::string> locked;
    std::optional<std::string> queued;
    double lock_time = 0.0;  // when the current lock began (stabilization clock)
  };

  enum class Acceptance { Locked, Queued, Rejected };

  AssignmentState() = default;
  explicit AssignmentState(const std::vector<WeaponSystem>& wss) {
    for (const auto& ws : wss) slots_[ws.id];
  }

  const Slots& slots(const std::string& ws) const { return slots_.at(ws); }
  const std::map<std::string, Slots>& all_slots() const { return slots_; }

  int scheduled_count(const std::string& ws) const {
    const auto& s = slots_.at(ws);
    return static_cast<int>(s.locked.has_value()) + static_cast<int>(s.queued.has_value());
  }

  /// Scheduled_{j,k}, Locked_{j,k} and proposal_{j,k} as 0/1.
  int scheduled(const std::string& ws, const std::string& threat) const {
    const auto& s = slots_.at(ws);
    return (s.locked == threat || s.queued == threat) ? 1 : 0;
  }
  int locked(const std::string& ws, const std::string& threat) const { return slots_.at(ws).locked == threat ? 1 : 0; }
  int proposal(const std::string& ws, const std::string& threat) const { return proposals_.count({ws, threat}) ? 1 : 0; }

  const std::set<std::pair<std::string, std::string>>& proposals() const { return proposals_; }

  /// Weapon system holding the threat, if any.
  std::optional<std::string> ws_of(const std::string& threat) const {
    for (const auto& [id, s] : slots_)
      if (s.locked == threat || s.queued == threat) return id;
    return std::nullopt;
  }

  bool is_scheduled(const std::string& threat) const { return ws_of(threat).has_value(); }
  bool is_locked(const std::string& threat) const {
    for (const auto& [id, s] : slots_)
      if (s.locked == threat) return true;
    return false;
  }

  void record_proposal(const std::string& ws, const std::string& threat) { proposals_.insert({ws, threat}); }
  void clear_proposals() { proposals_.clear(); }

  /// Empty lock slot takes the threat; otherwise an empty queue slot; otherwise reject.
  Acceptance offer(const std::string& ws, const std::string& threat, double t) {
    auto& s = slots_.at(ws);
    if (!s.locked) {
      s.locked = threat;
      s.lock_time = t;
      return Acceptance::Locked;
    }
    if (!s.queued) {
      s.queued = threat;
      return Acceptance::Queued;
    }
    return Acceptance::Rejected;
  }

  /// Clears the lock; the queued threat, if any, moves up and is returned.
  std::optional<std::string> release_lock(const std::string& ws, double t) {
    auto& s = slots_.at(ws);
    s.locked = std::move(s.queued);
    s.queued.reset();
    if (s.locked) s.lock_time = t;
    return s.locked;
  }

  /// Removes the threat wherever it is scheduled. Returns the promoted
  /// threat when a lock was freed and the queue moved up.
  std::optional<std::pair<std::string, std::string>> drop(const std::string& threat, double t) {
    for (auto& [id, s] : slots_) {
      if (s.queued == threat) {
        s.queued.reset();
        return std::nullopt;
      }
      if (s.locked == threat) {
        if (auto promoted = release_lock(id, t)) return std::make_pair(id, *promoted);
        return std::nullopt;
      }
    }
    return std::nullopt;
  }

  /// Empties both slots of a weapon system; returns the threats it held.
  std::vector<std::string> clear(const std::string& ws) {
    auto& s = slots_.at(ws);
    std::vector<std::string> out;
    if (s.locked) out.push_back(*s.locked);
    if (s.queued) out.push_back(*s.queued);
    s = Slots{};
    return out;
  }

  /// Human-readable list of every violated scheduling constraint.
  std::vector<std::string> violations(const std::vector<WeaponSystem>& wss) const {
    std::vector<std::string> out;
    std::map<std::string, int> lock_count;
    std::map<std::string, int> schedule_count;
    for (const auto& [id, s] : slots_) {
      if (s.locked && s.queued && *s.locked == *s.queued) out.push_back(id + ": same threat locked and queued");
      if (s.queued && !s.locked) out.push_back(id + ": queued threat without a lock");
      if (scheduled_count(id) > 2) out.push_back(id + ": more than two threats scheduled");
      if (s.locked) {
        ++lock_count[*s.locked];
        ++schedule_count[*s.locked];
      }
      if (s.queued) ++schedule_count[*s.queued];
    }
    for (const auto& [threat, n] : lock_count)
      if (n != 1) out.push_back(threat + ": locked by " + std::to_string(n) + " weapon systems");
    for (const auto& [threat, n] : schedule_count)
      if (n > 1) out.push_back(threat + ": scheduled on " + std::to_string(n) + " weapon systems");
    for (const auto& ws : wss) {
      auto it = slots_.find(ws.id);
      if (it == slots_.end()) {
        out.push_back(ws.id + ": missing from assignment state");
        continue;
      }
      if (!ws.operational() && (it->second.locked || it->second.queued))
        out.push_back(ws.id + ": non-operational weapon holds targets");
    }
    return out;
  }

 private:
  std::map<std::string, Slots> slots_;
  std::set<std::pair<std::string, std::string>> proposals_;
};

/// Plans for every weapon system of the DA that can take the threat: weapon
/// type on the threat's preference list, Up, FreeToFire, fewer than two
/// scheduled, and with a reachable intercept inside its sector.
inline std::vector<EngagementPlan> candidate_ws_set(const ThreatTrack& threat, const DefendedAsset& da,
                                                    const std::vector<WeaponSystem>& wss, const Catalog& catalog,
                                                    const AssignmentState& state, const WAConfig& cfg = {}) {
  const auto preferred = preference_list(threat.threat_type, catalog.correlation(), cfg.min_capability);
  std::vector<EngagementPlan> out;
  for (const auto& ws : wss) {
    if (ws.da_id != da.id) continue;
    if (std::find(preferred.begin(), preferred.end(), ws.weapon_type) == preferred.end()) continue;
    if (!ws.operational() || ws.status != Status::FreeToFire) continue;
    if (state.scheduled_count(ws.id) >= 2) continue;
    auto plan = plan_engagement(threat, ws);
    if (!plan) continue;
    plan->pair_weight = ws_pair_weight(*plan, ws, cfg);
    out.push_back(std::move(*plan));
  }
  return out;
}

inline Mode select_mode(std::size_t total_threats, std::size_t total_lock_capacity) {
  return total_threats <= total_lock_capacity ? Mode::Subtractive : Mode::Preferential;
}

/// One threat with its DA pairing, in processing order.
struct WATask {
  const ThreatTrack* threat = nullptr;
  const DefendedAsset* da = nullptr;
};

struct WAResult {
  std::vector<EngagementPlan> accepted;
  std::vector<std::string> unassigned;
  std::size_t proposals = 0;
  std::size_t rejections = 0;
};

namespace detail {

inline const WeaponSystem& find_ws(const std::vector<WeaponSystem>& wss, const std::string& id) {
  for (const auto& ws : wss)
    if (ws.id == id) return ws;
  throw std::out_of_range("unknown weapon system '" + id + "'");
}

inline std::string fmt4(double v) { return format_fixed(v, 4); }

}  // namespace detail

/// Best-first proposals for each threat in order.
///
/// Candidate sets (the temporary pairings) are formed for all threats
/// before any proposal is sent, so a weapon that fills up during the cycle
/// rejects later proposals and the threat moves on to its next pairing.
inline WAResult wa_assign(const std::vector<WATask>& tasks, const std::vector<WeaponSystem>& wss,
                          const Catalog& catalog, AssignmentState& state, const WAConfig& cfg = {}, double t = 0.0,
                          EventLog* log = nullptr) {
  WAResult res;
  std::vector<std::vector<EngagementPlan>> pairings(tasks.size());
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!tasks[i].threat->alive || state.is_scheduled(tasks[i].threat->id)) continue;
    pairings[i] = candidate_ws_set(*tasks[i].threat, *tasks[i].da, wss, catalog, state, cfg);
    std::stable_sort(pairings[i].begin(), pairings[i].end(), [](const auto& a, const auto& b) {
      if (a.pair_weight != b.pair_weight) return a.pair_weight > b.pair_weight;
      return a.ws_id < b.ws_id;
    });
  }

  for (std::size_t i = 0; i < tasks.size(); ++i) {
    const ThreatTrack& threat = *tasks[i].threat;
    if (!threat.alive || state.is_scheduled(threat.id)) continue;
    bool placed = false;
    for (const auto& plan : pairings[i]) {
      state.record_proposal(plan.ws_id, threat.id);
      ++res.proposals;
      if (log) log->emit(t, EventKind::Propose, threat.id, plan.ws_id, {{"w", detail::fmt4(plan.pair_weight)}});
      const auto outcome = state.offer(plan.ws_id, threat.id, t);
      if (outcome == AssignmentState::Acceptance::Rejected) {
        ++res.rejections;
        if (log) log->emit(t, EventKind::Reject, plan.ws_id, threat.id);
        continue;
      }
      const bool locked = outcome == AssignmentState::Acceptance::Locked;
      if (log) {
        log->emit(t, EventKind::Accept, plan.ws_id, threat.id, {{"slot", locked ? "lock" : "queue"}});
        log->emit(t, locked ? EventKind::Lock : EventKind::Queue, plan.ws_id, threat.id, {{"da", tasks[i].da->id}});
      }
      res.accepted.push_back(plan);
      placed = true;
      break;
    }
    if (!placed) res.unassigned.push_back(threat.id);
  }
  return res;
}

}  // namespace tewa
