#pragma once

// Deterministic discrete-time scenario engine.
//
// Every tick runs one Observe / Orient / Decide / Act cycle:
//   Observe  advance tracks, resolve rounds that reached their target,
//            record leakers, detect new threats, revalidate locks;
//   Orient   capability / intent indices and the defence mode;
//   Decide   threat-to-DA pairing then weapon assignment (or the greedy
//            baseline);
//   Act      fire every locked weapon whose stabilization and rate-of-fire
//            clocks allow and whose fire-now intercept lies in its sector.
// A weapon keeps at most one round in flight and looks at the outcome
// before firing again (shoot-look-shoot).

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tewa/baseline_greedy.hpp"
#include "tewa/events.hpp"
#include "tewa/rng.hpp"
#include "tewa/scenario.hpp"
#include "tewa/threat_eval.hpp"
#include "tewa/weapon_assign.hpp"

namespace tewa {

enum class Policy { TwoStage, Greedy };

inline std::string_view to_string(Policy p) { return p == Policy::TwoStage ? "two-stage" : "greedy"; }

inline std::optional<Policy> parse_policy(std::string_view s) {
  if (s == "two-stage") return Policy::TwoStage;
  if (s == "greedy") return Policy::Greedy;
  return std::nullopt;
}

enum class TrackPhase { NotStarted, Active, Exited };

/// Positions the track at time t by linear interpolation between the
/// bracketing waypoints; velocity and climb rate are the finite differences
/// of that segment. At an interior waypoint the outgoing segment is used.
inline TrackPhase step_kinematics(ThreatTrack& track, double t) {
  const auto& wps = track.waypoints;
  if (wps.empty()) throw std::invalid_argument("track '" + track.id + "' has no waypoints");
  if (t < wps.front().t) {
    track.position = wps.front().position;
    track.altitude = wps.front().altitude;
    track.velocity = {};
    track.speed = 0.0;
    track.heading = {};
    track.climb_rate = 0.0;
    return TrackPhase::NotStarted;
  }
  if (wps.size() == 1) {
    track.position = wps.front().position;
    track.altitude = wps.front().altitude;
    track.velocity = {};
    track.speed = 0.0;
    track.heading = {};
    track.climb_rate = 0.0;
    return TrackPhase::Active;
  }
  if (t > wps.back().t) return TrackPhase::Exited;

  std::size_t i = 0;
  while (i + 2 < wps.size() && t >= wps[i + 1].t) ++i;
  const Waypoint& a = wps[i];
  const Waypoint& b = wps[i + 1];
  const double dt = b.t - a.t;
  const double u = (t - a.t) / dt;
  track.position = a.position + (b.position - a.position) * u;
  track.altitude = a.altitude + (b.altitude - a.altitude) * u;
  track.velocity = (b.position - a.position) * (1.0 / dt);
  track.speed = norm(track.velocity);
  track.heading = track.speed > 0.0 ? track.velocity * (1.0 / track.speed) : Vec2{};
  track.climb_rate = (b.altitude - a.altitude) / dt;
  return TrackPhase::Active;
}

enum class ShotResult { Kill, Miss };

/// Success probability of one round: weapon lethality times the
/// weapon/threat correlation.
inline double shot_kill_probability(const WeaponSystem& ws, const ThreatTrack& threat, const Catalog& catalog) {
  return fuzzy::clamp01(ws.lethality_index * catalog.effectiveness(ws.weapon_type, threat.threat_type));
}

inline ShotResult adjudicate_shot(const WeaponSystem& ws, const ThreatTrack& threat, const Catalog& catalog, Rng& rng) {
  return rng.bernoulli(shot_kill_probability(ws, threat, catalog)) ? ShotResult::Kill : ShotResult::Miss;
}

struct ThreatRecord {
  std::string id;
  Outcome outcome = Outcome::Active;
  double resolved_at = 0.0;
  bool detected = false;
  double detection_time = 0.0;
  bool allocated_da = false;  // paired with a DA on some cycle
  bool locked = false;        // locked by a weapon on some cycle
  bool queued = false;        // waited in a weapon queue on some cycle
  int shots = 0;
  std::string leaked_into;    // DA id, empty when exited or not leaked
};

struct DARecord {
  std::string id;
  double priority = 0.0;
  double survival_value = 0.0;    // priority times the undamaged fraction
  double kill_probability = 1.0;  // last evaluated product over its threats
  int threats_allocated = 0;      // distinct threats ever paired with it
};

struct SimReport {
  std::string scenario;
  std::uint64_t seed = 0;
  Policy policy = Policy::TwoStage;
  std::vector<DARecord> das;
  std::vector<ThreatRecord> threats;
  int shots = 0;
  int kills = 0;
  int misses = 0;
  int voided = 0;  // rounds whose target was already resolved at impact
  int destroyed = 0;
  int leakers = 0;
  int active = 0;
  int allocated = 0;  // threats ever paired with a DA
  int locked = 0;     // threats ever locked by a weapon
  int covered = 0;    // threats at least one round was fired at
  int queued = 0;     // threats that ever waited in a queue
  int leak_risk_events = 0;
  std::vector<std::pair<double, Mode>> mode_timeline;
  std::vector<std::string> idle_weapons;
  int cycles = 0;
  double end_time = 0.0;
  double max_cycle_ms = 0.0;
  double mean_cycle_ms = 0.0;

  double total_survival() const {
    double s = 0.0;
    for (const auto& d : das) s += d.survival_value;
    return s;
  }

  std::optional<Mode> final_mode() const {
    if (mode_timeline.empty()) return std::nullopt;
    return mode_timeline.back().second;
  }

  bool ever_in(Mode m) const {
    return std::any_of(mode_timeline.begin(), mode_timeline.end(), [&](const auto& e) { return e.second == m; });
  }
};

class Engine {
 public:
  /// Called after every decision cycle, once all constraints have been checked.
  using CycleHook = std::function<void(const Engine&)>;

  explicit Engine(Scenario scenario, Policy policy = Policy::TwoStage, std::optional<std::uint64_t> seed = {})
      : sc_(std::move(scenario)),
        policy_(policy),
        seed_(seed.value_or(sc_.config.seed)),
        rng_(seed_),
        state_(sc_.weapon_systems) {
    sc_.config.validate();
    for (const auto& tr : sc_.tracks) {
      if (tr.waypoints.empty()) throw std::invalid_argument("track '" + tr.id + "' has no waypoints");
      records_.push_back({});
      records_.back().id = tr.id;
    }
    da_damage_.assign(sc_.das.size(), 1.0);
    da_kp_.assign(sc_.das.size(), 1.0);
    da_allocated_.assign(sc_.das.size(), {});
    ws_.assign(sc_.weapon_systems.size(), {});
    assigned_da_.assign(sc_.tracks.size(), std::nullopt);
  }

  void set_cycle_hook(CycleHook hook) { hook_ = std::move(hook); }

  const Scenario& scenario() const { return sc_; }
  const AssignmentState& state() const { return state_; }
  const EventLog& log() const { return log_; }
  double time() const { return static_cast<double>(tick_) * sc_.config.tick; }
  Mode mode() const { return mode_.value_or(Mode::Subtractive); }
  Policy policy() const { return policy_; }

  /// DA index each track is currently paired with.
  const std::vector<std::optional<std::size_t>>& da_pairing() const { return assigned_da_; }
  const std::vector<ThreatRecord>& records() const { return records_; }

  bool finished() const {
    if (time() > sc_.config.horizon + 1e-9) return true;
    for (std::size_t k = 0; k < sc_.tracks.size(); ++k)
      if (records_[k].outcome == Outcome::Active) return false;
    return std::none_of(ws_.begin(), ws_.end(), [](const WsRuntime& w) { return w.shot.has_value(); });
  }

  /// One full decision cycle at the current time, then advance one tick.
  void decision_cycle() {
    const auto wall_start = std::chrono::steady_clock::now();
    const double t = time();
    observe(t);
    orient(t);
    decide(t);
    check_constraints(t);
    act(t);
    const auto wall = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - wall_start).count();
    max_cycle_ms_ = std::max(max_cycle_ms_, wall);
    total_cycle_ms_ += wall;
    ++cycles_;
    if (hook_) hook_(*this);
    ++tick_;
  }

  SimReport run() {
    while (!finished()) decision_cycle();
    return report();
  }

  SimReport report() const {
    SimReport r;
    r.scenario = sc_.name;
    r.seed = seed_;
    r.policy = policy_;
    for (std::size_t i = 0; i < sc_.das.size(); ++i) {
      DARecord d;
      d.id = sc_.das[i].id;
      d.priority = sc_.das[i].priority;
      d.survival_value = sc_.das[i].priority * da_damage_[i];
      d.kill_probability = da_kp_[i];
      d.threats_allocated = static_cast<int>(da_allocated_[i].size());
      r.das.push_back(d);
    }
    r.threats = records_;
    for (const auto& rec : records_) {
      r.destroyed += rec.outcome == Outcome::Destroyed;
      r.leakers += rec.outcome == Outcome::Leaker;
      r.active += rec.outcome == Outcome::Active;
      r.allocated += rec.allocated_da;
      r.locked += rec.locked;
      r.covered += rec.shots > 0;
      r.queued += rec.queued;
    }
    r.shots = shots_;
    r.kills = kills_;
    r.misses = misses_;
    r.voided = voided_;
    r.leak_risk_events = leak_risk_;
    r.mode_timeline = mode_timeline_;
    for (std::size_t j = 0; j < sc_.weapon_systems.size(); ++j)
      if (!ws_[j].ever_locked) r.idle_weapons.push_back(sc_.weapon_systems[j].id);
    r.cycles = cycles_;
    r.end_time = cycles_ > 0 ? time() - sc_.config.tick : 0.0;
    r.max_cycle_ms = max_cycle_ms_;
    r.mean_cycle_ms = cycles_ > 0 ? total_cycle_ms_ / cycles_ : 0.0;
    return r;
  }

 private:
  struct Shot {
    std::string threat;
    double impact_time = 0.0;
  };

  struct WsRuntime {
    std::optional<Shot> shot;
    double last_fire = -1e300;
    bool ever_locked = false;
  };

  std::optional<std::size_t> track_index(const std::string& id) const {
    for (std::size_t k = 0; k < sc_.tracks.size(); ++k)
      if (sc_.tracks[k].id == id) return k;
    return std::nullopt;
  }

  std::size_t ws_index(const std::string& id) const {
    for (std::size_t j = 0; j < sc_.weapon_systems.size(); ++j)
      if (sc_.weapon_systems[j].id == id) return j;
    throw std::out_of_range("unknown weapon system '" + id + "'");
  }

  bool live(std::size_t k) const { return records_[k].outcome == Outcome::Active && started_[k]; }

  /// Removes a threat from every slot, announcing any queue promotion.
  void unschedule(const std::string& threat, double t) {
    if (auto promoted = state_.drop(threat, t)) promote(promoted->first, promoted->second, t);
  }

  void promote(const std::string& ws, const std::string& threat, double t) {
    log_.emit(t, EventKind::Promote, ws, threat);
    ws_[ws_index(ws)].ever_locked = true;
    if (auto k = track_index(threat)) records_[*k].locked = true;
  }

  void resolve(std::size_t k, Outcome outcome, double t) {
    records_[k].outcome = outcome;
    records_[k].resolved_at = t;
    sc_.tracks[k].alive = false;
    if (assigned_da_[k]) sc_.das[*assigned_da_[k]].assigned_threats.erase(sc_.tracks[k].id);
    assigned_da_[k].reset();
    unschedule(sc_.tracks[k].id, t);
  }

  void observe(double t) {
    started_.assign(sc_.tracks.size(), false);
    for (std::size_t k = 0; k < sc_.tracks.size(); ++k) {
      if (records_[k].outcome != Outcome::Active) continue;
      const TrackPhase phase = step_kinematics(sc_.tracks[k], t);
      if (phase == TrackPhase::Exited) {
        log_.emit(t, EventKind::Leak, sc_.tracks[k].id, "-", {{"reason", "exited"}});
        resolve(k, Outcome::Leaker, t);
        continue;
      }
      started_[k] = phase == TrackPhase::Active;
    }

    // Rounds reaching their target this tick, in impact order.
    std::vector<std::size_t> due;
    for (std::size_t j = 0; j < ws_.size(); ++j)
      if (ws_[j].shot && ws_[j].shot->impact_time <= t + 1e-9) due.push_back(j);
    std::sort(due.begin(), due.end(), [&](std::size_t a, std::size_t b) {
      if (ws_[a].shot->impact_time != ws_[b].shot->impact_time)
        return ws_[a].shot->impact_time < ws_[b].shot->impact_time;
      return sc_.weapon_systems[a].id < sc_.weapon_systems[b].id;
    });
    for (std::size_t j : due) {
      const Shot shot = *ws_[j].shot;
      ws_[j].shot.reset();
      const auto k = track_index(shot.threat);
      if (!k || records_[*k].outcome != Outcome::Active) {
        ++voided_;
        continue;
      }
      const auto& ws = sc_.weapon_systems[j];
      const double p = shot_kill_probability(ws, sc_.tracks[*k], sc_.catalog);
      if (adjudicate_shot(ws, sc_.tracks[*k], sc_.catalog, rng_) == ShotResult::Kill) {
        ++kills_;
        log_.emit(t, EventKind::Kill, ws.id, shot.threat, {{"p", format_fixed(p)}});
        resolve(*k, Outcome::Destroyed, t);
      } else {
        ++misses_;
        log_.emit(t, EventKind::Miss, ws.id, shot.threat, {{"p", format_fixed(p)}});
      }
    }

    // Penetration of a defended asset.
    for (std::size_t k = 0; k < sc_.tracks.size(); ++k) {
      if (!live(k)) continue;
      for (std::size_t i = 0; i < sc_.das.size(); ++i) {
        if (!sc_.das[i].footprint.contains(sc_.tracks[k].position)) continue;
        log_.emit(t, EventKind::Leak, sc_.tracks[k].id, sc_.das[i].id, {{"reason", "penetrated"}});
        da_damage_[i] *= 1.0 - sc_.das[i].vulnerability_index;
        records_[k].leaked_into = sc_.das[i].id;
        resolve(k, Outcome::Leaker, t);
        break;
      }
    }

    // Weapons that went down drop their targets.
    for (const auto& ws : sc_.weapon_systems) {
      if (ws.operational()) continue;
      state_.clear(ws.id);
    }

    // Locks and queue entries whose geometry no longer allows an intercept.
    for (std::size_t j = 0; j < sc_.weapon_systems.size(); ++j) {
      const auto& ws = sc_.weapon_systems[j];
      for (int guard = 0; guard < 3; ++guard) {
        const auto slots = state_.slots(ws.id);
        bool changed = false;
        if (slots.queued && !still_engageable(*slots.queued, ws)) {
          state_.drop(*slots.queued, t);
          changed = true;
        }
        if (slots.locked && !ws_[j].shot && !still_engageable(*slots.locked, ws)) {
          if (auto promoted = state_.release_lock(ws.id, t)) promote(ws.id, *promoted, t);
          changed = true;
        }
        if (!changed) break;
      }
    }

    for (std::size_t k = 0; k < sc_.tracks.size(); ++k) {
      if (!live(k) || records_[k].detected) continue;
      ThreatTrack& tr = sc_.tracks[k];
      evaluate_indices(tr);
      if (tr.initial_threat_index >= sc_.config.te.initial_trigger) {
        records_[k].detected = true;
        records_[k].detection_time = t;
        tr.refined_threat_index = tr.initial_threat_index;
        log_.emit(t, EventKind::Detect, tr.id, "-", {{"iti", format_fixed(tr.initial_threat_index)}});
      }
    }
  }

  bool still_engageable(const std::string& threat, const WeaponSystem& ws) const {
    const auto k = track_index(threat);
    if (!k || records_[*k].outcome != Outcome::Active) return false;
    return plan_engagement(sc_.tracks[*k], ws).has_value();
  }

  /// CI, the best II over all DAs and the opportunity-based initial index.
  void evaluate_indices(ThreatTrack& tr) const {
    tr.capability_index = compute_capability_index(tr, sc_.catalog, sc_.config.te);
    double best_intent = 0.0;
    for (const auto& da : sc_.das) best_intent = std::max(best_intent, compute_intent_index(tr, da, sc_.config.te));
    tr.intent_index = best_intent;
    tr.initial_threat_index = opportunity_index(tr.intent_index, tr.capability_index, sc_.config.te);
  }

  std::vector<std::size_t> tracked() const {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < sc_.tracks.size(); ++k)
      if (live(k) && records_[k].detected) out.push_back(k);
    return out;
  }

  void orient(double t) {
    const auto active = tracked();
    for (std::size_t k : active) evaluate_indices(sc_.tracks[k]);
    if (active.empty()) return;
    std::size_t lock_capacity = 0;
    for (const auto& ws : sc_.weapon_systems) lock_capacity += ws.operational();
    const Mode m = select_mode(active.size(), lock_capacity);
    if (!mode_ || *mode_ != m) {
      mode_ = m;
      mode_timeline_.emplace_back(t, m);
      log_.emit(t, EventKind::Mode, "system", "-",
                {{"mode", std::string(to_string(m))},
                 {"threats", std::to_string(active.size())},
                 {"locks", std::to_string(lock_capacity)}});
    }
  }

  std::optional<std::size_t> da_of_ws(const std::string& ws_id) const {
    for (const auto& ws : sc_.weapon_systems) {
      if (ws.id != ws_id) continue;
      for (std::size_t i = 0; i < sc_.das.size(); ++i)
        if (sc_.das[i].id == ws.da_id) return i;
    }
    return std::nullopt;
  }

  void pair_with_da(std::size_t k, std::optional<std::size_t> da) {
    const std::string& id = sc_.tracks[k].id;
    if (assigned_da_[k] && assigned_da_[k] != da) sc_.das[*assigned_da_[k]].assigned_threats.erase(id);
    assigned_da_[k] = da;
    if (da) {
      sc_.das[*da].assigned_threats.insert(id);
      da_allocated_[*da].insert(id);
      records_[k].allocated_da = true;
    }
  }

  void decide(double t) {
    state_.clear_proposals();
    const auto active = tracked();
    if (active.empty()) {
      update_loads();
      return;
    }

    if (policy_ == Policy::TwoStage) {
      // Threats already on a weapon stay with that weapon's DA.
      std::vector<DALoad> loads(sc_.das.size());
      for (std::size_t i = 0; i < sc_.das.size(); ++i) {
        int up = 0;
        for (const auto& ws : sc_.weapon_systems)
          if (ws.da_id == sc_.das[i].id && ws.operational()) ++up;
        loads[i].capacity = up * sc_.config.te.da_capacity_per_ws;
      }
      std::vector<ThreatTrack> proposers;
      std::vector<std::size_t> proposer_track;
      for (std::size_t k : active) {
        if (auto ws = state_.ws_of(sc_.tracks[k].id)) {
          const auto da = da_of_ws(*ws);
          pair_with_da(k, da);
          if (da) ++loads[*da].occupied;
        } else {
          proposers.push_back(sc_.tracks[k]);
          proposer_track.push_back(k);
        }
      }
      const TEResult te = te_assign(proposers, sc_.das, loads, sc_.config.te, mode());
      for (std::size_t p = 0; p < proposers.size(); ++p) pair_with_da(proposer_track[p], te.da_of_threat[p]);
      leak_risk_ += static_cast<int>(te.leak_risk.size());

      for (std::size_t k : active) {
        ThreatTrack& tr = sc_.tracks[k];
        const DefendedAsset* da = assigned_da_[k] ? &sc_.das[*assigned_da_[k]] : nullptr;
        if (da) tr.intent_index = compute_intent_index(tr, *da, sc_.config.te);
        tr.refined_threat_index = refine_threat_index(tr, da, sc_.config.te);
      }

      std::vector<std::size_t> order;
      for (std::size_t k : active)
        if (assigned_da_[k] && !state_.is_scheduled(sc_.tracks[k].id)) order.push_back(k);
      std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& ta = sc_.tracks[a];
        const auto& tb = sc_.tracks[b];
        if (ta.refined_threat_index != tb.refined_threat_index) return ta.refined_threat_index > tb.refined_threat_index;
        return ta.id < tb.id;
      });
      std::vector<WATask> tasks;
      for (std::size_t k : order) tasks.push_back({&sc_.tracks[k], &sc_.das[*assigned_da_[k]]});
      const WAResult wa = wa_assign(tasks, sc_.weapon_systems, sc_.catalog, state_, sc_.config.wa, t, &log_);
      note_accepted(wa);
    } else {
      std::vector<GreedyTask> tasks;
      for (std::size_t k : active) {
        ThreatTrack& tr = sc_.tracks[k];
        tr.refined_threat_index = refine_threat_index(tr, nullptr, sc_.config.te);
        tasks.push_back({&tr, records_[k].detection_time});
      }
      const WAResult wa = greedy_assign(tasks, sc_.das, sc_.weapon_systems, sc_.catalog, state_, sc_.config.wa, t, &log_);
      note_accepted(wa);
      for (std::size_t k : active)
        if (auto ws = state_.ws_of(sc_.tracks[k].id)) pair_with_da(k, da_of_ws(*ws));
    }

    update_loads();
    evaluate_kill_probabilities(active);
  }

  void note_accepted(const WAResult& wa) {
    for (const auto& plan : wa.accepted) {
      const auto k = track_index(plan.threat_id);
      if (!k) continue;
      if (state_.locked(plan.ws_id, plan.threat_id)) {
        records_[*k].locked = true;
        ws_[ws_index(plan.ws_id)].ever_locked = true;
      } else {
        records_[*k].queued = true;
      }
    }
  }

  void update_loads() {
    for (auto& ws : sc_.weapon_systems) ws.load = ws.operational() ? state_.scheduled_count(ws.id) / 2.0 : 0.0;
  }

  /// Evaluates the kill probability product of each DA over its paired
  /// threats, using the weapon holding each threat (else the DA's best weapon).
  void evaluate_kill_probabilities(const std::vector<std::size_t>& active) {
    const auto& te = sc_.config.te;
    for (std::size_t i = 0; i < sc_.das.size(); ++i) {
      std::vector<KPInputs> inputs;
      for (std::size_t k : active) {
        if (assigned_da_[k] != i) continue;
        const ThreatTrack& tr = sc_.tracks[k];
        const WeaponSystem* chosen = nullptr;
        if (auto ws = state_.ws_of(tr.id)) chosen = &sc_.weapon_systems[ws_index(*ws)];
        if (!chosen) {
          for (const auto& ws : sc_.weapon_systems) {
            if (ws.da_id != sc_.das[i].id) continue;
            if (!chosen || sc_.catalog.effectiveness(ws.weapon_type, tr.threat_type) >
                               sc_.catalog.effectiveness(chosen->weapon_type, tr.threat_type))
              chosen = &ws;
          }
        }
        if (!chosen) continue;
        KPInputs in;
        in.w_intent = te.w_intent;
        in.w_capability = te.w_capability;
        in.w_load = te.w_load;
        in.intent = tr.intent_index;
        in.capability = tr.capability_index;
        in.load = chosen->load;
        in.correlation = sc_.catalog.effectiveness(chosen->weapon_type, tr.threat_type);
        in.exponent = te.kp_exponent;
        inputs.push_back(in);
      }
      da_kp_[i] = da_kill_probability(inputs);
    }
  }

  void check_constraints(double t) const {
    auto problems = state_.violations(sc_.weapon_systems);
    for (const auto& [ws_id, threat] : state_.proposals()) {
      const auto k = track_index(threat);
      if (!k || !assigned_da_[*k]) {
        problems.push_back("proposal " + ws_id + "->" + threat + " without a DA pairing");
        continue;
      }
      const auto& ws = sc_.weapon_systems[ws_index(ws_id)];
      if (sc_.catalog.effectiveness(ws.weapon_type, sc_.tracks[*k].threat_type) < sc_.config.wa.min_capability)
        problems.push_back("proposal " + ws_id + "->" + threat + " fails the capability gate");
    }
    for (const auto& da : sc_.das)
      if (da.status != Status::FreeToFire && !da.assigned_threats.empty())
        problems.push_back(da.id + ": threats paired with a DA that is not FreeToFire");
    if (!problems.empty()) {
      std::string msg = "constraint violation at t=" + format_fixed(t, 3) + ":";
      for (const auto& p : problems) msg += "\n  " + p;
      throw std::logic_error(msg);
    }
  }

  void act(double t) {
    for (std::size_t j = 0; j < sc_.weapon_systems.size(); ++j) {
      const auto& ws = sc_.weapon_systems[j];
      auto& rt = ws_[j];
      if (!ws.operational() || ws.status != Status::FreeToFire || rt.shot) continue;
      const auto& slots = state_.slots(ws.id);
      if (!slots.locked) continue;
      if (t - slots.lock_time < ws.stabilization_time - 1e-9) continue;
      if (t - rt.last_fire < 1.0 / ws.rof - 1e-9) continue;
      const auto k = track_index(*slots.locked);
      if (!k || !live(*k)) continue;
      const ThreatTrack& tr = sc_.tracks[*k];
      const auto lead = lead_and_launch(tr.position, tr.velocity, ws.sector, ws.projectile_speed);
      if (!lead) continue;
      const double range = euclidean_distance(lead->launch_point, ws.sector.origin);
      const double altitude = std::max(0.0, tr.altitude + tr.climb_rate * lead->tof);
      if (required_elevation(range, altitude) > ws.sector.max_elevation) continue;
      rt.shot = Shot{tr.id, t + lead->tof};
      rt.last_fire = t;
      ++shots_;
      ++records_[*k].shots;
      log_.emit(t, EventKind::Fire, ws.id, tr.id,
                {{"tof", format_fixed(lead->tof)},
                 {"lx", format_fixed(lead->launch_point.x, 2)},
                 {"ly", format_fixed(lead->launch_point.y, 2)}});
    }
  }

  Scenario sc_;
  Policy policy_;
  std::uint64_t seed_;
  Rng rng_;
  AssignmentState state_;
  EventLog log_;
  CycleHook hook_;

  std::vector<ThreatRecord> records_;
  std::vector<bool> started_;
  std::vector<std::optional<std::size_t>> assigned_da_;
  std::vector<WsRuntime> ws_;
  std::vector<double> da_damage_;
  std::vector<double> da_kp_;
  std::vector<std::set<std::string>> da_allocated_;

  std::optional<Mode> mode_;
  std::vector<std::pair<double, Mode>> mode_timeline_;
  long long tick_ = 0;
  int cycles_ = 0;
  int shots_ = 0;
  int kills_ = 0;
  int misses_ = 0;
  int voided_ = 0;
  int leak_risk_ = 0;
  double max_cycle_ms_ = 0.0;
  double total_cycle_ms_ = 0.0;
};

/// Runs a scenario to completion and returns the report and the event log.
inline std::pair<SimReport, EventLog> run(const Scenario& scenario, Policy policy = Policy::TwoStage,
                                          std::optional<std::uint64_t> seed = {}) {
  Engine engine(scenario, policy, seed);
  SimReport rep = engine.run();
  return {std::move(rep), engine.log()};
}

}  // namespace tewa
