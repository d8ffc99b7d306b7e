#pragma once

// Threat evaluation: capability / intent / opportunity indices, the
// defended-asset kill probability product, DA-threat pair weights and the
// stable pairing of threats with defended assets.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "tewa/catalog.hpp"
#include "tewa/fuzzy.hpp"
#include "tewa/geometry.hpp"
#include "tewa/matching.hpp"
#include "tewa/types.hpp"

namespace tewa {

struct Waypoint {
  double t = 0.0;  // s
  Point2 position;
  double altitude = 0.0;  // m
};

struct ThreatTrack {
  std::string id;
  std::string threat_type;
  std::vector<Waypoint> waypoints;

  // Kinematic state, refreshed every tick.
  Point2 position;
  double altitude = 0.0;
  Vec2 velocity;
  double speed = 0.0;
  Vec2 heading;  // unit, zero when stationary
  double climb_rate = 0.0;  // m/s, negative when descending

  double initial_threat_index = 0.0;
  double intent_index = 0.0;
  double capability_index = 0.0;
  double refined_threat_index = 0.0;
  bool alive = true;
};

struct DefendedAsset {
  std::string id;
  DAFootprint footprint;
  double priority = 1.0;
  double vulnerability_index = 1.0;
  Status status = Status::FreeToFire;
  std::map<std::string, double> kill_capability;  // threat type -> K.C
  std::vector<std::string> weapon_ids;
  std::set<std::string> assigned_threats;

  /// K.C for a threat type; undeclared types use the UNKNOWN entry, else 0.
  double kill_capability_for(const std::string& threat_type) const {
    if (auto it = kill_capability.find(threat_type); it != kill_capability.end()) return it->second;
    if (auto it = kill_capability.find(std::string(kUnknownThreat)); it != kill_capability.end()) return it->second;
    return 0.0;
  }
};

/// Breakpoints of the inverse time-to-target membership: 1 at or below
/// `full` seconds, 0 at or beyond `zero` seconds.
struct TimeScale {
  double full = 10.0;
  double zero = 600.0;

  double score(double t) const { return fuzzy::inverse_time(t, full, zero); }
};

struct TEConfig {
  // Capability index: type base capability vs normalized speed.
  double ci_type_weight = 0.7;
  double ci_speed_weight = 0.3;

  // Intent index: alignment gate times (alignment + proximity + descent), capped at 1.
  double ii_alignment_weight = 0.3;
  double ii_proximity_weight = 0.7;
  double ii_descent_weight = 0.2;
  double descent_rate_full = 50.0;  // m/s of descent scoring 1

  TimeScale time_scale;

  // Kill probability product weights (W_I, W_CI, W_L) and exponent B.
  double w_intent = 0.4;
  double w_capability = 0.4;
  double w_load = 0.2;
  double kp_exponent = 1.0;

  // DA-threat pair weight coefficients.
  double da_kc_weight = 0.25;
  double da_time_weight = 0.25;
  double da_priority_weight = 0.25;
  double da_load_weight = 0.25;
  double preferential_priority_boost = 2.0;

  double refine_proximity_share = 0.4;

  double initial_trigger = 0.0;
  double min_kill_capability = 0.0;
  int da_capacity_per_ws = 2;

  void validate() const {
    auto unit = [](double v, const char* what) {
      if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
    };
    unit(ci_type_weight, "ci_type_weight");
    unit(ci_speed_weight, "ci_speed_weight");
    unit(ii_alignment_weight, "ii_alignment_weight");
    unit(ii_proximity_weight, "ii_proximity_weight");
    unit(ii_descent_weight, "ii_descent_weight");
    unit(w_intent, "w_intent");
    unit(w_capability, "w_capability");
    unit(w_load, "w_load");
    unit(da_kc_weight, "da_kc_weight");
    unit(da_time_weight, "da_time_weight");
    unit(da_priority_weight, "da_priority_weight");
    unit(da_load_weight, "da_load_weight");
    unit(refine_proximity_share, "refine_proximity_share");
    unit(initial_trigger, "initial_trigger");
    unit(min_kill_capability, "min_kill_capability");
    if (std::abs(w_intent + w_capability + w_load - 1.0) > 1e-12)
      throw std::invalid_argument("w_intent + w_capability + w_load must equal 1");
    if (!(kp_exponent > 0.0)) throw std::invalid_argument("kp_exponent must be positive");
    if (!(preferential_priority_boost >= 1.0)) throw std::invalid_argument("preferential_priority_boost must be >= 1");
    if (!(descent_rate_full > 0.0)) throw std::invalid_argument("descent_rate_full must be positive");
    if (!(time_scale.full >= 0.0 && time_scale.full < time_scale.zero))
      throw std::invalid_argument("time scale requires 0 <= full < zero");
    if (da_capacity_per_ws < 1) throw std::invalid_argument("da_capacity_per_ws must be at least 1");
  }
};

/// Time for the track to reach the footprint: 0 inside it, absent when the
/// forward ray misses or the track is stationary.
inline std::optional<double> time_to_da(const ThreatTrack& track, const DefendedAsset& da) {
  if (da.footprint.contains(track.position)) return 0.0;
  if (!(track.speed > 0.0)) return std::nullopt;
  auto poi = earliest_poi(track.position, track.heading, track.speed, da.footprint);
  if (!poi) return std::nullopt;
  return poi->time_to_da;
}

inline double compute_capability_index(const ThreatTrack& track, const Catalog& catalog, const TEConfig& cfg = {}) {
  const ThreatType& type = catalog.threat(track.threat_type);
  const double speed_term = fuzzy::ramp(track.speed, type.speed_min, type.speed_max);
  return fuzzy::weighted_mean({{cfg.ci_type_weight, type.base_capability}, {cfg.ci_speed_weight, speed_term}});
}

/// Cosine between heading and the bearing to the DA centre, floored at 0.
inline double heading_alignment(const ThreatTrack& track, const DefendedAsset& da) {
  if (!(track.speed > 0.0)) return 0.0;
  const Vec2 to_center = da.footprint.center - track.position;
  const double d = norm(to_center);
  if (d == 0.0) return 1.0;
  return std::max(0.0, dot(track.heading, to_center) / d);
}

inline double compute_intent_index(const ThreatTrack& track, const DefendedAsset& da, const TEConfig& cfg = {}) {
  const double alignment = heading_alignment(track, da);
  const auto tda = time_to_da(track, da);
  if (!tda) return fuzzy::clamp01(0.5 * cfg.ii_alignment_weight * alignment);
  const double proximity = cfg.time_scale.score(*tda);
  const double descent = fuzzy::ramp(-track.climb_rate, 0.0, cfg.descent_rate_full);
  const double drive = std::min(
      1.0, cfg.ii_alignment_weight + cfg.ii_proximity_weight * proximity + cfg.ii_descent_weight * descent);
  return fuzzy::clamp01(alignment * drive);
}

/// Opportunity: intent and capability blended with the W_I / W_CI weights.
inline double opportunity_index(double intent, double capability, const TEConfig& cfg = {}) {
  return fuzzy::weighted_mean({{cfg.w_intent, intent}, {cfg.w_capability, capability}});
}

inline double refine_threat_index(const ThreatTrack& track, const DefendedAsset* assigned_da,
                                  const TEConfig& cfg = {}) {
  const double opportunity = opportunity_index(track.intent_index, track.capability_index, cfg);
  double proximity = 0.0;
  if (assigned_da) {
    if (auto tda = time_to_da(track, *assigned_da)) proximity = cfg.time_scale.score(*tda);
  }
  const double s = cfg.refine_proximity_share;
  return fuzzy::clamp01(opportunity * (1.0 - s + s * proximity));
}

/// Operands of one factor of the DA kill probability product.
struct KPInputs {
  double w_intent = 0.4;
  double w_capability = 0.4;
  double w_load = 0.2;
  double intent = 0.0;      // II_k
  double capability = 0.0;  // CI_k
  double load = 0.0;        // Load_j
  double correlation = 0.0; // C_jk
  double exponent = 1.0;    // B_ij

  void validate() const {
    if (std::abs(w_intent + w_capability + w_load - 1.0) > 1e-12)
      throw std::invalid_argument("KPInputs: weights must sum to 1");
    for (double v : {w_intent, w_capability, w_load, intent, capability, load, correlation})
      if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument("KPInputs: operands must lie in [0, 1]");
    if (!(exponent > 0.0) || !std::isfinite(exponent)) throw std::invalid_argument("KPInputs: exponent must be positive");
  }
};

/// prod_k (1 - ((W_I II_k + W_CI CI_k + W_L Load_j) C_jk)^B_ij), evaluated as written.
inline double da_kill_probability(const std::vector<KPInputs>& inputs) {
  double product = 1.0;
  for (const auto& in : inputs) {
    in.validate();
    const double inner = (in.w_intent * in.intent + in.w_capability * in.capability + in.w_load * in.load) * in.correlation;
    product *= 1.0 - std::pow(inner, in.exponent);
  }
  return fuzzy::clamp01(product);
}

/// 1 minus the product above.
inline double da_kill_probability_complement(const std::vector<KPInputs>& inputs) {
  return 1.0 - da_kill_probability(inputs);
}

/// Normalized terms entering the DA-threat pair weight.
struct DAPairTerms {
  double kill_capability = 0.0;
  double time = 0.0;      // inverse time-to-DA score
  double priority = 0.0;
  double free_load = 0.0; // 1 - load fraction
};

inline DAPairTerms da_pair_terms(const ThreatTrack& track, const DefendedAsset& da, double load_fraction,
                                 const TEConfig& cfg = {}) {
  DAPairTerms t;
  t.kill_capability = fuzzy::clamp01(da.kill_capability_for(track.threat_type));
  if (auto tda = time_to_da(track, da)) t.time = cfg.time_scale.score(*tda);
  t.priority = fuzzy::clamp01(da.priority);
  t.free_load = fuzzy::clamp01(1.0 - load_fraction);
  return t;
}

/// Pair weight, or nothing when K.C fails the gate (no proposal is sent).
inline std::optional<double> da_pair_weight(const DAPairTerms& terms, const TEConfig& cfg = {},
                                            Mode mode = Mode::Subtractive) {
  if (!(terms.kill_capability > 0.0) || terms.kill_capability < cfg.min_kill_capability) return std::nullopt;
  const double boost = mode == Mode::Preferential ? cfg.preferential_priority_boost : 1.0;
  return fuzzy::weighted_mean({{cfg.da_kc_weight, terms.kill_capability},
                               {cfg.da_time_weight, terms.time},
                               {cfg.da_priority_weight * boost, terms.priority},
                               {cfg.da_load_weight, terms.free_load}});
}

/// Pairing capacity and current occupancy of one defended asset.
struct DALoad {
  int capacity = 0;  // concurrent threats the DA may hold
  int occupied = 0;  // threats already pinned to it (scheduled on its weapons)
};

struct TEResult {
  std::vector<std::optional<std::size_t>> da_of_threat;  // indexed like the input threats
  std::vector<std::size_t> leak_risk;                    // threats left without a DA
  MatchInstance instance;                                // threat x DA, in proposer order
  std::vector<std::size_t> proposer_order;               // proposer index -> threat index
  std::vector<std::size_t> acceptor_order;               // acceptor index -> DA index
  Matching matching;
};

/// Stable pairing of threats with FreeToFire defended assets.
///
/// Threats propose in descending refined-threat order (ties by id), which
/// also breaks equal-weight ties on the DA side. In Preferential mode the
/// priority coefficient is boosted and each DA's capacity is rationed in
/// proportion to its priority.
inline TEResult te_assign(const std::vector<ThreatTrack>& threats, const std::vector<DefendedAsset>& das,
                          const std::vector<DALoad>& loads, const TEConfig& cfg = {}, Mode mode = Mode::Subtractive) {
  if (loads.size() != das.size()) throw std::invalid_argument("te_assign: one DALoad per defended asset required");
  TEResult res;
  res.da_of_threat.assign(threats.size(), std::nullopt);

  std::vector<std::size_t> order;
  for (std::size_t k = 0; k < threats.size(); ++k)
    if (threats[k].alive) order.push_back(k);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (threats[a].refined_threat_index != threats[b].refined_threat_index)
      return threats[a].refined_threat_index > threats[b].refined_threat_index;
    return threats[a].id < threats[b].id;
  });

  double max_priority = 0.0;
  for (const auto& d : das)
    if (d.status == Status::FreeToFire) max_priority = std::max(max_priority, d.priority);

  std::vector<std::size_t> acceptors;
  std::vector<int> remaining;
  for (std::size_t i = 0; i < das.size(); ++i) {
    if (das[i].status != Status::FreeToFire) continue;
    int cap = loads[i].capacity;
    if (mode == Mode::Preferential && cap > 0 && max_priority > 0.0)
      cap = std::max(1, static_cast<int>(std::ceil(cap * das[i].priority / max_priority - 1e-12)));
    const int free_slots = cap - loads[i].occupied;
    if (free_slots < 1) continue;
    acceptors.push_back(i);
    remaining.push_back(free_slots);
  }

  res.proposer_order = order;
  res.acceptor_order = acceptors;
  res.instance = MatchInstance(order.size(), acceptors.size());
  for (std::size_t a = 0; a < acceptors.size(); ++a) res.instance.set_capacity(a, remaining[a]);
  for (std::size_t p = 0; p < order.size(); ++p) {
    const ThreatTrack& tr = threats[order[p]];
    for (std::size_t a = 0; a < acceptors.size(); ++a) {
      const std::size_t i = acceptors[a];
      const double load_fraction =
          loads[i].capacity > 0 ? static_cast<double>(loads[i].occupied) / loads[i].capacity : 1.0;
      if (auto w = da_pair_weight(da_pair_terms(tr, das[i], load_fraction, cfg), cfg, mode))
        res.instance.allow(p, a, *w);
    }
  }
  res.matching = deferred_acceptance(res.instance);
  for (std::size_t p = 0; p < order.size(); ++p) {
    if (const auto a = res.matching.partner[p])
      res.da_of_threat[order[p]] = acceptors[*a];
    else
      res.leak_risk.push_back(order[p]);
  }
  return res;
}

}  // namespace tewa
