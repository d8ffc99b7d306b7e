#pragma once

// Target-by-target greedy allocation used as the comparison policy.
//
// Threats are taken in detection order (detection time, then id). Each one
// grabs the single best-weighted weapon system whose lock slot is free,
// from any defended asset. No proposals, no queueing, no eviction.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "tewa/weapon_assign.hpp"

namespace tewa {

struct GreedyTask {
  const ThreatTrack* threat = nullptr;
  double detection_time = 0.0;
};

inline WAResult greedy_assign(std::vector<GreedyTask> threats, const std::vector<DefendedAsset>& das,
                              const std::vector<WeaponSystem>& wss, const Catalog& catalog, AssignmentState& state,
                              const WAConfig& cfg = {}, double t = 0.0, EventLog* log = nullptr) {
  std::stable_sort(threats.begin(), threats.end(), [](const GreedyTask& a, const GreedyTask& b) {
    if (a.detection_time != b.detection_time) return a.detection_time < b.detection_time;
    return a.threat->id < b.threat->id;
  });

  WAResult res;
  for (const auto& task : threats) {
    const ThreatTrack& threat = *task.threat;
    if (!threat.alive || state.is_scheduled(threat.id)) continue;
    std::optional<EngagementPlan> best;
    for (const auto& da : das) {
      if (da.status != Status::FreeToFire) continue;
      for (auto& plan : candidate_ws_set(threat, da, wss, catalog, state, cfg)) {
        if (state.slots(plan.ws_id).locked) continue;
        if (!best || plan.pair_weight > best->pair_weight ||
            (plan.pair_weight == best->pair_weight && plan.ws_id < best->ws_id))
          best = std::move(plan);
      }
    }
    if (!best) {
      res.unassigned.push_back(threat.id);
      continue;
    }
    state.offer(best->ws_id, threat.id, t);
    const auto& ws = detail::find_ws(wss, best->ws_id);
    if (log) log->emit(t, EventKind::Lock, best->ws_id, threat.id, {{"da", ws.da_id}});
    res.accepted.push_back(std::move(*best));
  }
  return res;
}

}  // namespace tewa
