#pragma once

// Scenario documents: defended assets, weapon deployment, threat tracks,
// catalogs and run configuration in one JSON file. See docs/scenario_format.md.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "tewa/catalog.hpp"
#include "tewa/document.hpp"
#include "tewa/threat_eval.hpp"
#include "tewa/weapon_assign.hpp"

namespace tewa {

struct SimConfig {
  double tick = 0.1;      // s
  double horizon = 600.0; // s
  std::uint64_t seed = 1;
  TEConfig te;
  WAConfig wa;

  void validate() const {
    if (!(tick > 0.0)) throw std::invalid_argument("tick must be positive");
    if (!(horizon >= 0.0)) throw std::invalid_argument("horizon must be non-negative");
    te.validate();
    wa.validate();
  }
};

struct Scenario {
  std::string name;
  Catalog catalog;
  SimConfig config;
  std::vector<DefendedAsset> das;
  std::vector<WeaponSystem> weapon_systems;
  std::vector<ThreatTrack> tracks;
};

namespace detail {

inline double deg(double d) { return d * std::numbers::pi / 180.0; }
inline double to_deg(double r) { return r * 180.0 / std::numbers::pi; }

template <class T>
struct ConfigField {
  const char* key;
  double T::*member;
};

inline const std::vector<ConfigField<TEConfig>>& te_fields() {
  static const std::vector<ConfigField<TEConfig>> f{
      {"ci_type_weight", &TEConfig::ci_type_weight},
      {"ci_speed_weight", &TEConfig::ci_speed_weight},
      {"ii_alignment_weight", &TEConfig::ii_alignment_weight},
      {"ii_proximity_weight", &TEConfig::ii_proximity_weight},
      {"ii_descent_weight", &TEConfig::ii_descent_weight},
      {"descent_rate_full", &TEConfig::descent_rate_full},
      {"w_intent", &TEConfig::w_intent},
      {"w_capability", &TEConfig::w_capability},
      {"w_load", &TEConfig::w_load},
      {"kp_exponent", &TEConfig::kp_exponent},
      {"da_kc_weight", &TEConfig::da_kc_weight},
      {"da_time_weight", &TEConfig::da_time_weight},
      {"da_priority_weight", &TEConfig::da_priority_weight},
      {"da_load_weight", &TEConfig::da_load_weight},
      {"preferential_priority_boost", &TEConfig::preferential_priority_boost},
      {"refine_proximity_share", &TEConfig::refine_proximity_share},
      {"initial_trigger", &TEConfig::initial_trigger},
      {"min_kill_capability", &TEConfig::min_kill_capability},
  };
  return f;
}

inline const std::vector<ConfigField<WAConfig>>& wa_fields() {
  static const std::vector<ConfigField<WAConfig>> f{
      {"min_capability", &WAConfig::min_capability},
      {"ws_time_weight", &WAConfig::ws_time_weight},
      {"ws_elevation_weight", &WAConfig::ws_elevation_weight},
      {"ws_lethality_weight", &WAConfig::ws_lethality_weight},
      {"ws_stabilization_weight", &WAConfig::ws_stabilization_weight},
      {"ws_rof_weight", &WAConfig::ws_rof_weight},
      {"rof_full", &WAConfig::rof_full},
  };
  return f;
}

inline void read_time_scale(Reader& rd, const Json& obj, const std::string& path, const std::string& key,
                            TimeScale& out) {
  const Json* v = rd.member(obj, path, key, false);
  if (!v) return;
  const std::string p = join_path(path, key);
  out.full = rd.number(*v, p, "full", out.full).value_or(out.full);
  out.zero = rd.number(*v, p, "zero", out.zero).value_or(out.zero);
}

inline SimConfig read_config(Reader& rd, const Json& doc) {
  SimConfig cfg;
  const Json* c = rd.member(doc, "", "config", false);
  if (!c) return cfg;
  const std::string p = "/config";
  if (!c->is_object()) {
    rd.error(p, "expected an object");
    return cfg;
  }
  cfg.tick = rd.positive(*c, p, "tick", cfg.tick).value_or(cfg.tick);
  cfg.horizon = rd.number(*c, p, "horizon", cfg.horizon).value_or(cfg.horizon);
  if (cfg.horizon < 0.0) rd.error(join_path(p, "horizon"), "horizon must be non-negative");
  if (const Json* s = rd.member(*c, p, "seed", false)) {
    if (s->is_number_unsigned())
      cfg.seed = s->get<std::uint64_t>();
    else
      rd.error(join_path(p, "seed"), "seed must be a non-negative integer");
  }
  if (const Json* te = rd.member(*c, p, "threat_evaluation", false)) {
    const std::string tp = join_path(p, "threat_evaluation");
    for (const auto& f : te_fields()) cfg.te.*f.member = rd.number(*te, tp, f.key, cfg.te.*f.member).value_or(0.0);
    read_time_scale(rd, *te, tp, "time_scale", cfg.te.time_scale);
    if (const Json* cap = rd.member(*te, tp, "da_capacity_per_ws", false)) {
      if (cap->is_number_integer() && cap->get<int>() >= 1)
        cfg.te.da_capacity_per_ws = cap->get<int>();
      else
        rd.error(join_path(tp, "da_capacity_per_ws"), "expected an integer >= 1");
    }
  }
  if (const Json* wa = rd.member(*c, p, "weapon_assignment", false)) {
    const std::string wp = join_path(p, "weapon_assignment");
    for (const auto& f : wa_fields()) cfg.wa.*f.member = rd.number(*wa, wp, f.key, cfg.wa.*f.member).value_or(0.0);
    read_time_scale(rd, *wa, wp, "time_scale", cfg.wa.time_scale);
    read_time_scale(rd, *wa, wp, "stabilization_scale", cfg.wa.stabilization_scale);
  }
  if (rd.ok()) {
    try {
      cfg.validate();
    } catch (const std::invalid_argument& e) {
      rd.error(p, e.what());
    }
  }
  return cfg;
}

inline std::optional<Json> read_json_file(const std::filesystem::path& path, std::string& error) {
  std::ifstream in(path);
  if (!in) {
    error = "cannot open '" + path.string() + "'";
    return std::nullopt;
  }
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    error = "parse error in '" + path.string() + "': " + e.what();
    return std::nullopt;
  }
}

}  // namespace detail

/// Reads and cross-checks a scenario. All problems are appended to `diags`;
/// the scenario is only returned when there are none.
inline std::optional<Scenario> read_scenario(const Json& doc, const std::filesystem::path& base_dir,
                                             std::vector<Diagnostic>& diags) {
  detail::Reader rd;
  Scenario sc;
  if (!doc.is_object()) {
    diags.push_back({"", "scenario document must be a JSON object"});
    return std::nullopt;
  }
  sc.name = rd.string(doc, "", "name", std::string("scenario")).value_or("scenario");
  sc.config = detail::read_config(rd, doc);

  std::optional<Catalog> catalog;
  if (const Json* inline_cat = rd.member(doc, "", "catalog", false)) {
    catalog = detail::read_catalog(rd, *inline_cat, "/catalog");
  } else if (auto file = rd.string(doc, "", "catalog_file", std::string()); file && !file->empty()) {
    std::string err;
    if (auto cj = detail::read_json_file(base_dir / *file, err))
      catalog = detail::read_catalog(rd, *cj, "/catalog_file");
    else
      rd.error("/catalog_file", err);
  } else {
    rd.error("/catalog", "scenario needs an inline 'catalog' or a 'catalog_file'");
  }

  std::set<std::string> da_ids;
  if (const Json* arr = rd.array(doc, "", "defended_assets")) {
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const Json& e = (*arr)[i];
      const std::string p = detail::join_path("/defended_assets", i);
      DefendedAsset da;
      auto id = rd.identifier(e, p, "id");
      auto x = rd.number(e, p, "x");
      auto y = rd.number(e, p, "y");
      auto r = rd.positive(e, p, "radius");
      auto pr = rd.ranged(e, p, "priority", 0.0, 1.0, 1.0);
      auto vu = rd.ranged(e, p, "vulnerability", 0.0, 1.0, 1.0);
      auto st = rd.string(e, p, "status", std::string("FreeToFire"));
      if (!id || !x || !y || !r || !pr || !vu || !st) continue;
      auto status = parse_status(*st);
      if (!status) rd.error(detail::join_path(p, "status"), "unknown status '" + *st + "'");
      if (!da_ids.insert(*id).second) rd.error(detail::join_path(p, "id"), "duplicate defended asset '" + *id + "'");
      da.id = *id;
      da.footprint = {{*x, *y}, *r};
      da.priority = *pr;
      da.vulnerability_index = *vu;
      da.status = status.value_or(Status::FreeToFire);
      if (const Json* kc = rd.member(e, p, "kill_capability", false)) {
        const std::string kp = detail::join_path(p, "kill_capability");
        if (!kc->is_object()) {
          rd.error(kp, "expected an object of threat type -> value");
        } else {
          for (auto it = kc->begin(); it != kc->end(); ++it) {
            auto v = rd.ranged(*kc, kp, it.key(), 0.0, 1.0);
            if (catalog && !catalog->find_threat(it.key()))
              rd.error(detail::join_path(kp, it.key()), "undefined threat type '" + it.key() + "'");
            if (v) da.kill_capability[it.key()] = *v;
          }
        }
      }
      sc.das.push_back(std::move(da));
    }
  }

  std::set<std::string> ws_ids;
  if (const Json* arr = rd.array(doc, "", "weapon_systems")) {
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const Json& e = (*arr)[i];
      const std::string p = detail::join_path("/weapon_systems", i);
      auto id = rd.identifier(e, p, "id");
      auto da = rd.string(e, p, "da");
      auto x = rd.number(e, p, "x");
      auto y = rd.number(e, p, "y");
      auto wt = rd.string(e, p, "weapon_type");
      auto rmin = rd.positive(e, p, "min_range");
      auto rmax = rd.positive(e, p, "max_range");
      auto start = rd.number(e, p, "start_angle_deg", 0.0);
      auto sweep = rd.number(e, p, "sweep_deg", 360.0);
      auto elev = rd.ranged(e, p, "max_elevation_deg", 0.0, 90.0, 85.0);
      auto cond = rd.string(e, p, "condition", std::string("Up"));
      auto st = rd.string(e, p, "status", std::string("FreeToFire"));
      if (!id || !da || !x || !y || !wt || !rmin || !rmax || !start || !sweep || !elev || !cond || !st) continue;
      if (!ws_ids.insert(*id).second) rd.error(detail::join_path(p, "id"), "duplicate weapon system '" + *id + "'");
      if (!da_ids.count(*da))
        rd.error(detail::join_path(p, "da"), "weapon system '" + *id + "' references missing defended asset '" + *da + "'");
      const WeaponType* type = catalog ? catalog->find_weapon(*wt) : nullptr;
      if (catalog && !type) rd.error(detail::join_path(p, "weapon_type"), "undefined weapon type '" + *wt + "'");
      if (*rmin >= *rmax) rd.error(detail::join_path(p, "max_range"), "require min_range < max_range");
      if (!(*sweep > 0.0 && *sweep <= 360.0)) rd.error(detail::join_path(p, "sweep_deg"), "sweep must lie in (0, 360]");
      auto condition = parse_condition(*cond);
      if (!condition) rd.error(detail::join_path(p, "condition"), "unknown condition '" + *cond + "'");
      auto status = parse_status(*st);
      if (!status) rd.error(detail::join_path(p, "status"), "unknown status '" + *st + "'");
      WeaponSystem ws;
      ws.id = *id;
      ws.da_id = *da;
      ws.position = {*x, *y};
      ws.weapon_type = *wt;
      ws.sector.origin = ws.position;
      ws.sector.min_range = *rmin;
      ws.sector.max_range = *rmax;
      ws.sector.start_angle = detail::deg(*start);
      ws.sector.sweep_angle = detail::deg(std::min(*sweep, 360.0));
      ws.sector.max_elevation = detail::deg(*elev);
      ws.condition = condition.value_or(Condition::Up);
      ws.status = status.value_or(Status::FreeToFire);
      if (type) {
        ws.lethality_index = rd.ranged(e, p, "lethality_index", 0.0, 1.0, type->lethality_index).value_or(0.0);
        ws.rof = rd.positive(e, p, "rof", type->rof).value_or(1.0);
        ws.stabilization_time = rd.positive(e, p, "stabilization_time", type->stabilization_time).value_or(1.0);
        ws.projectile_speed = rd.positive(e, p, "projectile_speed", type->projectile_speed).value_or(1.0);
      }
      sc.weapon_systems.push_back(std::move(ws));
    }
  }

  std::set<std::string> track_ids;
  if (const Json* arr = rd.array(doc, "", "tracks")) {
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const Json& e = (*arr)[i];
      const std::string p = detail::join_path("/tracks", i);
      auto id = rd.identifier(e, p, "id");
      auto type = rd.string(e, p, "threat_type", std::string(kUnknownThreat));
      if (!id || !type) continue;
      if (!track_ids.insert(*id).second) rd.error(detail::join_path(p, "id"), "duplicate track '" + *id + "'");
      if (catalog && !catalog->find_threat(*type))
        rd.error(detail::join_path(p, "threat_type"), "undefined threat type '" + *type + "'");
      ThreatTrack tr;
      tr.id = *id;
      tr.threat_type = *type;
      if (const Json* wps = rd.array(e, p, "waypoints")) {
        const std::string wp = detail::join_path(p, "waypoints");
        if (wps->empty()) rd.error(wp, "at least one waypoint is required");
        for (std::size_t k = 0; k < wps->size(); ++k) {
          const std::string kp = detail::join_path(wp, k);
          auto t = rd.number((*wps)[k], kp, "t");
          auto x = rd.number((*wps)[k], kp, "x");
          auto y = rd.number((*wps)[k], kp, "y");
          auto alt = rd.number((*wps)[k], kp, "alt", 0.0);
          if (!t || !x || !y || !alt) continue;
          if (*alt < 0.0) rd.error(detail::join_path(kp, "alt"), "altitude must be non-negative");
          if (!tr.waypoints.empty() && !(*t > tr.waypoints.back().t))
            rd.error(detail::join_path(kp, "t"), "waypoint times must be strictly increasing");
          tr.waypoints.push_back({*t, {*x, *y}, *alt});
        }
      }
      if (!tr.waypoints.empty()) {
        tr.position = tr.waypoints.front().position;
        tr.altitude = tr.waypoints.front().altitude;
      }
      sc.tracks.push_back(std::move(tr));
    }
  }

  diags.insert(diags.end(), rd.diagnostics().begin(), rd.diagnostics().end());
  if (!diags.empty() || !catalog) return std::nullopt;

  sc.catalog = std::move(*catalog);
  for (auto& da : sc.das) {
    for (const auto& ws : sc.weapon_systems)
      if (ws.da_id == da.id) da.weapon_ids.push_back(ws.id);
    // Undeclared K.C: best correlation among the DA's own weapons.
    for (const auto& tt : sc.catalog.threat_types()) {
      if (da.kill_capability.count(tt.id)) continue;
      double best = 0.0;
      for (const auto& ws : sc.weapon_systems)
        if (ws.da_id == da.id) best = std::max(best, sc.catalog.effectiveness(ws.weapon_type, tt.id));
      da.kill_capability[tt.id] = best;
    }
  }
  return sc;
}

inline std::vector<Diagnostic> validate_scenario(const Json& doc, const std::filesystem::path& base_dir = ".") {
  std::vector<Diagnostic> diags;
  read_scenario(doc, base_dir, diags);
  return diags;
}

inline Scenario load_scenario(const Json& doc, const std::filesystem::path& base_dir = ".") {
  std::vector<Diagnostic> diags;
  auto sc = read_scenario(doc, base_dir, diags);
  if (!sc) throw DocumentError(std::move(diags));
  return std::move(*sc);
}

inline Scenario load_scenario_file(const std::filesystem::path& path) {
  std::string err;
  auto doc = detail::read_json_file(path, err);
  if (!doc) throw DocumentError({{"", err}});
  return load_scenario(*doc, path.parent_path());
}

inline Json to_json(const SimConfig& cfg) {
  Json c;
  c["tick"] = cfg.tick;
  c["horizon"] = cfg.horizon;
  c["seed"] = cfg.seed;
  Json te;
  for (const auto& f : detail::te_fields()) te[f.key] = cfg.te.*f.member;
  te["time_scale"] = {{"full", cfg.te.time_scale.full}, {"zero", cfg.te.time_scale.zero}};
  te["da_capacity_per_ws"] = cfg.te.da_capacity_per_ws;
  c["threat_evaluation"] = te;
  Json wa;
  for (const auto& f : detail::wa_fields()) wa[f.key] = cfg.wa.*f.member;
  wa["time_scale"] = {{"full", cfg.wa.time_scale.full}, {"zero", cfg.wa.time_scale.zero}};
  wa["stabilization_scale"] = {{"full", cfg.wa.stabilization_scale.full}, {"zero", cfg.wa.stabilization_scale.zero}};
  c["weapon_assignment"] = wa;
  return c;
}

inline Json to_json(const Scenario& sc) {
  Json doc;
  doc["name"] = sc.name;
  doc["config"] = to_json(sc.config);
  doc["catalog"] = to_json(sc.catalog);
  doc["defended_assets"] = Json::array();
  for (const auto& da : sc.das) {
    Json kc = Json::object();
    for (const auto& [k, v] : da.kill_capability)
      if (sc.catalog.find_threat(k) && !sc.catalog.find_threat(k)->synthesized) kc[k] = v;
    doc["defended_assets"].push_back({{"id", da.id},
                                      {"x", da.footprint.center.x},
                                      {"y", da.footprint.center.y},
                                      {"radius", da.footprint.radius},
                                      {"priority", da.priority},
                                      {"vulnerability", da.vulnerability_index},
                                      {"status", to_string(da.status)},
                                      {"kill_capability", kc}});
  }
  doc["weapon_systems"] = Json::array();
  for (const auto& ws : sc.weapon_systems) {
    doc["weapon_systems"].push_back({{"id", ws.id},
                                     {"da", ws.da_id},
                                     {"x", ws.position.x},
                                     {"y", ws.position.y},
                                     {"weapon_type", ws.weapon_type},
                                     {"min_range", ws.sector.min_range},
                                     {"max_range", ws.sector.max_range},
                                     {"start_angle_deg", detail::to_deg(ws.sector.start_angle)},
                                     {"sweep_deg", detail::to_deg(ws.sector.sweep_angle)},
                                     {"max_elevation_deg", detail::to_deg(ws.sector.max_elevation)},
                                     {"lethality_index", ws.lethality_index},
                                     {"rof", ws.rof},
                                     {"stabilization_time", ws.stabilization_time},
                                     {"projectile_speed", ws.projectile_speed},
                                     {"condition", to_string(ws.condition)},
                                     {"status", to_string(ws.status)}});
  }
  doc["tracks"] = Json::array();
  for (const auto& tr : sc.tracks) {
    Json wps = Json::array();
    for (const auto& w : tr.waypoints) wps.push_back({{"t", w.t}, {"x", w.position.x}, {"y", w.position.y}, {"alt", w.altitude}});
    doc["tracks"].push_back({{"id", tr.id}, {"threat_type", tr.threat_type}, {"waypoints", wps}});
  }
  return doc;
}

}  // namespace tewa
