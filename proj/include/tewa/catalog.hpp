#pragma once

// Threat and weapon type libraries and the weapon/threat effectiveness
// correlation table.

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "tewa/document.hpp"

namespace tewa {

/// Reserved threat type for tracks that could not be identified.
inline constexpr std::string_view kUnknownThreat = "UNKNOWN";

struct ThreatType {
  std::string id;
  std::string name;
  double base_capability = 0.5;
  double speed_min = 0.0;  // m/s
  double speed_max = 1.0;  // m/s
  bool unknown = false;
  bool synthesized = false;  // filled in by the loader, not present in the document

  friend bool operator==(const ThreatType&, const ThreatType&) = default;
};

struct WeaponType {
  std::string id;
  std::string name;
  double lethality_index = 1.0;
  double projectile_speed = 1.0;    // m/s
  double rof = 1.0;                 // rounds/s
  double stabilization_time = 1.0;  // s

  friend bool operator==(const WeaponType&, const WeaponType&) = default;
};

/// Effectiveness C(weapon, threat) in [0, 1] for every weapon/threat pair.
/// Lookups for threat types that are not declared resolve to the UNKNOWN row.
class CorrelationTable {
 public:
  CorrelationTable() = default;
  CorrelationTable(std::vector<std::string> weapons, std::vector<std::string> threats, std::vector<double> values,
                   std::vector<double> unknown_row)
      : weapons_(std::move(weapons)),
        threats_(std::move(threats)),
        values_(std::move(values)),
        unknown_row_(std::move(unknown_row)) {}

  const std::vector<std::string>& weapon_ids() const { return weapons_; }
  const std::vector<std::string>& threat_ids() const { return threats_; }

  /// Number of explicitly stored (weapon, threat) entries.
  std::size_t size() const { return values_.size(); }

  double effectiveness(std::string_view weapon, std::string_view threat) const {
    const auto w = index_of(weapons_, weapon);
    if (!w) throw std::out_of_range("unknown weapon type '" + std::string(weapon) + "'");
    if (const auto t = index_of(threats_, threat)) return values_[*w * threats_.size() + *t];
    return unknown_row_[*w];
  }

  friend bool operator==(const CorrelationTable&, const CorrelationTable&) = default;

 private:
  static std::optional<std::size_t> index_of(const std::vector<std::string>& ids, std::string_view id) {
    auto it = std::find(ids.begin(), ids.end(), id);
    if (it == ids.end()) return std::nullopt;
    return static_cast<std::size_t>(it - ids.begin());
  }

  std::vector<std::string> weapons_;
  std::vector<std::string> threats_;
  std::vector<double> values_;  // row-major, weapon x threat
  std::vector<double> unknown_row_;
};

class Catalog {
 public:
  Catalog() = default;
  Catalog(std::vector<ThreatType> threats, std::vector<WeaponType> weapons, CorrelationTable table)
      : threats_(std::move(threats)), weapons_(std::move(weapons)), table_(std::move(table)) {}

  const std::vector<ThreatType>& threat_types() const { return threats_; }
  const std::vector<WeaponType>& weapon_types() const { return weapons_; }
  const CorrelationTable& correlation() const { return table_; }

  const ThreatType* find_threat(std::string_view id) const {
    for (const auto& t : threats_)
      if (t.id == id) return &t;
    return nullptr;
  }

  /// Threat type by id, falling back to the UNKNOWN entry.
  const ThreatType& threat(std::string_view id) const {
    if (const auto* t = find_threat(id)) return *t;
    if (const auto* u = find_threat(kUnknownThreat)) return *u;
    throw std::out_of_range("catalog has no UNKNOWN threat type");
  }

  const WeaponType* find_weapon(std::string_view id) const {
    for (const auto& w : weapons_)
      if (w.id == id) return &w;
    return nullptr;
  }

  const WeaponType& weapon(std::string_view id) const {
    if (const auto* w = find_weapon(id)) return *w;
    throw std::out_of_range("unknown weapon type '" + std::string(id) + "'");
  }

  double effectiveness(std::string_view weapon, std::string_view threat) const {
    return table_.effectiveness(weapon, threat);
  }

  friend bool operator==(const Catalog&, const Catalog&) = default;

 private:
  std::vector<ThreatType> threats_;
  std::vector<WeaponType> weapons_;
  CorrelationTable table_;
};

namespace detail {

/// Reads a catalog document, appending problems to the reader. Paths are
/// prefixed with `base` so the same code serves standalone and embedded catalogs.
inline std::optional<Catalog> read_catalog(Reader& rd, const Json& doc, const std::string& base) {
  const std::size_t errors_before = rd.diagnostics().size();
  std::vector<ThreatType> threats;
  std::vector<WeaponType> weapons;

  if (const Json* arr = rd.array(doc, base, "threat_types")) {
    const std::string p = join_path(base, "threat_types");
    if (arr->empty()) rd.error(p, "at least one threat type is required");
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const Json& e = (*arr)[i];
      const std::string ep = join_path(p, i);
      ThreatType t;
      auto id = rd.identifier(e, ep, "id");
      auto name = rd.string(e, ep, "name", id.value_or(""));
      auto cap = rd.ranged(e, ep, "base_capability", 0.0, 1.0);
      auto smin = rd.number(e, ep, "speed_min");
      auto smax = rd.number(e, ep, "speed_max");
      if (!id || !name || !cap || !smin || !smax) continue;
      if (*smin < 0.0) rd.error(join_path(ep, "speed_min"), "speed must be non-negative");
      if (*smin > *smax) rd.error(join_path(ep, "speed_max"), "speed envelope requires speed_min <= speed_max");
      t.id = *id;
      t.name = *name;
      t.base_capability = *cap;
      t.speed_min = *smin;
      t.speed_max = *smax;
      t.unknown = (t.id == kUnknownThreat);
      for (const auto& prev : threats)
        if (prev.id == t.id) rd.error(join_path(ep, "id"), "duplicate threat type '" + t.id + "'");
      threats.push_back(std::move(t));
    }
  }

  if (const Json* arr = rd.array(doc, base, "weapon_types")) {
    const std::string p = join_path(base, "weapon_types");
    if (arr->empty()) rd.error(p, "at least one weapon type is required");
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const Json& e = (*arr)[i];
      const std::string ep = join_path(p, i);
      auto id = rd.identifier(e, ep, "id");
      auto name = rd.string(e, ep, "name", id.value_or(""));
      auto leth = rd.ranged(e, ep, "lethality_index", 0.0, 1.0);
      auto vel = rd.positive(e, ep, "projectile_speed");
      auto rof = rd.positive(e, ep, "rof");
      auto stab = rd.positive(e, ep, "stabilization_time");
      if (!id || !name || !leth || !vel || !rof || !stab) continue;
      for (const auto& prev : weapons)
        if (prev.id == *id) rd.error(join_path(ep, "id"), "duplicate weapon type '" + *id + "'");
      weapons.push_back({*id, *name, *leth, *vel, *rof, *stab});
    }
  }

  std::map<std::pair<std::string, std::string>, double> entries;
  if (const Json* arr = rd.array(doc, base, "correlation")) {
    const std::string p = join_path(base, "correlation");
    for (std::size_t i = 0; i < arr->size(); ++i) {
      const Json& e = (*arr)[i];
      const std::string ep = join_path(p, i);
      auto w = rd.string(e, ep, "weapon");
      auto t = rd.string(e, ep, "threat");
      auto c = rd.ranged(e, ep, "effectiveness", 0.0, 1.0);
      if (!w || !t || !c) continue;
      if (std::none_of(weapons.begin(), weapons.end(), [&](const WeaponType& x) { return x.id == *w; }))
        rd.error(join_path(ep, "weapon"), "undefined weapon type '" + *w + "'");
      if (std::none_of(threats.begin(), threats.end(), [&](const ThreatType& x) { return x.id == *t; }))
        rd.error(join_path(ep, "threat"), "undefined threat type '" + *t + "'");
      if (!entries.emplace(std::make_pair(*w, *t), *c).second)
        rd.error(ep, "duplicate correlation entry (" + *w + ", " + *t + ")");
    }
    for (const auto& w : weapons)
      for (const auto& t : threats)
        if (!entries.count({w.id, t.id}))
          rd.error(p, "missing correlation entry for pair (weapon '" + w.id + "', threat '" + t.id + "')");
  }

  if (rd.diagnostics().size() != errors_before) return std::nullopt;

  std::vector<std::string> wids;
  std::vector<std::string> tids;
  for (const auto& w : weapons) wids.push_back(w.id);
  for (const auto& t : threats) tids.push_back(t.id);
  std::vector<double> values;
  values.reserve(wids.size() * tids.size());
  for (const auto& w : wids)
    for (const auto& t : tids) values.push_back(entries.at({w, t}));

  // Conservative fallback for unidentified tracks when the document does not
  // declare UNKNOWN: the weakest effectiveness of each weapon over known types.
  std::vector<double> unknown_row(wids.size(), 0.0);
  const auto declared_unknown = std::find(tids.begin(), tids.end(), kUnknownThreat);
  for (std::size_t w = 0; w < wids.size(); ++w) {
    if (declared_unknown != tids.end()) {
      unknown_row[w] = values[w * tids.size() + static_cast<std::size_t>(declared_unknown - tids.begin())];
    } else {
      double lo = 1.0;
      for (std::size_t t = 0; t < tids.size(); ++t) lo = std::min(lo, values[w * tids.size() + t]);
      unknown_row[w] = lo;
    }
  }
  if (declared_unknown == tids.end()) {
    ThreatType u;
    u.id = std::string(kUnknownThreat);
    u.name = "unidentified";
    u.base_capability = 0.5;
    u.speed_min = std::numeric_limits<double>::max();
    u.speed_max = 0.0;
    for (const auto& t : threats) {
      u.speed_min = std::min(u.speed_min, t.speed_min);
      u.speed_max = std::max(u.speed_max, t.speed_max);
    }
    u.unknown = true;
    u.synthesized = true;
    threats.push_back(std::move(u));
  }

  return Catalog(std::move(threats), std::move(weapons),
                 CorrelationTable(std::move(wids), std::move(tids), std::move(values), std::move(unknown_row)));
}

}  // namespace detail

/// Validated catalogs from a parsed document. Throws DocumentError listing every problem.
inline Catalog load_catalogs(const Json& doc) {
  detail::Reader rd;
  auto cat = detail::read_catalog(rd, doc, "");
  rd.throw_if_failed();
  return std::move(*cat);
}

inline Catalog load_catalogs(std::string_view text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw DocumentError({{"", std::string("parse error: ") + e.what()}});
  }
  return load_catalogs(doc);
}

inline Json to_json(const Catalog& cat) {
  Json doc;
  doc["threat_types"] = Json::array();
  for (const auto& t : cat.threat_types()) {
    if (t.synthesized) continue;
    doc["threat_types"].push_back({{"id", t.id},
                                   {"name", t.name},
                                   {"base_capability", t.base_capability},
                                   {"speed_min", t.speed_min},
                                   {"speed_max", t.speed_max}});
  }
  doc["weapon_types"] = Json::array();
  for (const auto& w : cat.weapon_types()) {
    doc["weapon_types"].push_back({{"id", w.id},
                                   {"name", w.name},
                                   {"lethality_index", w.lethality_index},
                                   {"projectile_speed", w.projectile_speed},
                                   {"rof", w.rof},
                                   {"stabilization_time", w.stabilization_time}});
  }
  doc["correlation"] = Json::array();
  const auto& table = cat.correlation();
  for (const auto& w : table.weapon_ids())
    for (const auto& t : table.threat_ids())
      doc["correlation"].push_back({{"weapon", w}, {"threat", t}, {"effectiveness", table.effectiveness(w, t)}});
  return doc;
}

/// Weapon types able to handle the threat type, most effective first.
/// Equal effectiveness is ordered by weapon id.
inline std::vector<std::string> preference_list(std::string_view threat_type, const CorrelationTable& table,
                                                double min_capability) {
  std::vector<std::pair<double, std::string>> rows;
  for (const auto& w : table.weapon_ids()) {
    const double c = table.effectiveness(w, threat_type);
    if (c >= min_capability) rows.emplace_back(c, w);
  }
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first > b.first;
    return a.second < b.second;
  });
  std::vector<std::string> out;
  out.reserve(rows.size());
  for (auto& r : rows) out.push_back(std::move(r.second));
  return out;
}

}  // namespace tewa
