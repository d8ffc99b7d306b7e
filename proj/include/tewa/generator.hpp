#pragma once

// Seeded scenario generator.
//
// Profiles (K threats, I defended assets, J weapon systems):
//   relaxed          K=5,  I=10, J=10  lock capacity exceeds the raid
//   stress           K=50, I=10, J=10  staggered waves that outnumber the locks
//   starvation       K=6,  I=10, J=10  relaxed raid plus tracks no weapon can reach
//   overutilization  K=16, I=3,  J=3   one simultaneous wave on three assets

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "tewa/document.hpp"
#include "tewa/rng.hpp"

namespace tewa {

enum class Profile { Relaxed, Stress, Starvation, Overutilization };

inline std::optional<Profile> parse_profile(std::string_view s) {
  if (s == "relaxed") return Profile::Relaxed;
  if (s == "stress") return Profile::Stress;
  if (s == "starvation") return Profile::Starvation;
  if (s == "overutilization") return Profile::Overutilization;
  return std::nullopt;
}

inline std::string_view to_string(Profile p) {
  switch (p) {
    case Profile::Relaxed: return "relaxed";
    case Profile::Stress: return "stress";
    case Profile::Starvation: return "starvation";
    case Profile::Overutilization: return "overutilization";
  }
  return "?";
}

/// Catalog shared by the generator and the shipped fixtures.
inline Json standard_catalog() {
  static const char* text = R"({
  "threat_types": [
    {"id": "ground_attack",  "base_capability": 0.80, "speed_min": 150, "speed_max": 300},
    {"id": "fighter",        "base_capability": 0.90, "speed_min": 200, "speed_max": 600},
    {"id": "helicopter",     "base_capability": 0.50, "speed_min": 20,  "speed_max": 90},
    {"id": "interceptor",    "base_capability": 0.85, "speed_min": 250, "speed_max": 700},
    {"id": "reconnaissance", "base_capability": 0.40, "speed_min": 100, "speed_max": 250},
    {"id": "trainer",        "base_capability": 0.30, "speed_min": 80,  "speed_max": 200},
    {"id": "transport",      "base_capability": 0.20, "speed_min": 100, "speed_max": 220}
  ],
  "weapon_types": [
    {"id": "cannon",                "lethality_index": 0.60, "projectile_speed": 1000, "rof": 10,  "stabilization_time": 2},
    {"id": "rocket",                "lethality_index": 0.70, "projectile_speed": 700,  "rof": 4,   "stabilization_time": 3},
    {"id": "ground_missile",        "lethality_index": 0.90, "projectile_speed": 1200, "rof": 0.5, "stabilization_time": 5},
    {"id": "smart_bomb",            "lethality_index": 0.80, "projectile_speed": 900,  "rof": 0.5, "stabilization_time": 4},
    {"id": "free_fall_bomb",        "lethality_index": 0.50, "projectile_speed": 800,  "rof": 1,   "stabilization_time": 3},
    {"id": "low_level_attack_bomb", "lethality_index": 0.55, "projectile_speed": 800,  "rof": 1,   "stabilization_time": 3}
  ],
  "correlation": [
    {"weapon": "cannon", "threat": "ground_attack",  "effectiveness": 0.70},
    {"weapon": "cannon", "threat": "fighter",        "effectiveness": 0.50},
    {"weapon": "cannon", "threat": "helicopter",     "effectiveness": 0.90},
    {"weapon": "cannon", "threat": "interceptor",    "effectiveness": 0.40},
    {"weapon": "cannon", "threat": "reconnaissance", "effectiveness": 0.80},
    {"weapon": "cannon", "threat": "trainer",        "effectiveness": 0.90},
    {"weapon": "cannon", "threat": "transport",      "effectiveness": 0.90},
    {"weapon": "rocket", "threat": "ground_attack",  "effectiveness": 0.80},
    {"weapon": "rocket", "threat": "fighter",        "effectiveness": 0.70},
    {"weapon": "rocket", "threat": "helicopter",     "effectiveness": 0.80},
    {"weapon": "rocket", "threat": "interceptor",    "effectiveness": 0.60},
    {"weapon": "rocket", "threat": "reconnaissance", "effectiveness": 0.80},
    {"weapon": "rocket", "threat": "trainer",        "effectiveness": 0.80},
    {"weapon": "rocket", "threat": "transport",      "effectiveness": 0.85},
    {"weapon": "ground_missile", "threat": "ground_attack",  "effectiveness": 0.90},
    {"weapon": "ground_missile", "threat": "fighter",        "effectiveness": 0.90},
    {"weapon": "ground_missile", "threat": "helicopter",     "effectiveness": 0.60},
    {"weapon": "ground_missile", "threat": "interceptor",    "effectiveness": 0.95},
    {"weapon": "ground_missile", "threat": "reconnaissance", "effectiveness": 0.85},
    {"weapon": "ground_missile", "threat": "trainer",        "effectiveness": 0.80},
    {"weapon": "ground_missile", "threat": "transport",      "effectiveness": 0.90},
    {"weapon": "smart_bomb", "threat": "ground_attack",  "effectiveness": 0.60},
    {"weapon": "smart_bomb", "threat": "fighter",        "effectiveness": 0.50},
    {"weapon": "smart_bomb", "threat": "helicopter",     "effectiveness": 0.70},
    {"weapon": "smart_bomb", "threat": "interceptor",    "effectiveness": 0.40},
    {"weapon": "smart_bomb", "threat": "reconnaissance", "effectiveness": 0.60},
    {"weapon": "smart_bomb", "threat": "trainer",        "effectiveness": 0.70},
    {"weapon": "smart_bomb", "threat": "transport",      "effectiveness": 0.75},
    {"weapon": "free_fall_bomb", "threat": "ground_attack",  "effectiveness": 0.30},
    {"weapon": "free_fall_bomb", "threat": "fighter",        "effectiveness": 0.20},
    {"weapon": "free_fall_bomb", "threat": "helicopter",     "effectiveness": 0.50},
    {"weapon": "free_fall_bomb", "threat": "interceptor",    "effectiveness": 0.15},
    {"weapon": "free_fall_bomb", "threat": "reconnaissance", "effectiveness": 0.30},
    {"weapon": "free_fall_bomb", "threat": "trainer",        "effectiveness": 0.40},
    {"weapon": "free_fall_bomb", "threat": "transport",      "effectiveness": 0.50},
    {"weapon": "low_level_attack_bomb", "threat": "ground_attack",  "effectiveness": 0.40},
    {"weapon": "low_level_attack_bomb", "threat": "fighter",        "effectiveness": 0.25},
    {"weapon": "low_level_attack_bomb", "threat": "helicopter",     "effectiveness": 0.60},
    {"weapon": "low_level_attack_bomb", "threat": "interceptor",    "effectiveness": 0.20},
    {"weapon": "low_level_attack_bomb", "threat": "reconnaissance", "effectiveness": 0.35},
    {"weapon": "low_level_attack_bomb", "threat": "trainer",        "effectiveness": 0.45},
    {"weapon": "low_level_attack_bomb", "threat": "transport",      "effectiveness": 0.55}
  ]
})";
  static const Json doc = Json::parse(text);
  return doc;
}

struct ProfileShape {
  int threats = 0;  // K
  int assets = 0;   // I
  int weapons = 0;  // J
};

inline ProfileShape profile_shape(Profile p) {
  switch (p) {
    case Profile::Relaxed: return {5, 10, 10};
    case Profile::Stress: return {50, 10, 10};
    case Profile::Starvation: return {6, 10, 10};
    case Profile::Overutilization: return {16, 3, 3};
  }
  return {};
}

namespace detail {

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * rng.uniform(); }

inline std::size_t pick(Rng& rng, std::size_t n) {
  return std::min(n - 1, static_cast<std::size_t>(rng.uniform() * static_cast<double>(n)));
}

inline double round_to(double v, double step) { return std::round(v / step) * step; }

}  // namespace detail

/// Builds a scenario document for the profile. Identical (profile, seed)
/// pairs give identical documents.
inline Json generate_scenario(Profile profile, std::uint64_t seed) {
  using detail::pick;
  using detail::round_to;
  using detail::uniform;
  constexpr double pi = std::numbers::pi;
  Rng rng(seed);
  const ProfileShape shape = profile_shape(profile);
  const Json catalog = standard_catalog();

  std::vector<std::string> threat_types;
  for (const auto& t : catalog["threat_types"]) threat_types.push_back(t["id"].get<std::string>());
  // Area-defence weapons only; the bomb types make poor interceptors.
  const std::vector<std::string> weapon_types{"cannon", "rocket", "ground_missile", "smart_bomb"};

  Json doc;
  doc["name"] = std::string(to_string(profile)) + "-" + std::to_string(seed);
  doc["config"] = {{"tick", 0.1}, {"horizon", 600.0}, {"seed", seed}};
  doc["catalog"] = catalog;

  // Defended assets spread over a ring (a single cluster when I is small).
  const double ring = shape.assets >= 6 ? 12000.0 : 4000.0;
  struct Site {
    double x, y;
  };
  std::vector<Site> sites;
  doc["defended_assets"] = Json::array();
  for (int i = 0; i < shape.assets; ++i) {
    const double a = 2.0 * pi * i / shape.assets + uniform(rng, -0.1, 0.1);
    const double r = ring * uniform(rng, 0.6, 1.0);
    const Site s{round_to(r * std::cos(a), 10.0), round_to(r * std::sin(a), 10.0)};
    sites.push_back(s);
    doc["defended_assets"].push_back({{"id", "DA" + std::to_string(i + 1)},
                                      {"x", s.x},
                                      {"y", s.y},
                                      {"radius", round_to(uniform(rng, 600.0, 1000.0), 10.0)},
                                      {"priority", round_to(uniform(rng, 0.3, 1.0), 0.05)},
                                      {"vulnerability", round_to(uniform(rng, 0.3, 0.9), 0.05)}});
  }

  // Weapon systems distributed round-robin over the assets.
  doc["weapon_systems"] = Json::array();
  for (int j = 0; j < shape.weapons; ++j) {
    const Site& s = sites[static_cast<std::size_t>(j % shape.assets)];
    const double off = uniform(rng, 0.0, 2.0 * pi);
    doc["weapon_systems"].push_back({{"id", "WS" + std::to_string(j + 1)},
                                     {"da", "DA" + std::to_string(j % shape.assets + 1)},
                                     {"x", round_to(s.x + 300.0 * std::cos(off), 1.0)},
                                     {"y", round_to(s.y + 300.0 * std::sin(off), 1.0)},
                                     {"weapon_type", weapon_types[pick(rng, weapon_types.size())]},
                                     {"min_range", 200.0},
                                     {"max_range", round_to(uniform(rng, 7000.0, 9000.0), 100.0)}});
  }

  // Raids come in from a distant ring and fly through a target asset.
  doc["tracks"] = Json::array();
  const double launch_ring = 40000.0;
  int waves = 1;
  double wave_gap = 0.0;
  int real_threats = shape.threats;
  if (profile == Profile::Stress) {
    waves = 5;
    wave_gap = 45.0;
  } else if (profile == Profile::Starvation) {
    real_threats = shape.threats - 1;
  }
  for (int k = 0; k < real_threats; ++k) {
    const int wave = k * waves / real_threats;
    const double t0 = round_to(wave * wave_gap + uniform(rng, 0.0, profile == Profile::Overutilization ? 2.0 : 20.0), 0.1);
    const std::string type = threat_types[pick(rng, threat_types.size())];
    double smin = 0.0, smax = 0.0;
    for (const auto& t : catalog["threat_types"])
      if (t["id"] == type) {
        smin = t["speed_min"].get<double>();
        smax = t["speed_max"].get<double>();
      }
    // Slow types start closer so every raid arrives within the horizon.
    const double speed = round_to(uniform(rng, std::max(smin, 0.5 * (smin + smax) - 0.25 * (smax - smin)), smax), 1.0);
    const double standoff = std::min(launch_ring, speed * uniform(rng, 150.0, 250.0));
    const Site& target = sites[pick(rng, sites.size())];
    const double bearing = uniform(rng, 0.0, 2.0 * pi);
    const double sx = round_to(target.x + standoff * std::cos(bearing), 1.0);
    const double sy = round_to(target.y + standoff * std::sin(bearing), 1.0);
    const double leg = std::hypot(target.x - sx, target.y - sy);
    const double alt0 = round_to(uniform(rng, 300.0, 3000.0), 10.0);
    const double t1 = round_to(t0 + leg / speed, 0.1);
    const double ex = round_to(target.x + (target.x - sx) * 0.25, 1.0);
    const double ey = round_to(target.y + (target.y - sy) * 0.25, 1.0);
    doc["tracks"].push_back(
        {{"id", "T" + std::to_string(k + 1)},
         {"threat_type", type},
         {"waypoints",
          Json::array({{{"t", t0}, {"x", sx}, {"y", sy}, {"alt", alt0}},
                       {{"t", t1}, {"x", target.x}, {"y", target.y}, {"alt", round_to(alt0 * 0.3, 10.0)}},
                       {{"t", round_to(t1 + 0.25 * leg / speed, 0.1)}, {"x", ex}, {"y", ey}, {"alt", 100.0}}})}});
  }
  if (profile == Profile::Starvation) {
    // A transit track far outside every engagement envelope.
    const double y = ring + 40000.0;
    doc["tracks"].push_back({{"id", "T" + std::to_string(shape.threats)},
                             {"threat_type", "reconnaissance"},
                             {"waypoints",
                              Json::array({{{"t", 0.0}, {"x", -30000.0}, {"y", y}, {"alt", 5000.0}},
                                           {{"t", 300.0}, {"x", 30000.0}, {"y", y}, {"alt", 5000.0}}})}});
  }
  return doc;
}

}  // namespace tewa
