#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "support.hpp"

using namespace tewa;
using tewa::test::fixture;
using tewa::test::parse_log;

namespace {

ThreatTrack track_of(std::vector<Waypoint> wps) {
  ThreatTrack tr;
  tr.id = "T";
  tr.threat_type = "jet";
  tr.waypoints = std::move(wps);
  return tr;
}

std::size_t index_of(const std::vector<test::ParsedEvent>& evs, const std::string& kind, std::size_t from = 0) {
  for (std::size_t i = from; i < evs.size(); ++i)
    if (evs[i].kind == kind) return i;
  return evs.size();
}

}  // namespace

TEST(Kinematics, LinearInterpolation) {
  auto tr = track_of({{0, {0, 0}, 100}, {1, {10, 0}, 100}});
  EXPECT_EQ(step_kinematics(tr, 0.5), TrackPhase::Active);
  EXPECT_DOUBLE_EQ(tr.position.x, 5.0);
  EXPECT_DOUBLE_EQ(tr.position.y, 0.0);
  EXPECT_DOUBLE_EQ(tr.velocity.x, 10.0);
  EXPECT_DOUBLE_EQ(tr.velocity.y, 0.0);
  EXPECT_DOUBLE_EQ(tr.speed, 10.0);
}

TEST(Kinematics, SingleWaypointIsStationary) {
  auto tr = track_of({{0, {3, 4}, 50}});
  EXPECT_EQ(step_kinematics(tr, 7.0), TrackPhase::Active);
  EXPECT_DOUBLE_EQ(tr.position.x, 3.0);
  EXPECT_DOUBLE_EQ(tr.speed, 0.0);
  EXPECT_DOUBLE_EQ(tr.velocity.x, 0.0);
  EXPECT_DOUBLE_EQ(tr.velocity.y, 0.0);
}

TEST(Kinematics, TurnChangesVelocityAtMiddleWaypoint) {
  auto tr = track_of({{0, {0, 0}, 100}, {10, {100, 0}, 100}, {20, {100, 300}, 50}});
  step_kinematics(tr, 9.99);
  EXPECT_NEAR(tr.velocity.x, 10.0, 1e-12);
  EXPECT_NEAR(tr.speed, 10.0, 1e-12);
  EXPECT_DOUBLE_EQ(tr.climb_rate, 0.0);
  step_kinematics(tr, 10.0);
  // Outgoing segment at the waypoint itself: (0, 300) / 10 s.
  EXPECT_NEAR(tr.velocity.x, 0.0, 1e-12);
  EXPECT_NEAR(tr.velocity.y, 30.0, 1e-12);
  EXPECT_NEAR(tr.speed, 30.0, 1e-12);
  EXPECT_NEAR(tr.climb_rate, -5.0, 1e-12);
  EXPECT_NEAR(tr.position.x, 100.0, 1e-12);
}

TEST(Kinematics, PhasesBeforeAndAfter) {
  auto tr = track_of({{5, {0, 0}, 100}, {10, {50, 0}, 100}});
  EXPECT_EQ(step_kinematics(tr, 1.0), TrackPhase::NotStarted);
  EXPECT_EQ(step_kinematics(tr, 10.0), TrackPhase::Active);
  EXPECT_EQ(step_kinematics(tr, 10.5), TrackPhase::Exited);
}

TEST(Adjudication, CertainOutcomes) {
  const Catalog cat = test::simple_catalog({"gun"});
  auto ws = test::make_ws("W", "DA", {0, 0}, "gun");
  const auto tr = test::straight_track("T", "jet", {1000, 0}, {-100, 0});
  Rng rng(5);
  ws.lethality_index = 1.0;
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(adjudicate_shot(ws, tr, cat, rng), ShotResult::Kill);
  ws.lethality_index = 0.0;
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(adjudicate_shot(ws, tr, cat, rng), ShotResult::Miss);
}

TEST(Adjudication, BernoulliRateMatches) {
  const Catalog cat = test::simple_catalog({"gun"}, 0.9);
  auto ws = test::make_ws("W", "DA", {0, 0}, "gun");
  ws.lethality_index = 0.8;
  const auto tr = test::straight_track("T", "jet", {1000, 0}, {-100, 0});
  ASSERT_NEAR(shot_kill_probability(ws, tr, cat), 0.72, 1e-12);
  Rng rng(20240601);
  int kills = 0;
  for (int i = 0; i < 10000; ++i) kills += adjudicate_shot(ws, tr, cat, rng) == ShotResult::Kill;
  EXPECT_NEAR(kills / 10000.0, 0.72, 0.02);
}

TEST(Engine, EmptyScenarioProducesNothing) {
  Scenario sc;
  sc.name = "empty";
  sc.catalog = test::simple_catalog({"gun"});
  const auto [rep, log] = run(sc);
  EXPECT_TRUE(log.empty());
  EXPECT_EQ(rep.shots, 0);
  EXPECT_EQ(rep.destroyed + rep.leakers + rep.active, 0);
}

TEST(Engine, CanonicalSingleEngagement) {
  const auto [rep, log] = run(fixture("canonical_single.json"));
  const auto evs = parse_log(log);
  const std::size_t p = index_of(evs, "PROPOSE");
  const std::size_t a = index_of(evs, "ACCEPT", p);
  const std::size_t l = index_of(evs, "LOCK", a);
  const std::size_t f = index_of(evs, "FIRE", l);
  const std::size_t k = index_of(evs, "KILL", f);
  ASSERT_LT(k, evs.size());
  EXPECT_EQ(evs[f].src, "WS1");
  EXPECT_EQ(evs[f].dst, "T1");
  EXPECT_EQ(rep.kills, 1);
  EXPECT_EQ(rep.destroyed, 1);
  EXPECT_EQ(rep.leakers, 0);

  // The round leaves inside the sector window of the track.
  const Scenario sc = fixture("canonical_single.json");
  auto tr = sc.tracks[0];
  step_kinematics(tr, 0.0);
  const auto plan = plan_engagement(tr, sc.weapon_systems[0]);
  ASSERT_TRUE(plan);
  EXPECT_GE(evs[f].t, plan->launch_delay - 0.1);
  EXPECT_LE(evs[f].t, plan->exit_time);
}

TEST(Engine, StressFixtureEntersPreferential) {
  const auto [rep, log] = run(fixture("stress.json"));
  EXPECT_TRUE(rep.ever_in(Mode::Preferential));
  EXPECT_GE(log.count(EventKind::Mode), 1u);
}

TEST(Engine, ConstraintsHoldAfterEveryCycle) {
  Engine eng(fixture("stress.json"));
  int cycles = 0;
  eng.set_cycle_hook([&](const Engine& e) {
    ++cycles;
    std::map<std::string, int> locks;
    for (const auto& [ws, s] : e.state().all_slots()) {
      ASSERT_LE(e.state().scheduled_count(ws), 2);
      if (s.locked) ++locks[*s.locked];
    }
    for (const auto& [threat, n] : locks) ASSERT_EQ(n, 1) << threat;
    for (const auto& da : e.scenario().das) {
      if (da.status != Status::FreeToFire) {
        ASSERT_TRUE(da.assigned_threats.empty());
      }
    }
  });
  eng.run();
  EXPECT_GT(cycles, 10);
}

TEST(Engine, DeterministicOnFixtures) {
  for (const char* name : {"canonical_single.json", "stochastic.json", "stress.json"}) {
    const Scenario sc = fixture(name);
    const auto a = run(sc, Policy::TwoStage, 11);
    const auto b = run(sc, Policy::TwoStage, 11);
    EXPECT_EQ(a.second.str(), b.second.str()) << name;
  }
}

TEST(Engine, OutcomesConserved) {
  for (const char* name : {"canonical_single.json", "stochastic.json", "stress.json", "relaxed.json", "blocking.json"}) {
    const Scenario sc = fixture(name);
    for (Policy p : {Policy::TwoStage, Policy::Greedy}) {
      Engine eng(sc, p);
      eng.set_cycle_hook([&](const Engine& e) {
        const auto r = e.report();
        ASSERT_EQ(r.destroyed + r.leakers + r.active, static_cast<int>(sc.tracks.size()));
      });
      const auto rep = eng.run();
      EXPECT_EQ(rep.destroyed + rep.leakers + rep.active, static_cast<int>(sc.tracks.size())) << name;
      EXPECT_EQ(rep.kills + rep.misses + rep.voided, rep.shots) << name;
      for (const auto& d : rep.das) {
        EXPECT_GE(d.survival_value, 0.0);
        EXPECT_LE(d.survival_value, d.priority + 1e-12);
      }
    }
  }
}

TEST(Engine, FireOnlyInsideSector) {
  for (const char* name : {"stress.json", "stochastic.json", "blocking.json"}) {
    const Scenario sc = fixture(name);
    const auto [rep, log] = run(sc);
    for (const auto& e : parse_log(log)) {
      if (e.kind != "FIRE") continue;
      const auto ws = std::find_if(sc.weapon_systems.begin(), sc.weapon_systems.end(),
                                   [&](const auto& w) { return w.id == e.src; });
      ASSERT_NE(ws, sc.weapon_systems.end());
      // Logged launch points carry two decimals.
      WSSector widened = ws->sector;
      widened.min_range -= 0.01;
      widened.max_range += 0.01;
      const Point2 lp{std::stod(e.data.at("lx")), std::stod(e.data.at("ly"))};
      EXPECT_TRUE(widened.contains(lp)) << name << " " << e.src << " t=" << e.t;
    }
  }
}

TEST(Engine, DeadEntitiesAreInert) {
  for (const char* name : {"stress.json", "stochastic.json", "boundary.json"}) {
    const Scenario sc = fixture(name);
    const auto [rep, log] = run(sc);
    std::set<std::string> dead;
    for (const auto& ws : sc.weapon_systems)
      if (ws.condition == Condition::Destroyed) dead.insert(ws.id);
    for (const auto& e : parse_log(log)) {
      EXPECT_FALSE(dead.count(e.src)) << name << " t=" << e.t << " " << e.kind << " " << e.src;
      EXPECT_FALSE(dead.count(e.dst)) << name << " t=" << e.t << " " << e.kind << " " << e.dst;
      if (e.kind == "KILL") dead.insert(e.dst);
      if (e.kind == "LEAK") dead.insert(e.src);
    }
  }
}

TEST(Engine, DownWeaponNeverEngages) {
  const Scenario sc = fixture("boundary.json");
  const auto [rep, log] = run(sc);
  for (const auto& ws : sc.weapon_systems) {
    if (ws.operational()) continue;
    for (const auto& e : parse_log(log)) EXPECT_TRUE(e.src != ws.id && e.dst != ws.id) << e.kind;
  }
  EXPECT_FALSE(rep.ever_in(Mode::Preferential));
}

TEST(Engine, DifferentSeedsDifferOnStochasticFixture) {
  const Scenario sc = fixture("stochastic.json");
  auto outcomes = [&](std::uint64_t seed) {
    std::string s;
    for (const auto& e : parse_log(run(sc, Policy::TwoStage, seed).second))
      if (e.kind == "KILL" || e.kind == "MISS") s += e.kind + ":" + e.dst + ";";
    return s;
  };
  EXPECT_NE(outcomes(1), outcomes(2));
}

TEST(Engine, RejectsTrackWithoutWaypoints) {
  Scenario sc;
  sc.catalog = test::simple_catalog({"gun"});
  ThreatTrack tr;
  tr.id = "T";
  tr.threat_type = "jet";
  sc.tracks.push_back(tr);
  EXPECT_THROW(Engine{sc}, std::invalid_argument);
}

TEST(Policy, ParseAndPrint) {
  EXPECT_EQ(parse_policy("two-stage"), Policy::TwoStage);
  EXPECT_EQ(parse_policy("greedy"), Policy::Greedy);
  EXPECT_FALSE(parse_policy("optimal"));
  EXPECT_EQ(to_string(Policy::Greedy), "greedy");
}
