#include <gtest/gtest.h>

#include "support.hpp"

using namespace tewa;
using tewa::test::fixture;
using tewa::test::make_da;
using tewa::test::make_ws;
using tewa::test::simple_catalog;
using tewa::test::straight_track;

namespace {

DefendedAsset jet_da(const std::string& id, Point2 at) {
  DefendedAsset da = make_da(id, at);
  da.kill_capability["jet"] = 1.0;
  return da;
}

std::string outcome_trace(const EventLog& log) {
  std::string s;
  for (const auto& e : test::parse_log(log))
    if (e.kind == "FIRE" || e.kind == "KILL" || e.kind == "MISS" || e.kind == "LEAK")
      s += format_fixed(e.t, 3) + " " + e.kind + " " + e.src + " " + e.dst + "\n";
  return s;
}

}  // namespace

TEST(GreedyAssign, SingleThreatMatchesTwoStage) {
  const auto cat = simple_catalog({"gun"});
  const auto da = jet_da("DA1", {0, 0});
  const std::vector<WeaponSystem> wss{make_ws("W1", "DA1", {0, 0}, "gun")};
  const auto tr = straight_track("T1", "jet", {20000, 0}, {-200, 0});
  AssignmentState g(wss), w(wss);
  greedy_assign({{&tr, 0.0}}, {da}, wss, cat, g);
  wa_assign({{&tr, &da}}, wss, cat, w);
  EXPECT_EQ(g.slots("W1").locked, "T1");
  EXPECT_EQ(w.slots("W1").locked, "T1");
}

TEST(GreedyAssign, DetectionOrderThenId) {
  const auto cat = simple_catalog({"gun"});
  const auto da = jet_da("DA1", {0, 0});
  const std::vector<WeaponSystem> wss{make_ws("W1", "DA1", {0, 0}, "gun")};
  const auto a = straight_track("A", "jet", {20000, 0}, {-200, 0});
  const auto b = straight_track("B", "jet", {15000, 0}, {-200, 0});
  AssignmentState st(wss);
  // B is closer but was seen later.
  const auto res = greedy_assign({{&b, 2.0}, {&a, 1.0}}, {da}, wss, cat, st);
  EXPECT_EQ(st.slots("W1").locked, "A");
  EXPECT_EQ(res.unassigned, std::vector<std::string>{"B"});
  AssignmentState tie(wss);
  greedy_assign({{&b, 1.0}, {&a, 1.0}}, {da}, wss, cat, tie);
  EXPECT_EQ(tie.slots("W1").locked, "A");
}

TEST(GreedyAssign, NeverQueues) {
  const auto cat = simple_catalog({"gun"});
  const auto da = jet_da("DA1", {0, 0});
  const std::vector<WeaponSystem> wss{make_ws("W1", "DA1", {0, 0}, "gun"), make_ws("W2", "DA1", {100, 0}, "gun")};
  std::vector<ThreatTrack> threats;
  for (int k = 0; k < 4; ++k) threats.push_back(straight_track("T" + std::to_string(k), "jet", {15000.0 + 1000 * k, 0}, {-200, 0}));
  AssignmentState g(wss);
  std::vector<GreedyTask> gt;
  for (const auto& t : threats) gt.push_back({&t, 0.0});
  const auto res = greedy_assign(gt, {da}, wss, cat, g);
  EXPECT_EQ(res.accepted.size(), 2u);
  EXPECT_GE(res.unassigned.size(), 2u);
  for (const auto& ws : wss) EXPECT_FALSE(g.slots(ws.id).queued);
  EXPECT_TRUE(g.violations(wss).empty());

  // Two-stage also locks at most two; the rest wait or stay unassigned.
  AssignmentState w(wss);
  std::vector<WATask> wt;
  for (const auto& t : threats) wt.push_back({&t, &da});
  wa_assign(wt, wss, cat, w);
  int locks = 0;
  for (const auto& t : threats) locks += w.is_locked(t.id);
  EXPECT_EQ(locks, 2);
}

TEST(GreedyAssign, SkipsAssetsNotFreeToFire) {
  const auto cat = simple_catalog({"gun"});
  auto da = jet_da("DA1", {0, 0});
  da.status = Status::Tight;
  const std::vector<WeaponSystem> wss{make_ws("W1", "DA1", {0, 0}, "gun")};
  const auto tr = straight_track("T1", "jet", {20000, 0}, {-200, 0});
  AssignmentState st(wss);
  const auto res = greedy_assign({{&tr, 0.0}}, {da}, wss, cat, st);
  EXPECT_FALSE(st.slots("W1").locked);
  EXPECT_EQ(res.unassigned.size(), 1u);
}

TEST(Blocking, EnumerationHasUniqueCover) {
  const Scenario sc = fixture("blocking.json");
  const auto en = test::enumerate_locks(sc, 0.0);
  ASSERT_EQ(en.threats.size(), 2u);
  ASSERT_EQ(en.covering.size(), 1u);
  const std::map<std::string, std::string> cover{{"T1", "WS_B"}, {"T2", "WS_A"}};
  EXPECT_EQ(en.covering.front(), cover);
  // T2 can only be taken by WS_A.
  EXPECT_EQ(en.candidates.at("T2"), std::vector<std::string>{"WS_A"});
}

TEST(Blocking, GreedyFirstPickRulesOutTheCover) {
  const Scenario sc = fixture("blocking.json");
  const auto greedy = test::first_cycle_locks(sc, Policy::Greedy);
  EXPECT_EQ(greedy.at("T1"), "WS_A");
  EXPECT_FALSE(greedy.count("T2"));
  const auto two_stage = test::first_cycle_locks(sc, Policy::TwoStage);
  EXPECT_EQ(two_stage.at("T2"), "WS_A");
}

TEST(Blocking, SimulatedOutcomes) {
  const Scenario sc = fixture("blocking.json");
  const auto [ts, ts_log] = run(sc, Policy::TwoStage);
  const auto [gr, gr_log] = run(sc, Policy::Greedy);
  EXPECT_EQ(ts.leakers, 0);
  EXPECT_EQ(ts.covered, 2);
  EXPECT_EQ(gr.leakers, 1);
  EXPECT_LT(gr.covered, ts.covered);
  const auto leaked = std::find_if(gr.threats.begin(), gr.threats.end(),
                                   [](const ThreatRecord& r) { return r.outcome == Outcome::Leaker; });
  ASSERT_NE(leaked, gr.threats.end());
  EXPECT_EQ(leaked->id, "T2");
}

TEST(ContentionFree, PoliciesAgree) {
  const Scenario sc = fixture("contention_free.json");
  EXPECT_EQ(test::first_cycle_locks(sc, Policy::Greedy), test::first_cycle_locks(sc, Policy::TwoStage));
  const auto [ts, ts_log] = run(sc, Policy::TwoStage);
  const auto [gr, gr_log] = run(sc, Policy::Greedy);
  EXPECT_EQ(outcome_trace(ts_log), outcome_trace(gr_log));
  EXPECT_EQ(ts.destroyed, gr.destroyed);
  EXPECT_EQ(ts.leakers, gr.leakers);
  EXPECT_EQ(ts.covered, gr.covered);
}
