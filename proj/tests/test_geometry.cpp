#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <numbers>

#include "support.hpp"

using namespace tewa;
using tewa::test::Draw;

namespace {

constexpr double pi = std::numbers::pi;

ThreatLine line_through(Point2 p, Vec2 d) { return ThreatLine::from_heading(p, d); }

double rel_err(double got, double want, double scale) { return std::abs(got - want) / std::max(1.0, scale); }

/// Dense ray sampling: first and last sampled parameter inside the sector.
std::optional<std::pair<double, double>> sample_window(Point2 pos, Vec2 dir, const WSSector& sec, double length,
                                                       double step) {
  std::optional<double> first, last;
  for (double s = 0.0; s <= length; s += step) {
    if (sec.contains(pos + dir * s)) {
      if (!first) first = s;
      last = s;
    }
  }
  if (!first) return std::nullopt;
  return std::make_pair(*first, *last);
}

}  // namespace

TEST(CircleLine, HorizontalThroughUnitCircle) {
  const auto sol = circle_line_intersections({{0, 0}, 1.0}, line_through({-5, 0}, {1, 0}));
  ASSERT_EQ(sol.points.size(), 2u);
  EXPECT_NEAR(sol.points[0].x, -1.0, 1e-12);
  EXPECT_NEAR(sol.points[1].x, 1.0, 1e-12);
  EXPECT_NEAR(sol.points[0].y, 0.0, 1e-12);
}

TEST(CircleLine, TangentLine) {
  const auto sol = circle_line_intersections({{0, 0}, 1.0}, line_through({-5, 1}, {1, 0}));
  ASSERT_EQ(sol.points.size(), 1u);
  EXPECT_NEAR(sol.points[0].x, 0.0, 1e-9);
  EXPECT_NEAR(sol.points[0].y, 1.0, 1e-9);
}

TEST(CircleLine, OffsetCircleDiagonalLine) {
  const auto sol = circle_line_intersections({{2, 3}, 5.0}, line_through({-10, -10}, {1, 1}));
  ASSERT_EQ(sol.points.size(), 2u);
  EXPECT_NEAR(sol.points[0].x, -1.0, 1e-9);
  EXPECT_NEAR(sol.points[0].y, -1.0, 1e-9);
  EXPECT_NEAR(sol.points[1].x, 6.0, 1e-9);
  EXPECT_NEAR(sol.points[1].y, 6.0, 1e-9);
  for (auto p : sol.points) EXPECT_NEAR((p.x - 2) * (p.x - 2) + (p.y - 3) * (p.y - 3), 25.0, 1e-9);
}

TEST(CircleLine, CoefficientsUseCorrectedLinearTerm) {
  // y = 2x + 1 against centre (3, -4), r = 2.
  const double m = 2.0, c = 1.0, x0 = 3.0, y0 = -4.0, r = 2.0;
  const auto sol = circle_line_intersections({{x0, y0}, r}, line_through({0, c}, {1, m}));
  ASSERT_EQ(sol.form, QuadraticForm::SlopeIntercept);
  EXPECT_NEAR(sol.a, 1 + m * m, 1e-12);
  EXPECT_NEAR(sol.b, 2 * (m * c - x0 - m * y0), 1e-12);
  EXPECT_NEAR(sol.c_coef, x0 * x0 + y0 * y0 + c * c - r * r - 2 * y0 * c, 1e-12);
  // The linear term without m on y0 yields x values that miss the circle.
  const double b_printed = 2 * (m * c - x0 - y0);
  const double disc = b_printed * b_printed - 4 * sol.a * sol.c_coef;
  if (disc >= 0) {
    const double xr = (-b_printed + std::sqrt(disc)) / (2 * sol.a);
    const double yr = m * xr + c;
    EXPECT_GT(std::abs((xr - x0) * (xr - x0) + (yr - y0) * (yr - y0) - r * r), 1e-3);
  }
}

TEST(CircleLine, VerticalLineUsesParametricForm) {
  const auto sol = circle_line_intersections({{0, 0}, 1.0}, line_through({0.5, -3}, {0, 1}));
  EXPECT_EQ(sol.form, QuadraticForm::Parametric);
  ASSERT_EQ(sol.points.size(), 2u);
  EXPECT_NEAR(sol.points[0].x, 0.5, 1e-12);
  EXPECT_NEAR(sol.points[0].y, -std::sqrt(0.75), 1e-12);
  EXPECT_NEAR(sol.points[1].y, std::sqrt(0.75), 1e-12);
}

TEST(CircleLine, NearVerticalAgreesWithVertical) {
  const DAFootprint fp{{1, 2}, 3.0};
  const auto v = circle_line_intersections(fp, line_through({1.5, -10}, {0, 1}));
  const auto nv = circle_line_intersections(fp, line_through({1.5, -10}, {1e-7, 1}));
  ASSERT_EQ(v.points.size(), 2u);
  ASSERT_EQ(nv.points.size(), 2u);
  for (int i = 0; i < 2; ++i) {
    EXPECT_NEAR(v.points[i].x, nv.points[i].x, 1e-5);
    EXPECT_NEAR(v.points[i].y, nv.points[i].y, 1e-5);
  }
}

TEST(CircleLine, MissingLineGivesNoPoints) {
  const auto sol = circle_line_intersections({{0, 0}, 1.0}, line_through({-5, 2}, {1, 0}));
  EXPECT_TRUE(sol.points.empty());
  EXPECT_LT(sol.discriminant, 0.0);
}

TEST(CircleLine, RejectsDegenerateInput) {
  EXPECT_THROW(circle_line_intersections({{0, 0}, 0.0}, line_through({0, 0}, {1, 0})), std::invalid_argument);
  EXPECT_THROW(line_through({0, 0}, {0, 0}), std::invalid_argument);
  EXPECT_THROW(line_through({NAN, 0}, {1, 0}), std::invalid_argument);
}

TEST(CircleLine, SeededRootSubstitutionAndTrichotomy) {
  Draw draw(11);
  for (int i = 0; i < 1000; ++i) {
    const DAFootprint fp{{draw(-1e4, 1e4), draw(-1e4, 1e4)}, draw(1.0, 5e3)};
    const Point2 o{draw(-2e4, 2e4), draw(-2e4, 2e4)};
    const double ang = draw(0, 2 * pi);
    const ThreatLine ln = line_through(o, {std::cos(ang), std::sin(ang)});
    const auto sol = circle_line_intersections(fp, ln);
    // Independent oracle: distance from centre to the line.
    const Vec2 w = fp.center - o;
    const double dist = std::abs(cross(ln.direction, w));
    const double scale = fp.radius + norm(w);
    if (dist < fp.radius * (1 - 1e-6)) {
      EXPECT_EQ(sol.points.size(), 2u) << i;
    } else if (dist > fp.radius * (1 + 1e-6)) {
      EXPECT_EQ(sol.points.size(), 0u) << i;
    }
    const double eps = tangency_tolerance(sol.b, sol.a);
    const std::size_t by_disc = sol.discriminant < -eps ? 0u : (sol.discriminant <= eps ? 1u : 2u);
    EXPECT_EQ(sol.points.size(), by_disc);
    for (auto p : sol.points) {
      EXPECT_LE(rel_err(norm(p - fp.center), fp.radius, scale), 1e-9);
      EXPECT_LE(std::abs(cross(ln.direction, p - o)) / std::max(1.0, scale), 1e-9);
      if (auto m = ln.slope()) {
        EXPECT_LE(rel_err(p.y, *m * p.x + *ln.intercept(), scale * (1 + std::abs(*m))), 1e-9);
      }
    }
  }
}

TEST(Poi, CollinearApproach) {
  const auto poi = earliest_poi({-10, 0}, {1, 0}, 1.0, {{0, 0}, 1.0});
  ASSERT_TRUE(poi);
  EXPECT_NEAR(poi->poi.x, -1.0, 1e-12);
  EXPECT_NEAR(poi->time_to_da, 9.0, 1e-12);
}

TEST(Poi, CircleBehindTrack) { EXPECT_FALSE(earliest_poi({10, 0}, {1, 0}, 1.0, {{0, 0}, 1.0})); }

TEST(Poi, TangentApproach) {
  const auto poi = earliest_poi({-10, 1}, {1, 0}, 1.0, {{0, 0}, 1.0});
  ASSERT_TRUE(poi);
  EXPECT_NEAR(poi->poi.x, 0.0, 1e-6);
  EXPECT_NEAR(poi->poi.y, 1.0, 1e-9);
}

TEST(Poi, InsideCircleTakesForwardExit) {
  const auto poi = earliest_poi({0, 0}, {1, 0}, 2.0, {{0, 0}, 4.0});
  ASSERT_TRUE(poi);
  EXPECT_NEAR(poi->poi.x, 4.0, 1e-12);
  EXPECT_NEAR(poi->time_to_da, 2.0, 1e-12);
}

TEST(Distance, Examples) {
  EXPECT_DOUBLE_EQ(euclidean_distance({0, 0}, {3, 4}), 5.0);
  EXPECT_DOUBLE_EQ(euclidean_distance({7.5, -2}, {7.5, -2}), 0.0);
  EXPECT_NEAR(euclidean_distance({-1, -1}, {6, 6}), 7 * std::sqrt(2.0), 1e-12);
  EXPECT_DOUBLE_EQ(euclidean_distance({1, 2}, {4, -2}), euclidean_distance({4, -2}, {1, 2}));
}

TEST(TimeToPoint, Examples) {
  EXPECT_DOUBLE_EQ(time_to_point(1000, 250), 4.0);
  EXPECT_DOUBLE_EQ(time_to_point(0, 17), 0.0);
  EXPECT_DOUBLE_EQ(time_to_point(9, 1), 9.0);
  EXPECT_THROW(time_to_point(10, 0), std::invalid_argument);
  EXPECT_THROW(time_to_point(10, -3), std::invalid_argument);
  Draw draw(5);
  for (int i = 0; i < 100; ++i) {
    const double d = draw(0, 1e5), s = draw(1e-3, 1e3);
    EXPECT_NEAR(time_to_point(d, s) * s, d, 1e-12 * std::max(1.0, d));
  }
}

TEST(Sector, MembershipIsClosed) {
  WSSector sec;
  sec.origin = {0, 0};
  sec.min_range = 1;
  sec.max_range = 5;
  sec.start_angle = 0;
  sec.sweep_angle = pi / 2;
  EXPECT_TRUE(sec.contains({1, 0}));
  EXPECT_TRUE(sec.contains({5, 0}));
  EXPECT_TRUE(sec.contains({0, 3}));
  EXPECT_FALSE(sec.contains({-1, 3}));
  EXPECT_FALSE(sec.contains({0.5, 0}));
  EXPECT_FALSE(sec.contains({3, -0.01}));
}

TEST(Sector, FullCircleReducesToCircleIntersection) {
  WSSector sec;
  sec.origin = {3, -2};
  sec.min_range = 1e-6;
  sec.max_range = 50;
  const auto win = sector_entry_exit({-100, 7}, unit({1, 0.1}), 4.0, sec);
  ASSERT_TRUE(win);
  const auto sol = circle_line_intersections({sec.origin, sec.max_range}, line_through({-100, 7}, {1, 0.1}));
  ASSERT_EQ(sol.points.size(), 2u);
  EXPECT_NEAR(win->entry.x, sol.points[0].x, 1e-6);
  EXPECT_NEAR(win->exit.y, sol.points[1].y, 1e-6);
  EXPECT_NEAR(win->entry_time, euclidean_distance({-100, 7}, sol.points[0]) / 4.0, 1e-6);
}

TEST(Sector, TrackOutsideRangeIsAbsent) {
  WSSector sec;
  sec.min_range = 1;
  sec.max_range = 5;
  EXPECT_FALSE(sector_entry_exit({-10, 6}, {1, 0}, 1.0, sec));
}

TEST(Sector, QuarterSectorMatchesSampling) {
  WSSector sec;
  sec.min_range = 1;
  sec.max_range = 5;
  sec.start_angle = 0;
  sec.sweep_angle = pi / 2;
  const auto win = sector_entry_exit({-10, 2}, {1, 0}, 1.0, sec);
  ASSERT_TRUE(win);
  EXPECT_TRUE(sec.contains(win->entry));
  EXPECT_TRUE(sec.contains(win->exit));
  EXPECT_NEAR(win->entry.x, 0.0, 1e-9);
  EXPECT_NEAR(win->exit.x, std::sqrt(21.0), 1e-9);
  const double length = 20.0;
  const double step = 1e-3 * length;
  const auto s = sample_window({-10, 2}, {1, 0}, sec, length, step);
  ASSERT_TRUE(s);
  EXPECT_NEAR(win->entry_time, s->first, step);
  EXPECT_NEAR(win->exit_time, s->second, step);
}

TEST(Sector, SeededSamplingOracle) {
  Draw draw(23);
  int compared = 0;
  for (int i = 0; i < 200; ++i) {
    WSSector sec;
    sec.origin = {draw(-50, 50), draw(-50, 50)};
    sec.min_range = draw(0.5, 10);
    sec.max_range = sec.min_range + draw(5, 60);
    sec.start_angle = draw(0, 2 * pi);
    sec.sweep_angle = draw(0.2, 2 * pi);
    const Point2 pos{draw(-80, 80), draw(-80, 80)};
    const double ang = draw(0, 2 * pi);
    const Vec2 dir{std::cos(ang), std::sin(ang)};
    const double speed = draw(0.5, 5);
    const double length = norm(pos - sec.origin) + sec.max_range + 1.0;
    const double step = 1e-3 * length;
    const auto win = sector_entry_exit(pos, dir, speed, sec);
    const auto s = sample_window(pos, dir, sec, length, step);
    if (!s) {
      // Sampling can only miss a sliver shorter than one step.
      if (win) {
        EXPECT_LE(win->exit_time * speed - win->entry_time * speed, step + 1e-9) << i;
      }
      continue;
    }
    ASSERT_TRUE(win) << i;
    EXPECT_NEAR(win->entry_time * speed, s->first, step + 1e-9) << i;
    EXPECT_NEAR(win->exit_time * speed, s->second, step + 1e-9) << i;
    EXPECT_TRUE(sec.contains(win->entry));
    EXPECT_TRUE(sec.contains(win->exit));
    EXPECT_LE(win->entry_time, win->exit_time);
    ++compared;
  }
  EXPECT_GT(compared, 30);
}

TEST(Elevation, Examples) {
  EXPECT_NEAR(required_elevation(1000, 1000), pi / 4, 1e-12);
  EXPECT_DOUBLE_EQ(required_elevation(1000, 0), 0.0);
  EXPECT_NEAR(required_elevation(1000, 577.35), pi / 6, 1e-6);
  EXPECT_THROW(required_elevation(0, 100), std::domain_error);
  EXPECT_THROW(required_elevation(100, -1), std::invalid_argument);
}

TEST(Lead, StationaryTarget) {
  WSSector sec;
  sec.min_range = 1;
  sec.max_range = 1000;
  const auto lead = lead_and_launch({300, 400}, {0, 0}, sec, 100.0);
  ASSERT_TRUE(lead);
  EXPECT_NEAR(lead->tof, 5.0, 1e-12);
  EXPECT_NEAR(lead->launch_point.x, 300, 1e-12);
}

TEST(Lead, RecedingFasterThanProjectile) {
  WSSector sec;
  sec.min_range = 1;
  sec.max_range = 1e6;
  EXPECT_FALSE(lead_and_launch({100, 0}, {60, 0}, sec, 50.0));
}

TEST(Lead, CrossingTarget) {
  WSSector sec;
  sec.min_range = 1;
  sec.max_range = 1000;
  const auto lead = lead_and_launch({100, 0}, {0, 10}, sec, 50.0);
  ASSERT_TRUE(lead);
  const double t = 100.0 / std::sqrt(2400.0);
  EXPECT_NEAR(lead->tof, t, 1e-12);
  EXPECT_NEAR(100.0 * 100.0 + (10 * t) * (10 * t), (50 * t) * (50 * t), 1e-9);
  EXPECT_NEAR(lead->launch_point.y, 10 * t, 1e-12);
}

TEST(Lead, InterceptOutsideSectorIsAbsent) {
  WSSector sec;
  sec.min_range = 1;
  sec.max_range = 50;
  EXPECT_FALSE(lead_and_launch({100, 0}, {0, 10}, sec, 50.0));
}

TEST(Lead, SeededRangeIdentity) {
  Draw draw(31);
  int solved = 0;
  for (int i = 0; i < 500; ++i) {
    WSSector sec;
    sec.origin = {draw(-100, 100), draw(-100, 100)};
    sec.min_range = 1;
    sec.max_range = 1e5;
    const Point2 pos{draw(-5000, 5000), draw(-5000, 5000)};
    const Vec2 vel{draw(-300, 300), draw(-300, 300)};
    const double s = draw(100, 1500);
    const auto lead = lead_and_launch(pos, vel, sec, s);
    if (!lead) continue;
    ++solved;
    EXPECT_GT(lead->tof, 0.0);
    const double range = norm(lead->launch_point - sec.origin);
    EXPECT_LE(std::abs(range - s * lead->tof) / range, 1e-9);
    EXPECT_LE(norm(lead->launch_point - (pos + vel * lead->tof)), 1e-6 * std::max(1.0, range));
  }
  EXPECT_GT(solved, 300);
}

TEST(Geometry, RotationInvariance) {
  Draw draw(41);
  for (int i = 0; i < 100; ++i) {
    const double theta = draw(-pi, pi);
    const Point2 about{draw(-10, 10), draw(-10, 10)};
    WSSector sec;
    sec.origin = {draw(-20, 20), draw(-20, 20)};
    sec.min_range = 2;
    sec.max_range = 40;
    sec.start_angle = draw(0, 2 * pi);
    sec.sweep_angle = draw(0.5, 5.5);
    const Point2 pos{draw(-80, 80), draw(-80, 80)};
    const Vec2 dir = unit(sec.origin - pos + Vec2{draw(-10, 10), draw(-10, 10)});
    WSSector rsec = sec;
    rsec.origin = rotate(sec.origin, theta, about);
    rsec.start_angle = wrap_angle(sec.start_angle + theta);
    const auto a = sector_entry_exit(pos, dir, 2.0, sec);
    const auto b = sector_entry_exit(rotate(pos, theta, about), rotate(dir, theta), 2.0, rsec);
    ASSERT_EQ(a.has_value(), b.has_value()) << i;
    if (a) {
      const Point2 re = rotate(a->entry, theta, about);
      EXPECT_NEAR(re.x, b->entry.x, 1e-6);
      EXPECT_NEAR(re.y, b->entry.y, 1e-6);
      EXPECT_NEAR(a->exit_time, b->exit_time, 1e-6);
    }
    const DAFootprint fp{{draw(-20, 20), draw(-20, 20)}, 15.0};
    const auto p1 = circle_line_intersections(fp, line_through(pos, dir));
    const auto p2 = circle_line_intersections({rotate(fp.center, theta, about), 15.0},
                                              line_through(rotate(pos, theta, about), rotate(dir, theta)));
    ASSERT_EQ(p1.points.size(), p2.points.size());
    for (std::size_t k = 0; k < p1.points.size(); ++k) {
      const Point2 r = rotate(p1.points[k], theta, about);
      EXPECT_NEAR(r.x, p2.points[k].x, 1e-6);
      EXPECT_NEAR(r.y, p2.points[k].y, 1e-6);
    }
  }
}
