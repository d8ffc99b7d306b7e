#pragma once

// Planar intercept geometry: circle/line intersections for defended-asset
// footprints, weapon-sector entry/exit, lead computation and elevation.
//
// Everything here is a pure function. Internally lines are handled in
// parametric ray form (origin + s * direction, |direction| = 1); the
// slope-intercept coefficients are only exposed for diagnostics.

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

namespace tewa {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point2 operator*(Point2 a, double k) { return {a.x * k, a.y * k}; }
  friend constexpr Point2 operator*(double k, Point2 a) { return {a.x * k, a.y * k}; }
  friend constexpr bool operator==(Point2, Point2) = default;
};

/// Displacements and velocities share the point representation.
using Vec2 = Point2;

constexpr double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
constexpr double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

inline bool is_finite(Point2 p) { return std::isfinite(p.x) && std::isfinite(p.y); }

inline Point2 rotate(Point2 p, double angle, Point2 about = {}) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  const Vec2 d = p - about;
  return about + Vec2{c * d.x - s * d.y, s * d.x + c * d.y};
}

/// Angle wrapped into [0, 2*pi).
inline double wrap_angle(double a) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  a = std::fmod(a, two_pi);
  if (a < 0.0) a += two_pi;
  if (a >= two_pi) a -= two_pi;
  return a;
}

namespace detail {

inline void require_finite(Point2 p, const char* what) {
  if (!is_finite(p)) throw std::invalid_argument(std::string(what) + ": non-finite coordinate");
}

inline void require_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) throw std::invalid_argument(std::string(what) + " must be positive and finite");
}

}  // namespace detail

/// Unit direction of a heading vector. Throws on a zero or non-finite vector.
inline Vec2 unit(Vec2 v) {
  detail::require_finite(v, "heading");
  const double n = norm(v);
  if (!(n > 0.0)) throw std::invalid_argument("heading: zero vector has no direction");
  return {v.x / n, v.y / n};
}

/// Extended threat velocity vector.
struct ThreatLine {
  Point2 origin;
  Vec2 direction;  // unit

  static ThreatLine from_heading(Point2 origin, Vec2 heading) {
    detail::require_finite(origin, "line origin");
    return {origin, unit(heading)};
  }

  /// |direction.x| below this is treated as vertical; the slope form is then undefined.
  static constexpr double vertical_tolerance = 1e-9;

  bool is_vertical() const { return std::abs(direction.x) < vertical_tolerance; }

  /// Slope m of y = m x + c, when defined.
  std::optional<double> slope() const {
    if (is_vertical()) return std::nullopt;
    return direction.y / direction.x;
  }

  /// Intercept c of y = m x + c, when defined.
  std::optional<double> intercept() const {
    auto m = slope();
    if (!m) return std::nullopt;
    return origin.y - *m * origin.x;
  }

  Point2 at(double s) const { return origin + direction * s; }

  /// Ray parameter of the orthogonal projection of p.
  double parameter_of(Point2 p) const { return dot(p - origin, direction); }
};

struct DAFootprint {
  Point2 center;
  double radius = 1.0;

  bool contains(Point2 p) const {
    const double d = norm(p - center);
    return d <= radius * (1.0 + 1e-12);
  }
};

enum class QuadraticForm { SlopeIntercept, Parametric };

/// Roots of the circle/line quadratic. For the slope-intercept form the
/// unknown is x; for the parametric form it is the ray parameter s.
struct IntersectionSolution {
  QuadraticForm form = QuadraticForm::SlopeIntercept;
  double a = 0.0;
  double b = 0.0;
  double c_coef = 0.0;
  double discriminant = 0.0;
  std::vector<Point2> points;  // 0, 1 (tangent) or 2, ordered along the line direction
};

/// Scale-aware tangency band: |disc| <= 1e-9 * (a + b^2 / a), i.e. 1e-9 * (1 + b^2)
/// for a monic quadratic. Dividing by a keeps steep lines (a ~ m^2) from reading as tangent.
inline double tangency_tolerance(double b, double a = 1.0) { return 1e-9 * (a + b * b / a); }

/// Intersections of a line with a circular footprint.
///
/// Non-vertical lines use the substitution of y = m x + c into the circle
/// equation, giving (1 + m^2) x^2 + 2 (m c - x0 - m y0) x
/// + (x0^2 + y0^2 + c^2 - r^2 - 2 y0 c) = 0. Vertical lines fall back to the
/// parametric quadratic s^2 + 2 (w . d) s + |w|^2 - r^2 = 0 with w = origin - center.
inline IntersectionSolution circle_line_intersections(const DAFootprint& footprint, const ThreatLine& line) {
  detail::require_finite(footprint.center, "footprint center");
  detail::require_positive(footprint.radius, "footprint radius");
  detail::require_finite(line.origin, "line origin");

  IntersectionSolution sol;
  const double x0 = footprint.center.x;
  const double y0 = footprint.center.y;
  const double r = footprint.radius;

  // Numerically stable pair of roots; assumes disc > 0.
  auto stable_roots = [](double a, double b, double c, double disc) {
    const double q = -0.5 * (b + std::copysign(std::sqrt(disc), b));
    double r1 = q / a;
    double r2 = (q != 0.0) ? c / q : -r1;
    if (r1 > r2) std::swap(r1, r2);
    return std::array<double, 2>{r1, r2};
  };

  if (!line.is_vertical()) {
    const double m = *line.slope();
    const double c = *line.intercept();
    sol.form = QuadraticForm::SlopeIntercept;
    sol.a = 1.0 + m * m;
    sol.b = 2.0 * (m * c - x0 - m * y0);
    sol.c_coef = x0 * x0 + y0 * y0 + c * c - r * r - 2.0 * y0 * c;
    sol.discriminant = sol.b * sol.b - 4.0 * sol.a * sol.c_coef;
    const double eps = tangency_tolerance(sol.b, sol.a);
    const bool tangent = std::abs(sol.discriminant) <= eps;
    if (!tangent && sol.discriminant < 0.0) return sol;
    if (std::abs(m) > 1.0) {
      // Steep: y = m x + c amplifies x error by m, so place points along the line instead.
      const Vec2 w = line.origin - footprint.center;
      const double pb = 2.0 * dot(w, line.direction);
      const double pc = dot(w, w) - r * r;
      const double pd = pb * pb - 4.0 * pc;
      if (tangent || pd <= 0.0) {
        sol.points.push_back(line.at(-pb / 2.0));
      } else {
        for (double s : stable_roots(1.0, pb, pc, pd)) sol.points.push_back(line.at(s));
      }
      return sol;
    }
    if (tangent) {
      const double x = -sol.b / (2.0 * sol.a);
      sol.points.push_back({x, m * x + c});
    } else {
      for (double x : stable_roots(sol.a, sol.b, sol.c_coef, sol.discriminant)) sol.points.push_back({x, m * x + c});
    }
    // Order along the direction of travel.
    if (sol.points.size() == 2 && line.parameter_of(sol.points[0]) > line.parameter_of(sol.points[1]))
      std::swap(sol.points[0], sol.points[1]);
    return sol;
  }

  const Vec2 w = line.origin - footprint.center;
  sol.form = QuadraticForm::Parametric;
  sol.a = 1.0;
  sol.b = 2.0 * dot(w, line.direction);
  sol.c_coef = dot(w, w) - r * r;
  sol.discriminant = sol.b * sol.b - 4.0 * sol.a * sol.c_coef;
  const double eps = tangency_tolerance(sol.b);
  if (std::abs(sol.discriminant) <= eps) {
    sol.points.push_back(line.at(-sol.b / 2.0));
  } else if (sol.discriminant > 0.0) {
    for (double s : stable_roots(sol.a, sol.b, sol.c_coef, sol.discriminant)) sol.points.push_back(line.at(s));
  }
  return sol;
}

inline double euclidean_distance(Point2 p, Point2 q) {
  detail::require_finite(p, "distance operand");
  detail::require_finite(q, "distance operand");
  return std::hypot(p.x - q.x, p.y - q.y);
}

inline double time_to_point(double distance, double speed) {
  if (!(speed > 0.0)) throw std::invalid_argument("time_to_point: speed must be positive");
  if (!(distance >= 0.0)) throw std::invalid_argument("time_to_point: distance must be non-negative");
  return distance / speed;
}

struct PointOfIntersection {
  Point2 poi;
  double time_to_da = 0.0;
};

/// Earliest point where the forward velocity ray meets the footprint circle.
inline std::optional<PointOfIntersection> earliest_poi(Point2 track_position, Vec2 heading, double speed,
                                                        const DAFootprint& footprint) {
  detail::require_positive(speed, "earliest_poi: speed");
  const ThreatLine line = ThreatLine::from_heading(track_position, heading);
  const IntersectionSolution sol = circle_line_intersections(footprint, line);
  std::optional<PointOfIntersection> best;
  for (Point2 p : sol.points) {
    if (line.parameter_of(p) < 0.0) continue;
    const double t = time_to_point(euclidean_distance(p, track_position), speed);
    if (!best || t < best->time_to_da) best = PointOfIntersection{p, t};
  }
  return best;
}

/// Annular wedge of fire around a weapon position. Angles in radians,
/// measured counter-clockwise from +x.
struct WSSector {
  Point2 origin;
  double min_range = 1.0;
  double max_range = 2.0;
  double start_angle = 0.0;
  double sweep_angle = 2.0 * std::numbers::pi;
  double max_elevation = std::numbers::pi / 2.0;

  void validate() const {
    detail::require_finite(origin, "sector origin");
    if (!(min_range > 0.0 && min_range < max_range && std::isfinite(max_range)))
      throw std::invalid_argument("sector: require 0 < min_range < max_range");
    if (!(sweep_angle > 0.0 && sweep_angle <= 2.0 * std::numbers::pi + 1e-12))
      throw std::invalid_argument("sector: sweep angle must lie in (0, 2pi]");
    if (!std::isfinite(start_angle)) throw std::invalid_argument("sector: start angle must be finite");
    if (!(max_elevation >= 0.0 && max_elevation <= std::numbers::pi / 2.0))
      throw std::invalid_argument("sector: max elevation must lie in [0, pi/2]");
  }

  bool full_circle() const { return sweep_angle >= 2.0 * std::numbers::pi - 1e-12; }

  /// Closed membership test with a small absolute slack for boundary points.
  bool contains(Point2 p) const {
    const Vec2 v = p - origin;
    const double d = norm(v);
    const double slack = 1e-9 * (1.0 + max_range);
    if (d < min_range - slack || d > max_range + slack) return false;
    if (full_circle()) return true;
    if (d == 0.0) return false;
    const double rel = wrap_angle(std::atan2(v.y, v.x) - start_angle);
    const double ang_slack = slack / std::max(d, min_range);
    return rel <= sweep_angle + ang_slack || rel >= 2.0 * std::numbers::pi - ang_slack;
  }
};

struct SectorWindow {
  Point2 entry;
  Point2 exit;
  double entry_time = 0.0;
  double exit_time = 0.0;
};

/// First and last points of the forward ray inside the sector.
///
/// The ray's membership can only change at the range circles or the two
/// bounding rays of the wedge, so membership is tested at every such
/// breakpoint and at the midpoints between consecutive ones.
inline std::optional<SectorWindow> sector_entry_exit(Point2 track_position, Vec2 heading, double speed,
                                                     const WSSector& sector) {
  detail::require_positive(speed, "sector_entry_exit: speed");
  sector.validate();
  const ThreatLine line = ThreatLine::from_heading(track_position, heading);
  const Vec2 w = line.origin - sector.origin;
  const double wd = dot(w, line.direction);
  const double ww = dot(w, w);

  // Beyond the outer circle the ray is outside the sector for good.
  const double outer_disc = wd * wd - (ww - sector.max_range * sector.max_range);
  if (outer_disc < 0.0) return std::nullopt;
  const double outer_far = -wd + std::sqrt(outer_disc);
  if (outer_far < 0.0) return std::nullopt;

  std::vector<double> cuts{0.0, outer_far};
  auto add = [&](double s) {
    if (s >= 0.0 && s <= outer_far) cuts.push_back(s);
  };
  add(-wd - std::sqrt(outer_disc));
  const double inner_disc = wd * wd - (ww - sector.min_range * sector.min_range);
  if (inner_disc >= 0.0) {
    add(-wd - std::sqrt(inner_disc));
    add(-wd + std::sqrt(inner_disc));
  }
  if (!sector.full_circle()) {
    for (double ang : {sector.start_angle, sector.start_angle + sector.sweep_angle}) {
      const Vec2 u{std::cos(ang), std::sin(ang)};
      const double denom = cross(u, line.direction);
      if (denom != 0.0) add(-cross(u, w) / denom);
    }
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  std::optional<double> first;
  std::optional<double> last;
  auto mark = [&](double s) {
    if (!first || s < *first) first = s;
    if (!last || s > *last) last = s;
  };
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (sector.contains(line.at(cuts[i]))) mark(cuts[i]);
    if (i + 1 < cuts.size()) {
      const double mid = 0.5 * (cuts[i] + cuts[i + 1]);
      if (sector.contains(line.at(mid))) {
        mark(cuts[i]);
        mark(cuts[i + 1]);
      }
    }
  }
  if (!first) return std::nullopt;
  return SectorWindow{line.at(*first), line.at(*last), *first / speed, *last / speed};
}

/// Elevation needed to point at a target at the given horizontal range and altitude.
inline double required_elevation(double horizontal_distance, double target_altitude) {
  if (!(horizontal_distance > 0.0))
    throw std::domain_error("required_elevation: degenerate geometry (zero horizontal distance)");
  if (!(target_altitude >= 0.0)) throw std::invalid_argument("required_elevation: altitude must be non-negative");
  return std::atan2(target_altitude, horizontal_distance);
}

struct LeadSolution {
  Point2 launch_point;  // predicted target position at intercept
  double tof = 0.0;
};

/// Intercept for a projectile fired now from the sector origin at constant speed.
///
/// Solves |w + v t| = s t for the smallest positive t, where w is the target
/// offset from the weapon and v its velocity.
inline std::optional<LeadSolution> lead_and_launch(Point2 track_position, Vec2 track_velocity, const WSSector& ws,
                                                   double projectile_speed) {
  detail::require_positive(projectile_speed, "lead_and_launch: projectile speed");
  detail::require_finite(track_position, "track position");
  detail::require_finite(track_velocity, "track velocity");
  const Vec2 w = track_position - ws.origin;
  const double a = dot(track_velocity, track_velocity) - projectile_speed * projectile_speed;
  const double b = 2.0 * dot(w, track_velocity);
  const double c = dot(w, w);

  std::optional<double> tof;
  auto consider = [&](double t) {
    if (t > 0.0 && std::isfinite(t) && (!tof || t < *tof)) tof = t;
  };
  const double scale = std::max(dot(track_velocity, track_velocity), projectile_speed * projectile_speed);
  if (std::abs(a) <= 1e-12 * scale) {
    if (b != 0.0) consider(-c / b);
  } else {
    const double disc = b * b - 4.0 * a * c;
    if (disc < 0.0) return std::nullopt;
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b + std::copysign(sq, b));
    if (q != 0.0) {
      consider(q / a);
      consider(c / q);
    } else {
      consider(std::sqrt(std::max(0.0, -c / a)));
    }
  }
  if (!tof) return std::nullopt;
  const Point2 launch = track_position + track_velocity * *tof;
  if (!ws.contains(launch)) return std::nullopt;
  return LeadSolution{launch, *tof};
}

}  // namespace tewa
