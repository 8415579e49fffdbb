// Copyright 2026 The Patrolbot Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <cmath>
#include <optional>
#include <vector>

namespace patrol::sim {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  friend Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
  friend bool operator==(Vec2, Vec2) = default;
};

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }

/// Position in cm, heading in degrees counter-clockwise from +x.
struct Pose {
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;

  Vec2 position() const { return {x, y}; }
  friend bool operator==(const Pose&, const Pose&) = default;
};

struct Segment {
  Vec2 a;
  Vec2 b;

  double length() const { return norm(b - a); }
};

struct Circle {
  Vec2 center;
  double radius = 0.0;
};

/// Convex polygon, vertices in either winding order.
struct Polygon {
  std::vector<Vec2> vertices;
};

constexpr double kPi = 3.14159265358979323846;

inline double deg2rad(double deg) { return deg * kPi / 180.0; }
inline double rad2deg(double rad) { return rad * 180.0 / kPi; }

/// Unit vector for a heading in degrees.
inline Vec2 direction(double heading_deg) {
  const double r = deg2rad(heading_deg);
  return {std::cos(r), std::sin(r)};
}

/// Wraps an angle into (-180, 180].
double normalize_degrees(double deg);

/// Distance along a unit-direction ray to the first hit, if any.
std::optional<double> ray_hit(Vec2 origin, Vec2 dir, const Segment& s);
std::optional<double> ray_hit(Vec2 origin, Vec2 dir, const Circle& c);
std::optional<double> ray_hit(Vec2 origin, Vec2 dir, const Polygon& p);

double distance(Vec2 p, const Segment& s);
/// Zero when p lies inside the polygon.
double distance(Vec2 p, const Polygon& poly);

bool segments_intersect(const Segment& s, const Segment& t);
bool contains(const Polygon& poly, Vec2 p);
double signed_area(const Polygon& poly);
bool is_convex(const Polygon& poly);

}  // namespace patrol::sim
