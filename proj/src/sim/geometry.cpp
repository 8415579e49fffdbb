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
#include "patrol/sim/geometry.hpp"

#include <algorithm>
#include <limits>

namespace patrol::sim {

namespace {

constexpr double kEps = 1e-12;

int orientation(Vec2 a, Vec2 b, Vec2 c) {
  const double v = cross(b - a, c - a);
  if (v > kEps) return 1;
  if (v < -kEps) return -1;
  return 0;
}

bool on_segment(Vec2 a, Vec2 b, Vec2 p) {
  return std::min(a.x, b.x) - kEps <= p.x && p.x <= std::max(a.x, b.x) + kEps &&
         std::min(a.y, b.y) - kEps <= p.y && p.y <= std::max(a.y, b.y) + kEps;
}

}  // namespace

double normalize_degrees(double deg) {
  double r = std::fmod(deg, 360.0);
  if (r <= -180.0) r += 360.0;
  if (r > 180.0) r -= 360.0;
  return r;
}

std::optional<double> ray_hit(Vec2 origin, Vec2 dir, const Segment& s) {
  const Vec2 e = s.b - s.a;
  const double denom = cross(dir, e);
  const Vec2 w = s.a - origin;
  if (std::abs(denom) < kEps) {
    // Parallel; a collinear segment is hit at its nearest endpoint ahead.
    if (std::abs(cross(w, dir)) > 1e-9) return std::nullopt;
    const double ta = dot(s.a - origin, dir);
    const double tb = dot(s.b - origin, dir);
    if (ta < 0 && tb < 0) return std::nullopt;
    if (ta < 0 || tb < 0) return 0.0;
    return std::min(ta, tb);
  }
  const double t = cross(w, e) / denom;
  const double u = cross(w, dir) / denom;
  if (t < 0.0 || u < -kEps || u > 1.0 + kEps) return std::nullopt;
  return t;
}

std::optional<double> ray_hit(Vec2 origin, Vec2 dir, const Circle& c) {
  const Vec2 m = origin - c.center;
  const double b = dot(m, dir);
  const double cc = dot(m, m) - c.radius * c.radius;
  if (cc <= 0.0) return 0.0;  // origin inside
  if (b > 0.0) return std::nullopt;
  const double disc = b * b - cc;
  if (disc < 0.0) return std::nullopt;
  return -b - std::sqrt(disc);
}

std::optional<double> ray_hit(Vec2 origin, Vec2 dir, const Polygon& p) {
  std::optional<double> best;
  const auto& v = p.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (auto t = ray_hit(origin, dir, Segment{v[i], v[(i + 1) % v.size()]})) {
      if (!best || *t < *best) best = t;
    }
  }
  return best;
}

double distance(Vec2 p, const Segment& s) {
  const Vec2 e = s.b - s.a;
  const double len2 = dot(e, e);
  if (len2 <= 0.0) return norm(p - s.a);
  const double u = std::clamp(dot(p - s.a, e) / len2, 0.0, 1.0);
  return norm(p - (s.a + u * e));
}

double distance(Vec2 p, const Polygon& poly) {
  if (contains(poly, p)) return 0.0;
  double best = std::numeric_limits<double>::infinity();
  const auto& v = poly.vertices;
  for (std::size_t i = 0; i < v.size(); ++i) {
    best = std::min(best, distance(p, Segment{v[i], v[(i + 1) % v.size()]}));
  }
  return best;
}

bool segments_intersect(const Segment& s, const Segment& t) {
  const int o1 = orientation(s.a, s.b, t.a);
  const int o2 = orientation(s.a, s.b, t.b);
  const int o3 = orientation(t.a, t.b, s.a);
  const int o4 = orientation(t.a, t.b, s.b);
  if (o1 != o2 && o3 != o4) return true;
  if (o1 == 0 && on_segment(s.a, s.b, t.a)) return true;
  if (o2 == 0 && on_segment(s.a, s.b, t.b)) return true;
  if (o3 == 0 && on_segment(t.a, t.b, s.a)) return true;
  if (o4 == 0 && on_segment(t.a, t.b, s.b)) return true;
  return false;
}

bool contains(const Polygon& poly, Vec2 p) {
  // Convex: p is inside when it is on the same side of every edge.
  const auto& v = poly.vertices;
  if (v.size() < 3) return false;
  int side = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const int o = orientation(v[i], v[(i + 1) % v.size()], p);
    if (o == 0) continue;
    if (side == 0) side = o;
    else if (o != side) return false;
  }
  return true;
}

double signed_area(const Polygon& poly) {
  const auto& v = poly.vertices;
  double a = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) a += cross(v[i], v[(i + 1) % v.size()]);
  return 0.5 * a;
}

bool is_convex(const Polygon& poly) {
  const auto& v = poly.vertices;
  if (v.size() < 3) return false;
  int side = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const int o = orientation(v[i], v[(i + 1) % v.size()], v[(i + 2) % v.size()]);
    if (o == 0) continue;
    if (side == 0) side = o;
    else if (o != side) return false;
  }
  return true;
}

}  // namespace patrol::sim
