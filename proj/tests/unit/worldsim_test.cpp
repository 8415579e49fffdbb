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
#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "patrol/sim/geometry.hpp"
#include "patrol/sim/kinematics.hpp"
#include "patrol/sim/sensors.hpp"
#include "patrol/sim/world_map.hpp"

namespace patrol::sim {
namespace {

const std::string kData = PATROL_DATA_DIR;

RobotState robot_at(double x, double y, double heading) {
  RobotState r;
  r.pose = {x, y, heading};
  return r;
}

WorldMap open_plane() { return load_map("start 0 0 0\n"); }

// Analytic fan-beam reading against the infinite line y = wall_y: the
// minimum over the cone's rays of the distance from the mount point.
double fan_to_horizontal_wall(Vec2 origin, double axis_deg, double half_width, int rays,
                              double wall_y) {
  double best = 1e300;
  for (int i = 0; i < rays; ++i) {
    const double a = deg2rad(axis_deg - half_width + 2.0 * half_width * i / (rays - 1));
    const double s = std::sin(a);
    if ((wall_y - origin.y) * s <= 0.0) continue;
    best = std::min(best, (wall_y - origin.y) / s);
  }
  return best;
}

// ---- map loading ----------------------------------------------------------

TEST(MapLoad, DefaultCorridorGeometry) {
  const WorldMap m = load_map_file(kData + "/maps/corridor_g2.map");
  EXPECT_EQ(m.name(), "corridor_g2");
  EXPECT_EQ(m.metadata.at("corridor_width"), "220");

  // Inner block: the walls touching the 1500 x 1000 rectangle.
  double inner = 0.0;
  double min_x = 1e9, max_x = -1e9, min_y = 1e9, max_y = -1e9;
  for (const auto& w : m.walls) {
    const bool outer = w.a.x < 0 || w.a.y < 0 || w.b.x < 0 || w.b.y < 0 || w.a.x > 1500 ||
                       w.b.x > 1500 || w.a.y > 1000 || w.b.y > 1000;
    if (outer) continue;
    inner += w.length();
    min_x = std::min({min_x, w.a.x, w.b.x});
    max_x = std::max({max_x, w.a.x, w.b.x});
    min_y = std::min({min_y, w.a.y, w.b.y});
    max_y = std::max({max_y, w.a.y, w.b.y});
  }
  EXPECT_DOUBLE_EQ(max_x - min_x, 1500.0);
  EXPECT_DOUBLE_EQ(max_y - min_y, 1000.0);
  const double perimeter = 2.0 * ((max_x - min_x) + (max_y - min_y));
  EXPECT_DOUBLE_EQ(perimeter, 5000.0);
  // Segment lengths plus the one opening make up the perimeter.
  EXPECT_DOUBLE_EQ(perimeter - inner, 60.0);

  // Corridor width: outer boundary 220 cm from the block on every side.
  double outer_min_x = 1e9, outer_max_x = -1e9;
  for (const auto& w : m.walls) {
    outer_min_x = std::min({outer_min_x, w.a.x, w.b.x});
    outer_max_x = std::max({outer_max_x, w.a.x, w.b.x});
  }
  EXPECT_DOUBLE_EQ(min_x - outer_min_x, 220.0);
  EXPECT_DOUBLE_EQ(outer_max_x - max_x, 220.0);

  // The opening lies on the south face just before S.
  EXPECT_GT(m.start.x, 460.0);
  EXPECT_LE(m.start.x, 520.0);
}

TEST(MapLoad, ShippedMapsLoad) {
  for (const char* name : {"corridor_g2", "corridor_obstacle", "corridor_intruder",
                           "corridor_thin_edge", "corridor_narrow_right"}) {
    const WorldMap m = load_map_file(kData + "/maps/" + name + ".map");
    EXPECT_EQ(m.name(), name);
  }
  EXPECT_EQ(load_map_file(kData + "/maps/corridor_obstacle.map").obstacles.size(), 1u);
  EXPECT_EQ(load_map_file(kData + "/maps/corridor_intruder.map").humans.size(), 1u);
}

TEST(MapLoad, EmptyWallsIsOpenPlane) {
  const WorldMap m = load_map("# nothing but a start\nstart 1 2 3\n");
  EXPECT_TRUE(m.walls.empty());
  EXPECT_EQ(m.start, (Pose{1, 2, 3}));
}

TEST(MapLoad, EntitiesAndComments) {
  const WorldMap m = load_map(
      "wall 0 0 10 0  # trailing comment\n"
      "circle 5 5 1\n"
      "poly 20 20 30 20 30 30\n"
      "human 12.5 40 40 3\n"
      "meta name demo\n"
      "start -5 -5 90\n");
  ASSERT_EQ(m.walls.size(), 1u);
  ASSERT_EQ(m.obstacles.size(), 2u);
  ASSERT_EQ(m.humans.size(), 1u);
  EXPECT_DOUBLE_EQ(m.humans[0].appear_time, 12.5);
  EXPECT_TRUE(m.humans[0].active_at(15.4));
  EXPECT_FALSE(m.humans[0].active_at(15.5));
  EXPECT_EQ(m.name(), "demo");
}

TEST(MapLoad, SyntaxErrorCarriesLine) {
  try {
    load_map("wall 0 0 1 1\nwall 0 0 1\n", "bad.map");
    FAIL() << "expected MapError";
  } catch (const MapError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_NE(std::string(e.what()).find("bad.map"), std::string::npos);
  }
  EXPECT_THROW(load_map("teleporter 1 2\n"), MapError);
  EXPECT_THROW(load_map("wall 0 0 1 x\n"), MapError);
}

TEST(MapLoad, ZeroAreaPolygonRejected) {
  try {
    load_map("poly 0 0 10 0 20 0\nstart 50 50 0\n");
    FAIL() << "expected MapError";
  } catch (const MapError& e) {
    EXPECT_NE(std::string(e.what()).find("zero area"), std::string::npos);
  }
}

TEST(MapLoad, StartInsideObstacleRejected) {
  EXPECT_THROW(load_map("circle 0 0 10\nstart 1 1 0\n"), MapError);
  EXPECT_THROW(load_map("wall -10 0 10 0\nstart 0 0 0\n"), MapError);
}

TEST(MapLoad, MissingFile) { EXPECT_THROW(load_map_file("/nonexistent/x.map"), MapError); }

// ---- sonar -----------------------------------------------------------------

TEST(Sonar, OpenPlaneIsNoEcho) {
  const WorldMap m = open_plane();
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(sonar_read(m, robot_at(0, 0, 0), i, 0.0), 255.0);
}

TEST(Sonar, PerpendicularWallAtThirty) {
  // Left mount at +90: the wall runs along y = 18 + 30 above the centre.
  const WorldMap m = load_map("wall -500 48 500 48\nstart 0 0 0\n");
  const RobotState r = robot_at(0, 0, 0);
  const double reading = sonar_read(m, r, kSonarLeft, 0.0);
  EXPECT_NEAR(reading, 30.0, 0.5);
  const Vec2 origin = mount_point(r, 90.0);
  EXPECT_NEAR(reading, fan_to_horizontal_wall(origin, 90.0, 20.0, 9, 48.0), 1e-9);
}

TEST(Sonar, AgreesWithAnalyticFanOracle) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> head(45.0, 135.0);
  std::uniform_real_distribution<double> gap(10.0, 200.0);
  for (int i = 0; i < 500; ++i) {
    const double wall_y = 18.0 + gap(rng);
    const WorldMap m = load_map("wall -5000 " + std::to_string(wall_y) + " 5000 " +
                                std::to_string(wall_y) + "\nstart 0 0 0\n");
    const RobotState r = robot_at(0, 0, head(rng) - 90.0);
    const Vec2 origin = mount_point(r, 90.0);
    const double oracle = fan_to_horizontal_wall(origin, r.pose.heading + 90.0, 20.0, 9,
                                                 std::stod(std::to_string(wall_y)));
    const double expect = oracle > 255.0 ? 255.0 : std::max(4.0, oracle);
    EXPECT_NEAR(sonar_read(m, r, kSonarLeft, 0.0), expect, 1e-6) << "case " << i;
  }
}

TEST(Sonar, CloseWallClampsToMinimum) {
  const WorldMap m = load_map("wall -500 20 500 20\nstart 0 0 0\n");
  EXPECT_EQ(sonar_read(m, robot_at(0, 0, 0), kSonarLeft, 0.0), 4.0);
}

TEST(Sonar, HumanReflectsOnlyWhileActive) {
  const WorldMap m = load_map("human 10 100 0 5\nstart 0 0 0\n");
  const RobotState r = robot_at(0, 0, 0);
  EXPECT_EQ(sonar_read(m, r, kSonarFront, 0.0), 255.0);
  // Front mount at x = 18, human body (radius 25) starts at x = 75.
  EXPECT_NEAR(sonar_read(m, r, kSonarFront, 12.0), 57.0, 0.5);
  EXPECT_EQ(sonar_read(m, r, kSonarFront, 15.0), 255.0);
}

TEST(Sonar, BadMountThrows) {
  EXPECT_THROW(sonar_read(open_plane(), robot_at(0, 0, 0), 3, 0.0), std::out_of_range);
}

TEST(Sonar, ClampInvariantOnRandomPoses) {
  const WorldMap m = load_map_file(kData + "/maps/corridor_obstacle.map");
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> x(-200.0, 1700.0), y(-200.0, 1200.0), h(-180.0, 180.0);
  SensorModel noisy;
  noisy.jitter_cm = 2.0;
  noisy.seed = 3;
  for (int i = 0; i < 2000; ++i) {
    const RobotState r = robot_at(x(rng), y(rng), h(rng));
    for (std::size_t k = 0; k < 3; ++k) {
      for (const auto& model : {SensorModel{}, noisy}) {
        const double v = sonar_read(m, r, k, 0.5 * i, model);
        EXPECT_GE(v, 4.0);
        EXPECT_LE(v, 255.0);
      }
    }
  }
}

TEST(Sonar, JitterIsSeededAndBounded) {
  const WorldMap m = load_map("wall -500 48 500 48\nstart 0 0 0\n");
  SensorModel a;
  a.jitter_cm = 2.0;
  a.seed = 99;
  const RobotState r = robot_at(0, 0, 0);
  for (int i = 0; i < 100; ++i) {
    const double v = sonar_read(m, r, kSonarLeft, i * 0.1, a);
    EXPECT_EQ(v, sonar_read(m, r, kSonarLeft, i * 0.1, a));
    EXPECT_NEAR(v, 30.0, 2.0 + 1e-9);
  }
}

// ---- HMS -------------------------------------------------------------------

TEST(Hms, NoActiveHumans) {
  const WorldMap m = load_map("human 100 50 80 10\nstart 0 0 0\n");
  EXPECT_FALSE(hms_read(m, robot_at(0, 0, 0), kHmsLeft, 0.0));
  EXPECT_FALSE(hms_read(m, robot_at(0, 0, 0), kHmsLeft, 200.0));
}

TEST(Hms, HumanInFieldAtHundred) {
  // Left HMS points at +30 degrees; place the person 100 cm down that axis.
  const RobotState r = robot_at(0, 0, 0);
  const Vec2 origin = mount_point(r, 30.0);
  const Vec2 p = origin + 100.0 * direction(30.0);
  const WorldMap m = load_map("human 0 " + std::to_string(p.x) + " " + std::to_string(p.y) +
                              " 100\nstart 0 0 0\n");
  EXPECT_TRUE(hms_read(m, r, kHmsLeft, 1.0));
}

TEST(Hms, OutOfRangeOrField) {
  const RobotState r = robot_at(0, 0, 0);
  const WorldMap far = load_map("human 0 200 0 100\nstart 0 0 0\n");
  EXPECT_FALSE(hms_read(far, r, kHmsLeft, 1.0));
  const WorldMap behind = load_map("human 0 -100 0 100\nstart 0 0 0\n");
  EXPECT_FALSE(hms_read(behind, r, kHmsLeft, 1.0));
  EXPECT_FALSE(hms_read(behind, r, kHmsRight, 1.0));
}

TEST(Hms, WallOccludes) {
  const RobotState r = robot_at(0, 0, 0);
  const Vec2 origin = mount_point(r, 30.0);
  const Vec2 p = origin + 100.0 * direction(30.0);
  const Vec2 mid = origin + 50.0 * direction(30.0);
  const Vec2 n = direction(120.0);
  const Vec2 a = mid + 40.0 * n;
  const Vec2 b = mid - 40.0 * n;
  // Occlusion oracle: the sight line crosses the wall.
  ASSERT_TRUE(segments_intersect({origin, p}, {a, b}));
  const WorldMap m = load_map("wall " + std::to_string(a.x) + " " + std::to_string(a.y) + " " +
                              std::to_string(b.x) + " " + std::to_string(b.y) + "\nhuman 0 " +
                              std::to_string(p.x) + " " + std::to_string(p.y) +
                              " 100\nstart 0 0 0\n");
  EXPECT_FALSE(hms_read(m, r, kHmsLeft, 1.0));
}

// ---- sense -----------------------------------------------------------------

TEST(Sense, OpenPlane) {
  const SensorFrame f = sense(open_plane(), robot_at(0, 0, 0), 0.0);
  EXPECT_EQ(f.sonar.left, 255.0);
  EXPECT_EQ(f.sonar.front, 255.0);
  EXPECT_EQ(f.sonar.right, 255.0);
  EXPECT_FALSE(f.hms.any());
}

TEST(Sense, CorridorStartSeesBlockWall) {
  const WorldMap m = load_map_file(kData + "/maps/corridor_g2.map");
  RobotState r;
  r.pose = m.start;
  // S sits at the end of the opening, so part of the cone sees the wall
  // corner rather than the face.
  EXPECT_NEAR(sense(m, r, 0.0).sonar.left, 30.0, 2.0);
  r.pose = {800.0, -48.0, 0.0};
  EXPECT_NEAR(sense(m, r, 0.0).sonar.left, 30.0, 0.5);
  EXPECT_NEAR(wall_clearance(m, r), 30.0, 1e-9);
}

TEST(Sense, HumansGatedByTime) {
  const WorldMap m = load_map_file(kData + "/maps/corridor_intruder.map");
  RobotState r;
  r.pose = m.start;
  const SensorFrame f = sense(m, r, m.humans[0].appear_time - 1.0);
  EXPECT_FALSE(f.hms.any());
}

// ---- kinematics ------------------------------------------------------------

TEST(Step, ForwardInOpenPlane) {
  const StepResult s = step(open_plane(), robot_at(0, 0, 0), MotionCommand::forward(100));
  EXPECT_NEAR(s.state.pose.x, 100.0, 1e-9);
  EXPECT_NEAR(s.state.pose.y, 0.0, 1e-9);
  EXPECT_DOUBLE_EQ(s.elapsed, 10.0);
  EXPECT_FALSE(s.collision);
  EXPECT_DOUBLE_EQ(s.state.odometer, 100.0);
  EXPECT_DOUBLE_EQ(s.state.battery_remaining, 5390.0);
}

TEST(Step, TurnTakesThreeSecondsPerNinety) {
  const StepResult s = step(open_plane(), robot_at(0, 0, 0), MotionCommand::turn(90));
  // Positive turns are clockwise in the counter-clockwise world frame.
  EXPECT_DOUBLE_EQ(s.state.pose.heading, -90.0);
  EXPECT_DOUBLE_EQ(s.elapsed, 3.0);
  EXPECT_DOUBLE_EQ(s.state.odometer, 0.0);
  const StepResult back = step(open_plane(), s.state, MotionCommand::turn(-90));
  EXPECT_DOUBLE_EQ(back.state.pose.heading, 0.0);
}

TEST(Step, ForwardIntoWallStopsAtContact) {
  // Disc of radius 18 meets a wall 50 cm ahead once the centre has moved 32.
  const WorldMap m = load_map("wall 50 -100 50 100\nstart 0 0 0\n");
  const StepResult s = step(m, robot_at(0, 0, 0), MotionCommand::forward(100));
  EXPECT_TRUE(s.collision);
  EXPECT_NEAR(s.state.pose.x, 32.0, 1.0);
  EXPECT_FALSE(overlaps(m, s.state.pose.position(), 18.0));
  EXPECT_DOUBLE_EQ(s.state.odometer, s.state.pose.x);
  EXPECT_NEAR(s.elapsed, s.state.pose.x / 10.0, 1e-9);
}

TEST(Step, StopCostsNothing) {
  const StepResult s = step(open_plane(), robot_at(3, 4, 5), MotionCommand::stop());
  EXPECT_EQ(s.state.pose, (Pose{3, 4, 5}));
  EXPECT_EQ(s.elapsed, 0.0);
}

TEST(Step, BatteryRunsOutMidCommand) {
  RobotState r = robot_at(0, 0, 0);
  r.battery_remaining = 2.5;
  const StepResult s = step(open_plane(), r, MotionCommand::forward(100));
  EXPECT_TRUE(s.battery_out);
  EXPECT_FALSE(s.collision);
  EXPECT_DOUBLE_EQ(s.state.battery_remaining, 0.0);
  EXPECT_NEAR(s.state.pose.x, 25.0, 1e-9);
  EXPECT_DOUBLE_EQ(s.elapsed, 2.5);
}

TEST(Step, CommandValidation) {
  EXPECT_THROW(MotionCommand::forward(-1), std::invalid_argument);
  EXPECT_THROW(MotionCommand::turn(181), std::invalid_argument);
  EXPECT_NO_THROW(MotionCommand::turn(-180));
  EXPECT_EQ(to_string(MotionCommand::turn(15)), "TURN(15)");
}

TEST(RobotStateCheck, RejectsNonPhysical) {
  RobotState r;
  r.speed_forward = 0.0;
  EXPECT_THROW(r.validate(), std::invalid_argument);
  r = RobotState{};
  r.battery_remaining = -1.0;
  EXPECT_THROW(r.validate(), std::invalid_argument);
  EXPECT_NO_THROW(RobotState{}.validate());
}

// ---- properties over random command sequences -------------------------------

std::vector<MotionCommand> random_commands(std::uint64_t seed, int n) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_real_distribution<double> angle(-180.0, 180.0), dist(0.0, 150.0);
  std::vector<MotionCommand> out;
  for (int i = 0; i < n; ++i) {
    switch (kind(rng)) {
      case 0:
        out.push_back(MotionCommand::turn(angle(rng)));
        break;
      case 1:
        out.push_back(MotionCommand::forward(dist(rng)));
        break;
      default:
        out.push_back(MotionCommand::forward(std::floor(dist(rng))));
    }
  }
  return out;
}

TEST(StepProperty, DeterministicNoTunnelingEnergyOdometer) {
  const WorldMap m = load_map_file(kData + "/maps/corridor_obstacle.map");
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto cmds = random_commands(seed, 300);
    RobotState a;
    a.pose = m.start;
    RobotState b = a;
    const double battery0 = a.battery_remaining;
    double elapsed = 0.0;
    double travelled = 0.0;
    for (const auto& c : cmds) {
      const StepResult ra = step(m, a, c);
      const StepResult rb = step(m, b, c);
      ASSERT_EQ(ra.state.pose, rb.state.pose);
      ASSERT_EQ(ra.state.battery_remaining, rb.state.battery_remaining);
      ASSERT_FALSE(overlaps(m, ra.state.pose.position(), ra.state.body_radius))
          << "seed " << seed << " after " << to_string(c);
      travelled += norm(ra.state.pose.position() - a.pose.position());
      elapsed += ra.elapsed;
      a = ra.state;
      b = rb.state;
    }
    EXPECT_NEAR(battery0 - a.battery_remaining, elapsed, 1e-9);
    EXPECT_NEAR(a.odometer, travelled, 1e-6);
  }
}

TEST(Geometry, NormalizeDegrees) {
  EXPECT_DOUBLE_EQ(normalize_degrees(180.0), 180.0);
  EXPECT_DOUBLE_EQ(normalize_degrees(-180.0), 180.0);
  EXPECT_DOUBLE_EQ(normalize_degrees(270.0), -90.0);
  EXPECT_DOUBLE_EQ(normalize_degrees(-450.0), -90.0);
}

TEST(Geometry, RayHits) {
  const Segment s{{10, -5}, {10, 5}};
  EXPECT_NEAR(*ray_hit({0, 0}, {1, 0}, s), 10.0, 1e-12);
  EXPECT_FALSE(ray_hit({0, 0}, {-1, 0}, s).has_value());
  const Circle c{{20, 0}, 5};
  EXPECT_NEAR(*ray_hit({0, 0}, {1, 0}, c), 15.0, 1e-12);
  const Polygon p{{{30, -1}, {32, -1}, {32, 1}, {30, 1}}};
  EXPECT_NEAR(*ray_hit({0, 0}, {1, 0}, p), 30.0, 1e-12);
  EXPECT_TRUE(is_convex(p));
  EXPECT_NEAR(std::abs(signed_area(p)), 4.0, 1e-12);
}

}  // namespace
}  // namespace patrol::sim
