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
#include "patrol/sim/world_map.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace patrol::sim {

namespace {

std::vector<std::string_view> split_words(std::string_view line) {
  std::vector<std::string_view> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    const std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) words.push_back(line.substr(start, i - start));
  }
  return words;
}

class LineParser {
 public:
  LineParser(const std::string& source, int line, std::vector<std::string_view> words)
      : source_(source), line_(line), words_(std::move(words)) {}

  [[noreturn]] void fail(const std::string& what) const { throw MapError(source_, line_, what); }

  std::size_t arity() const { return words_.size() - 1; }

  void expect_arity(std::size_t n) const {
    if (arity() != n) {
      fail("'" + std::string(words_[0]) + "' expects " + std::to_string(n) + " values, got " +
           std::to_string(arity()));
    }
  }

  double number(std::size_t i) const {
    const std::string_view w = words_.at(i + 1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(w.data(), w.data() + w.size(), v);
    if (ec != std::errc() || ptr != w.data() + w.size()) {
      fail("expected a number, got '" + std::string(w) + "'");
    }
    if (!std::isfinite(v)) fail("non-finite value '" + std::string(w) + "'");
    return v;
  }

  std::string_view word(std::size_t i) const { return words_.at(i); }

 private:
  const std::string& source_;
  int line_;
  std::vector<std::string_view> words_;
};

}  // namespace

MapError::MapError(const std::string& source, int line, const std::string& what)
    : std::runtime_error(source + (line > 0 ? ":" + std::to_string(line) : std::string()) + ": " +
                         what),
      line_(line) {}

std::string WorldMap::name() const {
  auto it = metadata.find("name");
  return it == metadata.end() ? std::string("unnamed") : it->second;
}

void WorldMap::validate() const {
  const std::string src = name();
  auto finite = [](Vec2 v) { return std::isfinite(v.x) && std::isfinite(v.y); };
  for (std::size_t i = 0; i < walls.size(); ++i) {
    if (!finite(walls[i].a) || !finite(walls[i].b)) {
      throw MapError(src, 0, "wall " + std::to_string(i) + " is not finite");
    }
  }
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    const std::string id = "obstacle " + std::to_string(i);
    if (const auto* c = std::get_if<Circle>(&obstacles[i])) {
      if (!finite(c->center) || !(c->radius > 0.0) || !std::isfinite(c->radius)) {
        throw MapError(src, 0, id + " (circle) needs a finite centre and positive radius");
      }
      if (norm(start.position() - c->center) < c->radius) {
        throw MapError(src, 0, "start pose lies inside " + id);
      }
    } else {
      const auto& p = std::get<Polygon>(obstacles[i]);
      for (Vec2 v : p.vertices) {
        if (!finite(v)) throw MapError(src, 0, id + " (poly) is not finite");
      }
      if (p.vertices.size() < 3 || std::abs(signed_area(p)) <= 1e-9) {
        throw MapError(src, 0, id + " (poly) has zero area");
      }
      if (!is_convex(p)) throw MapError(src, 0, id + " (poly) is not convex");
      if (contains(p, start.position())) {
        throw MapError(src, 0, "start pose lies inside " + id);
      }
    }
  }
  for (std::size_t i = 0; i < humans.size(); ++i) {
    const auto& h = humans[i];
    if (!finite(h.position) || !std::isfinite(h.appear_time) ||
        !std::isfinite(h.active_duration) || h.active_duration < 0.0) {
      throw MapError(src, 0, "human " + std::to_string(i) + " has invalid timing or position");
    }
  }
  if (!finite(start.position()) || !std::isfinite(start.heading)) {
    throw MapError(src, 0, "start pose is not finite");
  }
  for (std::size_t i = 0; i < walls.size(); ++i) {
    if (distance(start.position(), walls[i]) < 1e-9) {
      throw MapError(src, 0, "start pose lies on wall " + std::to_string(i));
    }
  }
}

WorldMap load_map(std::string_view text, const std::string& source) {
  WorldMap map;
  bool have_start = false;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto words = split_words(line);
    if (words.empty()) continue;

    const std::string kind(words[0]);
    LineParser p(source, line_no, std::move(words));
    if (kind == "wall") {
      p.expect_arity(4);
      map.walls.push_back({{p.number(0), p.number(1)}, {p.number(2), p.number(3)}});
    } else if (kind == "circle") {
      p.expect_arity(3);
      if (!(p.number(2) > 0.0)) p.fail("circle radius must be positive");
      map.obstacles.emplace_back(Circle{{p.number(0), p.number(1)}, p.number(2)});
    } else if (kind == "poly") {
      if (p.arity() < 6 || p.arity() % 2 != 0) {
        p.fail("'poly' expects at least 3 vertex pairs");
      }
      Polygon poly;
      for (std::size_t i = 0; i < p.arity(); i += 2) {
        poly.vertices.push_back({p.number(i), p.number(i + 1)});
      }
      if (std::abs(signed_area(poly)) <= 1e-9) p.fail("polygon has zero area");
      if (!is_convex(poly)) p.fail("polygon is not convex");
      map.obstacles.emplace_back(std::move(poly));
    } else if (kind == "human") {
      p.expect_arity(4);
      if (p.number(3) < 0.0) p.fail("human duration must be non-negative");
      map.humans.push_back({p.number(0), {p.number(1), p.number(2)}, p.number(3)});
    } else if (kind == "start") {
      p.expect_arity(3);
      if (have_start) p.fail("duplicate 'start'");
      map.start = {p.number(0), p.number(1), p.number(2)};
      have_start = true;
    } else if (kind == "meta") {
      if (p.arity() < 2) p.fail("'meta' expects a key and a value");
      // The value runs to the end of the line.
      const std::string_view key = p.word(1);
      std::string_view rest = line.substr(static_cast<std::size_t>(key.data() - line.data()) + key.size());
      while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.front()))) {
        rest.remove_prefix(1);
      }
      while (!rest.empty() && std::isspace(static_cast<unsigned char>(rest.back()))) {
        rest.remove_suffix(1);
      }
      map.metadata[std::string(key)] = std::string(rest);
    } else {
      p.fail("unknown entity '" + kind + "'");
    }
  }
  map.validate();
  return map;
}

WorldMap load_map_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MapError(path.string(), 0, "cannot open map file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_map(buf.str(), path.string());
}

}  // namespace patrol::sim
