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
#include "patrol/scenario/surface.hpp"

#include <cmath>
#include <stdexcept>

#include "patrol/fuzzy/inference.hpp"
#include "patrol/proto/kv.hpp"

namespace patrol::scenario {
std::vector<SurfacePoint> control_surface(const fuzzy::FuzzyConfig& cfg, double step) {
  if (!(step > 0.0) || !std::isfinite(step)) {
    throw std::invalid_argument("surface step must be positive");
  }
  const auto fs = fuzzy::output_grid(cfg.front.universe(), step);
  const auto rs = fuzzy::output_grid(cfg.right.universe(), step);
  std::vector<SurfacePoint> out;
  out.reserve(fs.size() * rs.size());
  for (const double f : fs) {
    for (const double r : rs) {
      out.push_back({f, r, fuzzy::avoidance_angle(f, r, cfg)});
    }
  }
  return out;
}

std::string surface_csv(const std::vector<SurfacePoint>& points) {
  std::string out = "u2,u3,alpha_deg\n";
  for (const auto& p : points) {
    out += proto::format_double(p.front);
    out += ',';
    out += proto::format_double(p.right);
    out += ',';
    out += proto::format_double(p.alpha);
    out += '\n';
  }
  return out;
}

}  // namespace patrol::scenario
