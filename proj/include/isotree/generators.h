#pragma once

#include <optional>
#include <string>
#include <vector>

#include "isotree/isoradial.h"
#include "isotree/planar_map.h"

namespace isotree {

// A primal graph with its isoradial coordinates. theta_over_pi, when present,
// holds the exact rhombus half-angles as multiples of pi.
struct GraphFile {
  PlanarMap map;
  std::vector<Point> coords;
  std::vector<std::string> tags;
  std::optional<std::vector<double>> theta_over_pi;
  std::string name;
};

// n points on the unit circle.
GraphFile make_cycle(int n);
// w x h vertices at spacing sqrt(2).
GraphFile make_grid(int w, int h);
// w x h vertices, horizontal spacing 2cos(a), vertical 2sin(a), a = p pi / q.
GraphFile make_rhombic(int w, int h, int p, int q);
// Hub and n rim vertices at radius 2cos(pi/n); n >= 5.
GraphFile make_wheel(int n);

// Dispatch by name: cycle n | grid w h | rhombic w h p q | wheel n.
GraphFile generate(const std::string& name, const std::vector<int>& params);

// Checks the standing assumptions and the isoradial embedding.
IsoradialData prepare(const GraphFile& g);

}  // namespace isotree
