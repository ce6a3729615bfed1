#include "isotree/generators.h"

#include <cmath>
#include <numbers>

#include "isotree/error.h"

namespace isotree {

namespace {

constexpr double kPi = std::numbers::pi;

GraphFile finish(std::string name, const std::vector<Point>& coords,
                 const std::vector<std::pair<int, int>>& edges, const std::vector<double>& theta_over_pi) {
  GraphFile g;
  g.name = std::move(name);
  g.coords = coords;
  g.map = embed_straight_line(coords, edges);
  validate_input_graph(g.map);
  // Edge ids of the map follow the input edge order.
  g.theta_over_pi = theta_over_pi;
  g.tags.assign(coords.size(), "primal");
  return g;
}

std::vector<std::pair<int, int>> lattice_edges(int w, int h) {
  std::vector<std::pair<int, int>> edges;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      const int v = y * w + x;
      if (x + 1 < w) edges.emplace_back(v, v + 1);
      if (y + 1 < h) edges.emplace_back(v, v + w);
    }
  return edges;
}

}  // namespace

GraphFile make_cycle(int n) {
  if (n < 3) throw Error(ErrorCode::BadParams, "cycle needs n >= 3 (smaller cycles are not simple)");
  std::vector<Point> coords;
  std::vector<std::pair<int, int>> edges;
  for (int k = 0; k < n; ++k) {
    coords.emplace_back(std::cos(2 * kPi * k / n), std::sin(2 * kPi * k / n));
    edges.emplace_back(k, (k + 1) % n);
  }
  return finish("cycle " + std::to_string(n), coords, edges,
                std::vector<double>(n, (n - 2) / (2.0 * n)));
}

GraphFile make_rhombic(int w, int h, int p, int q) {
  if (w < 2 || h < 2) throw Error(ErrorCode::BadParams, "rhombic grid needs w, h >= 2");
  if (p <= 0 || q <= 0 || 2 * p >= q) throw Error(ErrorCode::BadParams, "need 0 < p/q < 1/2");
  const double a = kPi * p / q;
  const double sx = 2 * std::cos(a), sy = 2 * std::sin(a);
  std::vector<Point> coords;
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) coords.emplace_back(sx * x, sy * y);
  const auto edges = lattice_edges(w, h);
  std::vector<double> th;
  for (const auto& [u, v] : edges) th.push_back(v == u + 1 ? double(p) / q : 0.5 - double(p) / q);
  return finish("rhombic " + std::to_string(w) + " " + std::to_string(h) + " " + std::to_string(p) +
                    " " + std::to_string(q),
                coords, edges, th);
}

GraphFile make_grid(int w, int h) {
  if (w < 2 || h < 2) throw Error(ErrorCode::BadParams, "grid needs w, h >= 2");
  GraphFile g = make_rhombic(w, h, 1, 4);
  g.name = "grid " + std::to_string(w) + " " + std::to_string(h);
  return g;
}

GraphFile make_wheel(int n) {
  if (n < 5) throw Error(ErrorCode::BadParams, "wheel needs n >= 5 for positive rim angles");
  const double radius = 2 * std::cos(kPi / n);
  std::vector<Point> coords{{0.0, 0.0}};
  std::vector<std::pair<int, int>> edges;
  std::vector<double> th;
  for (int k = 0; k < n; ++k) {
    coords.emplace_back(radius * std::cos(2 * kPi * k / n), radius * std::sin(2 * kPi * k / n));
    edges.emplace_back(0, k + 1);
    th.push_back(1.0 / n);
    edges.emplace_back(k + 1, (k + 1) % n + 1);
    th.push_back(0.5 - 2.0 / n);
  }
  return finish("wheel " + std::to_string(n), coords, edges, th);
}

GraphFile generate(const std::string& name, const std::vector<int>& params) {
  auto need = [&](size_t k) {
    if (params.size() != k)
      throw Error(ErrorCode::BadParams, name + " takes " + std::to_string(k) + " parameters");
  };
  if (name == "cycle") return need(1), make_cycle(params[0]);
  if (name == "grid") return need(2), make_grid(params[0], params[1]);
  if (name == "rhombic") return need(4), make_rhombic(params[0], params[1], params[2], params[3]);
  if (name == "wheel") return need(1), make_wheel(params[0]);
  throw Error(ErrorCode::UnknownGenerator, "unknown generator '" + name + "'");
}

IsoradialData prepare(const GraphFile& g) {
  validate_input_graph(g.map);
  std::optional<std::vector<double>> exact;
  if (g.theta_over_pi) {
    exact.emplace();
    for (double t : *g.theta_over_pi) exact->push_back(t * kPi);
  }
  return validate_isoradial(g.map, g.coords, exact);
}

}  // namespace isotree
