#include "isotree/isoradial.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "isotree/error.h"

namespace isotree {

namespace {

constexpr double kPi = std::numbers::pi;
const cd kI(0.0, 1.0);

Point sub(Point a, Point b) { return {a.first - b.first, a.second - b.second}; }
double cross(Point a, Point b) { return a.first * b.second - a.second * b.first; }
double dot(Point a, Point b) { return a.first * b.first + a.second * b.second; }
double norm(Point a) { return std::hypot(a.first, a.second); }

// Counterclockwise angle from x to y in (-pi, pi].
double turn(Point x, Point y) { return std::atan2(cross(x, y), dot(x, y)); }

Point circumcenter(Point a, Point b, Point c) {
  const double d = 2 * (a.first * (b.second - c.second) + b.first * (c.second - a.second) +
                        c.first * (a.second - b.second));
  const double a2 = dot(a, a), b2 = dot(b, b), c2 = dot(c, c);
  return {(a2 * (b.second - c.second) + b2 * (c.second - a.second) + c2 * (a.second - b.second)) / d,
          (a2 * (c.first - b.first) + b2 * (a.first - c.first) + c2 * (b.first - a.first)) / d};
}

double segment_distance(Point p, Point a, Point b) {
  const Point ab = sub(b, a), ap = sub(p, a);
  const double t = std::clamp(dot(ap, ab) / dot(ab, ab), 0.0, 1.0);
  return norm(sub(ap, {ab.first * t, ab.second * t}));
}

bool in_closed_polygon(Point p, const std::vector<Point>& poly) {
  const size_t n = poly.size();
  for (size_t i = 0; i < n; ++i)
    if (segment_distance(p, poly[i], poly[(i + 1) % n]) <= kEpsGeom) return true;
  bool inside = false;
  for (size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point a = poly[i], b = poly[j];
    if ((a.second > p.second) != (b.second > p.second) &&
        p.first < (b.first - a.first) * (p.second - a.second) / (b.second - a.second) + a.first)
      inside = !inside;
  }
  return inside;
}

}  // namespace

IsoradialData validate_isoradial(const PlanarMap& m, const std::vector<Point>& coords,
                                 const std::optional<std::vector<double>>& theta_exact) {
  if (static_cast<int>(coords.size()) != m.num_vertices())
    throw Error(ErrorCode::BadInput, "coordinates required for every vertex");
  IsoradialData iso;
  iso.coords = coords;
  iso.circumcenter.assign(m.num_faces(), {0.0, 0.0});
  for (int f = 0; f < m.num_faces(); ++f) {
    if (f == m.outer_face()) continue;
    std::vector<Point> poly;
    for (int d : m.face_darts(f)) poly.push_back(coords[m.tail(d)]);
    const size_t k = poly.size();
    size_t bi = 0, bj = 1, bk = 2;
    double best = -1;
    for (size_t i = 0; i < k; ++i)
      for (size_t j = i + 1; j < k; ++j)
        for (size_t l = j + 1; l < k; ++l) {
          const double area = std::abs(cross(sub(poly[j], poly[i]), sub(poly[l], poly[i])));
          if (area > best) best = area, bi = i, bj = j, bk = l;
        }
    if (k < 3 || best <= 0)
      throw Error(ErrorCode::NotIsoradial, "degenerate face " + std::to_string(f));
    const Point c = circumcenter(poly[bi], poly[bj], poly[bk]);
    iso.circumcenter[f] = c;
    for (const Point& p : poly) {
      const double err = std::abs(norm(sub(p, c)) - 1.0);
      iso.max_radius_error = std::max(iso.max_radius_error, err);
      if (err > kEpsGeom)
        throw Error(ErrorCode::NotIsoradial,
                    "face " + std::to_string(f) + " is not inscribed in a unit circle");
    }
    if (!in_closed_polygon(c, poly)) iso.regular = false;
  }

  iso.theta.assign(m.num_edges(), 0.0);
  for (int e = 0; e < m.num_edges(); ++e) {
    const int a = m.edge_dart(e);
    const Point u = coords[m.tail(a)], v = coords[m.head(a)];
    double sum = 0;
    int count = 0;
    if (m.left_face(a) != m.outer_face()) {
      sum += turn(sub(v, u), sub(iso.circumcenter[m.left_face(a)], u));
      ++count;
    }
    if (m.face(a) != m.outer_face()) {
      sum += turn(sub(iso.circumcenter[m.face(a)], u), sub(v, u));
      ++count;
    }
    iso.theta[e] = count ? sum / count : 0.0;
  }
  if (theta_exact) {
    if (static_cast<int>(theta_exact->size()) != m.num_edges())
      throw Error(ErrorCode::BadInput, "one exact angle per edge required");
    for (int e = 0; e < m.num_edges(); ++e)
      if (std::abs((*theta_exact)[e] - iso.theta[e]) > kEpsGeom)
        throw Error(ErrorCode::NotIsoradial,
                    "stored angle disagrees with the geometry on edge " + std::to_string(e));
    iso.theta = *theta_exact;
  }
  iso.boundary_darts = m.boundary_darts();
  const BoundaryAngles ba = boundary_angles(m, iso);
  iso.theta_boundary = ba.closure;
  iso.theta_boundary_geometric = ba.geometric;
  return iso;
}

BoundaryAngles boundary_angles(const PlanarMap& m, const IsoradialData& iso) {
  BoundaryAngles out;
  const auto bd = m.boundary_darts();
  const int n = static_cast<int>(bd.size());
  // Apex of the added half-rhombus across boundary edge d_j.
  std::vector<Point> apex(n);
  for (int j = 0; j < n; ++j) {
    const Point a = iso.coords[m.tail(bd[j])], b = iso.coords[m.head(bd[j])];
    const Point c = iso.circumcenter[m.face(bd[j])];
    apex[j] = {a.first + b.first - c.first, a.second + b.second - c.second};
  }
  for (int j = 0; j < n; ++j) {
    const int p = m.head(bd[j]);
    double sum = 0;
    for (int d : m.darts_at(p)) sum += iso.theta[m.edge(d)];
    const double closure = kPi - sum;
    const Point x = iso.coords[p];
    double ang = turn(sub(apex[(j + 1) % n], x), sub(apex[j], x));
    if (ang < 0) ang += 2 * kPi;
    out.closure.push_back(closure);
    out.geometric.push_back(ang / 2);
    out.max_mismatch = std::max(
        out.max_mismatch, std::abs(std::exp(2.0 * kI * closure) - std::exp(kI * ang)));
  }
  return out;
}

double critical_coupling(double theta) {
  if (!(theta > 0) || !(theta < kPi / 2))
    throw Error(ErrorCode::AngleOutOfRange, "rhombus half-angle " + std::to_string(theta) +
                                                " outside (0, pi/2)");
  return 0.5 * std::log((1 + std::sin(theta)) / std::cos(theta));
}

std::vector<double> critical_couplings(const IsoradialData& iso) {
  std::vector<double> J;
  for (double t : iso.theta) J.push_back(critical_coupling(t));
  return J;
}

EdgeWeights dimer_weights(const std::vector<double>& J, const QuadriTiling& gq) {
  EdgeWeights w;
  for (const EdgeOrigin& o : gq.g.origin) {
    switch (o.kind) {
      case OriginKind::External:
      case OriginKind::ExternalBoundary: w.push_back(1.0); break;
      case OriginKind::CrossesPrimal: w.push_back(1.0 / std::cosh(2 * J.at(o.source_edge))); break;
      case OriginKind::CrossesDual: w.push_back(std::tanh(2 * J.at(o.source_edge))); break;
      default: throw Error(ErrorCode::MissingProvenance, "G^Q edge without quadri-tiling origin");
    }
  }
  return w;
}

TauWeights tree_weights_tau(const IsoradialData& iso, const ExtendedPair& ext) {
  const PlanarMap& g = ext.graph.map;
  const PlanarMap& gd = ext.dual.map;
  TauWeights t;
  for (int c = 0; c < g.num_darts(); ++c) {
    const EdgeOrigin& o = ext.graph.origin[g.edge(c)];
    if (o.kind == OriginKind::PrimalEdge) {
      t.primal.push_back(std::tan(iso.theta[o.source_edge]));
      t.dual.push_back(1.0);
      continue;
    }
    const int j = o.boundary_index;
    const double tb = iso.theta_boundary[j];
    t.primal.push_back(g.tail(c) == ext.root_r ? 0.0 : 2 * std::sin(tb / 2));
    // Dual arc o_j -> o_{j+1} follows the clockwise boundary order.
    t.dual.push_back(gd.tail(c) == ext.split_vertex(j) ? std::exp(-kI * tb / 2.0)
                                                       : std::exp(kI * tb / 2.0));
  }
  return t;
}

DoubleWeights double_weights(const IsoradialData& iso, const ExtendedDouble& dd) {
  DoubleWeights w;
  for (const EdgeOrigin& o : dd.g.origin) {
    const double th = o.source_edge >= 0 ? iso.theta[o.source_edge] : 0.0;
    const double tb = o.boundary_index >= 0 ? iso.theta_boundary[o.boundary_index] : 0.0;
    switch (o.kind) {
      case OriginKind::HalfPrimal:
        w.rho_star.push_back(std::sin(th));
        w.tau2.push_back(std::sin(th));
        break;
      case OriginKind::HalfDual:
        w.rho_star.push_back(kI * std::cos(th));
        w.tau2.push_back(kI * std::cos(th));
        break;
      case OriginKind::HalfRootEdge:
        w.rho_star.push_back(std::exp(-kI * tb) - 1.0);
        w.tau2.push_back(2 * std::sin(tb / 2));
        break;
      case OriginKind::HalfBoundarySplit:
        w.rho_star.push_back(1.0);
        w.tau2.push_back(kI * std::exp(-kI * tb / 2.0));
        break;
      case OriginKind::HalfBoundaryOther:
        w.rho_star.push_back(1.0);
        w.tau2.push_back(kI * std::exp(kI * tb / 2.0));
        break;
      default: throw Error(ErrorCode::MissingProvenance, "double edge without half-edge origin");
    }
  }
  return w;
}

}  // namespace isotree
