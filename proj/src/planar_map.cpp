#include "isotree/planar_map.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <set>

#include "isotree/error.h"

namespace isotree {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonPlanar: return "NonPlanar";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::DegreeTooLow: return "DegreeTooLow";
    case ErrorCode::NotSimple: return "NotSimple";
    case ErrorCode::NonSimpleBoundary: return "NonSimpleBoundary";
    case ErrorCode::BadMap: return "BadMap";
    case ErrorCode::NotIsoradial: return "NotIsoradial";
    case ErrorCode::AngleOutOfRange: return "AngleOutOfRange";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::NotATree: return "NotATree";
    case ErrorCode::MissingProvenance: return "MissingProvenance";
    case ErrorCode::OuterFace: return "OuterFace";
    case ErrorCode::WrongStage: return "WrongStage";
    case ErrorCode::NotAnOST: return "NotAnOST";
    case ErrorCode::NotInClass: return "NotInClass";
    case ErrorCode::NotAMatching: return "NotAMatching";
    case ErrorCode::NotACycle: return "NotACycle";
    case ErrorCode::UnknownGenerator: return "UnknownGenerator";
    case ErrorCode::BadParams: return "BadParams";
    case ErrorCode::UnknownTarget: return "UnknownTarget";
    case ErrorCode::BadInput: return "BadInput";
  }
  return "Unknown";
}

PlanarMap::PlanarMap(int num_vertices, std::vector<int> alpha, std::vector<int> sigma,
                     std::vector<int> tail, int outer_face)
    : num_vertices_(num_vertices),
      alpha_(std::move(alpha)),
      sigma_(std::move(sigma)),
      tail_(std::move(tail)) {
  const int n = static_cast<int>(alpha_.size());
  if (num_vertices_ < 0 || static_cast<int>(sigma_.size()) != n ||
      static_cast<int>(tail_.size()) != n || n % 2 != 0)
    throw Error(ErrorCode::BadMap, "inconsistent dart arrays");
  for (int d = 0; d < n; ++d) {
    const int a = alpha_[d];
    if (a < 0 || a >= n || a == d || alpha_[a] != d)
      throw Error(ErrorCode::BadMap, "alpha is not a fixed-point-free involution");
    if (tail_[d] < 0 || tail_[d] >= num_vertices_)
      throw Error(ErrorCode::BadMap, "dart vertex out of range");
  }
  sigma_inv_.assign(n, -1);
  for (int d = 0; d < n; ++d) {
    const int s = sigma_[d];
    if (s < 0 || s >= n || sigma_inv_[s] != -1)
      throw Error(ErrorCode::BadMap, "sigma is not a permutation");
    sigma_inv_[s] = d;
  }
  vertex_dart_.assign(num_vertices_, -1);
  std::vector<char> seen(n, 0);
  for (int d = 0; d < n; ++d) {
    if (seen[d]) continue;
    const int v = tail_[d];
    if (vertex_dart_[v] != -1)
      throw Error(ErrorCode::BadMap, "vertex with two sigma orbits");
    vertex_dart_[v] = d;
    int x = d;
    do {
      if (tail_[x] != v) throw Error(ErrorCode::BadMap, "sigma orbit crosses vertices");
      seen[x] = 1;
      x = sigma_[x];
    } while (x != d);
  }

  edge_of_.assign(n, -1);
  for (int d = 0; d < n; ++d) {
    if (edge_of_[d] != -1) continue;
    const int e = static_cast<int>(edge_darts_.size());
    edge_darts_.push_back(d);
    edge_of_[d] = e;
    edge_of_[alpha_[d]] = e;
  }

  face_of_.assign(n, -1);
  for (int d = 0; d < n; ++d) {
    if (face_of_[d] != -1) continue;
    const int f = static_cast<int>(faces_.size());
    faces_.emplace_back();
    int x = d;
    do {
      face_of_[x] = f;
      faces_[f].push_back(x);
      x = phi(x);
    } while (x != d);
  }
  if (n == 0) faces_.emplace_back();
  if (outer_face < 0 || outer_face >= num_faces())
    throw Error(ErrorCode::BadMap, "outer face id out of range");
  outer_face_ = outer_face;
}

int PlanarMap::degree(int v) const {
  const int d0 = vertex_dart_[v];
  if (d0 < 0) return 0;
  int k = 0, d = d0;
  do {
    ++k;
    d = sigma_[d];
  } while (d != d0);
  return k;
}

std::vector<int> PlanarMap::darts_at(int v) const {
  std::vector<int> out;
  const int d0 = vertex_dart_[v];
  if (d0 < 0) return out;
  int d = d0;
  do {
    out.push_back(d);
    d = sigma_[d];
  } while (d != d0);
  return out;
}

bool PlanarMap::is_boundary_edge(int e) const {
  const int d = edge_darts_[e];
  return face_of_[d] == outer_face_ || face_of_[alpha_[d]] == outer_face_;
}

bool PlanarMap::is_boundary_vertex(int v) const {
  for (int d : darts_at(v))
    if (face_of_[d] == outer_face_) return true;
  return false;
}

std::vector<int> PlanarMap::boundary_darts() const {
  std::vector<int> out;
  int start = -1;
  for (int d = 0; d < num_darts(); ++d)
    if (left_face(d) == outer_face_) {
      start = d;
      break;
    }
  if (start < 0) return out;
  int d = start;
  do {
    out.push_back(d);
    d = left_next(d);
  } while (d != start);
  return out;
}

int PlanarMap::num_components() const {
  std::vector<int> comp(num_vertices_, -1);
  int c = 0;
  for (int s = 0; s < num_vertices_; ++s) {
    if (comp[s] != -1) continue;
    std::vector<int> stack{s};
    comp[s] = c;
    while (!stack.empty()) {
      const int v = stack.back();
      stack.pop_back();
      for (int d : darts_at(v)) {
        const int w = head(d);
        if (comp[w] == -1) {
          comp[w] = c;
          stack.push_back(w);
        }
      }
    }
    ++c;
  }
  return c;
}

int PlanarMap::euler_characteristic() const {
  return num_vertices_ - num_edges() + num_faces();
}

void PlanarMap::set_vertex_labels(std::vector<std::string> labels) {
  if (!labels.empty() && static_cast<int>(labels.size()) != num_vertices_)
    throw Error(ErrorCode::BadMap, "vertex label count mismatch");
  vertex_labels_ = std::move(labels);
}

void PlanarMap::set_edge_labels(std::vector<std::string> labels) {
  if (!labels.empty() && static_cast<int>(labels.size()) != num_edges())
    throw Error(ErrorCode::BadMap, "edge label count mismatch");
  edge_labels_ = std::move(labels);
}

void validate_input_graph(const PlanarMap& m) {
  if (m.num_vertices() == 0) throw Error(ErrorCode::Disconnected, "empty graph");
  if (m.num_components() != 1) throw Error(ErrorCode::Disconnected, "graph is not connected");
  if (m.euler_characteristic() != 2)
    throw Error(ErrorCode::NonPlanar, "V - E + F = " + std::to_string(m.euler_characteristic()));
  for (int v = 0; v < m.num_vertices(); ++v) {
    std::set<int> nbrs;
    for (int d : m.darts_at(v)) {
      if (m.head(d) == v) throw Error(ErrorCode::NotSimple, "loop at vertex " + std::to_string(v));
      if (!nbrs.insert(m.head(d)).second)
        throw Error(ErrorCode::NotSimple, "parallel edges at vertex " + std::to_string(v));
    }
    if (m.degree(v) < 2)
      throw Error(ErrorCode::DegreeTooLow, "vertex " + std::to_string(v) + " has degree " +
                                               std::to_string(m.degree(v)));
  }
  const auto bd = m.boundary_darts();
  std::set<int> tails;
  for (int d : bd) {
    if (m.face(d) == m.outer_face())
      throw Error(ErrorCode::NonSimpleBoundary, "edge with the outer face on both sides");
    tails.insert(m.tail(d));
  }
  if (tails.size() != bd.size())
    throw Error(ErrorCode::NonSimpleBoundary, "outer boundary revisits a vertex");
}

PlanarMap build_map(int num_vertices, const std::vector<std::pair<int, int>>& edges,
                    const std::vector<std::vector<int>>& rotations, int outer_face) {
  const int n = 2 * static_cast<int>(edges.size());
  if (static_cast<int>(rotations.size()) != num_vertices)
    throw Error(ErrorCode::BadMap, "one rotation per vertex required");
  std::map<std::pair<int, int>, int> dart_of;
  std::vector<int> alpha(n), tail(n), sigma(n, -1);
  for (int k = 0; k < static_cast<int>(edges.size()); ++k) {
    const auto [u, v] = edges[k];
    if (u < 0 || v < 0 || u >= num_vertices || v >= num_vertices)
      throw Error(ErrorCode::BadMap, "edge endpoint out of range");
    if (u == v) throw Error(ErrorCode::NotSimple, "loop edge");
    if (!dart_of.emplace(std::make_pair(u, v), 2 * k).second ||
        !dart_of.emplace(std::make_pair(v, u), 2 * k + 1).second)
      throw Error(ErrorCode::NotSimple, "parallel edges");
    alpha[2 * k] = 2 * k + 1;
    alpha[2 * k + 1] = 2 * k;
    tail[2 * k] = u;
    tail[2 * k + 1] = v;
  }
  int used = 0;
  for (int v = 0; v < num_vertices; ++v) {
    const auto& rot = rotations[v];
    for (size_t i = 0; i < rot.size(); ++i) {
      auto a = dart_of.find({v, rot[i]});
      auto b = dart_of.find({v, rot[(i + 1) % rot.size()]});
      if (a == dart_of.end() || b == dart_of.end())
        throw Error(ErrorCode::BadMap, "rotation names a non-neighbour");
      if (sigma[a->second] != -1) throw Error(ErrorCode::BadMap, "dart listed twice");
      sigma[a->second] = b->second;
      ++used;
    }
  }
  if (used != n) throw Error(ErrorCode::BadMap, "rotations do not cover every dart");
  PlanarMap m(num_vertices, alpha, sigma, tail, outer_face);
  validate_input_graph(m);
  return m;
}

PlanarMap embed_straight_line(const std::vector<std::pair<double, double>>& coords,
                              const std::vector<std::pair<int, int>>& edges) {
  const int nv = static_cast<int>(coords.size());
  std::vector<std::vector<int>> rot(nv);
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= nv || v >= nv)
      throw Error(ErrorCode::BadMap, "edge endpoint out of range");
    rot[u].push_back(v);
    rot[v].push_back(u);
  }
  for (int v = 0; v < nv; ++v) {
    auto angle = [&](int w) {
      return std::atan2(coords[w].second - coords[v].second, coords[w].first - coords[v].first);
    };
    std::sort(rot[v].begin(), rot[v].end(), [&](int a, int b) { return angle(a) < angle(b); });
  }
  // Provisional outer face 0, then pick the face with the largest signed area.
  std::vector<int> alpha(2 * edges.size()), tail(2 * edges.size()), sigma(2 * edges.size());
  std::map<std::pair<int, int>, int> dart_of;
  for (int k = 0; k < static_cast<int>(edges.size()); ++k) {
    alpha[2 * k] = 2 * k + 1;
    alpha[2 * k + 1] = 2 * k;
    tail[2 * k] = edges[k].first;
    tail[2 * k + 1] = edges[k].second;
    dart_of[{edges[k].first, edges[k].second}] = 2 * k;
    dart_of[{edges[k].second, edges[k].first}] = 2 * k + 1;
  }
  for (int v = 0; v < nv; ++v)
    for (size_t i = 0; i < rot[v].size(); ++i)
      sigma[dart_of.at({v, rot[v][i]})] = dart_of.at({v, rot[v][(i + 1) % rot[v].size()]});
  PlanarMap probe(nv, alpha, sigma, tail, 0);
  int outer = 0;
  double best = -1e300;
  for (int f = 0; f < probe.num_faces(); ++f) {
    double area = 0;
    for (int d : probe.face_darts(f)) {
      const auto& p = coords[probe.tail(d)];
      const auto& q = coords[probe.head(d)];
      area += p.first * q.second - q.first * p.second;
    }
    if (area > best) {
      best = area;
      outer = f;
    }
  }
  return build_map(nv, edges, rot, outer);
}

PlanarMap dual_map(const PlanarMap& m, int outer_vertex) {
  const int n = m.num_darts();
  std::vector<int> alpha(n), sigma(n), tail(n);
  for (int d = 0; d < n; ++d) {
    alpha[d] = m.alpha(d);
    sigma[d] = m.phi_inv(d);
    tail[d] = m.face(d);
  }
  if (n == 0) return PlanarMap(1, {}, {}, {}, 0);
  if (outer_vertex < 0) {
    const auto bd = m.boundary_darts();
    outer_vertex = bd.empty() ? m.tail(0) : m.tail(bd.front());
  }
  PlanarMap probe(m.num_faces(), alpha, sigma, tail, 0);
  // The dual face through dart d surrounds the primal vertex head(d).
  const int outer = probe.face(m.alpha(m.vertex_dart(outer_vertex)));
  return PlanarMap(m.num_faces(), std::move(alpha), std::move(sigma), std::move(tail), outer);
}

RestrictedDual restricted_dual(const PlanarMap& m) {
  RestrictedDual out;
  std::vector<int> vid(m.num_faces(), -1);
  for (int f = 0; f < m.num_faces(); ++f) {
    if (f == m.outer_face()) continue;
    vid[f] = static_cast<int>(out.face_of_vertex.size());
    out.face_of_vertex.push_back(f);
  }
  std::vector<int> new_id(m.num_darts(), -1);
  for (int e = 0; e < m.num_edges(); ++e) {
    if (m.is_boundary_edge(e)) continue;
    const int d = m.edge_dart(e);
    new_id[d] = static_cast<int>(out.dart_origin.size());
    out.dart_origin.push_back(d);
    new_id[m.alpha(d)] = static_cast<int>(out.dart_origin.size());
    out.dart_origin.push_back(m.alpha(d));
  }
  const int n = static_cast<int>(out.dart_origin.size());
  std::vector<int> alpha(n), sigma(n), tail(n);
  for (int k = 0; k < n; ++k) {
    const int d = out.dart_origin[k];
    alpha[k] = new_id[m.alpha(d)];
    tail[k] = vid[m.face(d)];
    int x = m.phi_inv(d);
    while (new_id[x] < 0) x = m.phi_inv(x);
    sigma[k] = new_id[x];
  }
  const int nv = static_cast<int>(out.face_of_vertex.size());
  if (n == 0) {
    out.map = PlanarMap(nv, {}, {}, {}, 0);
    return out;
  }
  PlanarMap probe(nv, alpha, sigma, tail, 0);
  // The merged face is the one reaching a primal boundary vertex.
  int outer = 0;
  for (int k = 0; k < n; ++k)
    if (m.is_boundary_vertex(m.head(out.dart_origin[k]))) {
      outer = probe.face(k);
      break;
    }
  out.map = PlanarMap(nv, std::move(alpha), std::move(sigma), std::move(tail), outer);
  return out;
}

}  // namespace isotree
