#pragma once

#include <string>
#include <utility>
#include <vector>

namespace isotree {

// Rotation system on darts. sigma turns counterclockwise around the tail
// vertex, alpha is the twin. Faces are orbits of phi = sigma o alpha, so each
// dart lies in the face on its right; bounded faces are walked clockwise and
// the outer face counterclockwise.
class PlanarMap {
 public:
  PlanarMap() = default;
  PlanarMap(int num_vertices, std::vector<int> alpha, std::vector<int> sigma,
            std::vector<int> tail, int outer_face);

  int num_vertices() const { return num_vertices_; }
  int num_darts() const { return static_cast<int>(alpha_.size()); }
  int num_edges() const { return num_darts() / 2; }
  int num_faces() const { return static_cast<int>(faces_.size()); }

  int alpha(int d) const { return alpha_[d]; }
  int sigma(int d) const { return sigma_[d]; }
  int sigma_inv(int d) const { return sigma_inv_[d]; }
  int phi(int d) const { return sigma_[alpha_[d]]; }
  int phi_inv(int d) const { return alpha_[sigma_inv_[d]]; }
  int tail(int d) const { return tail_[d]; }
  int head(int d) const { return tail_[alpha_[d]]; }
  int face(int d) const { return face_of_[d]; }
  int edge(int d) const { return edge_of_[d]; }

  // Face on the left of d and the next dart along it (counterclockwise
  // around bounded faces).
  int left_face(int d) const { return face_of_[alpha_[d]]; }
  int left_next(int d) const { return sigma_inv_[alpha_[d]]; }
  int left_prev(int d) const { return alpha_[sigma_[d]]; }

  // Lower-numbered dart of edge e.
  int edge_dart(int e) const { return edge_darts_[e]; }
  int vertex_dart(int v) const { return vertex_dart_[v]; }
  int degree(int v) const;
  std::vector<int> darts_at(int v) const;
  const std::vector<int>& face_darts(int f) const { return faces_[f]; }
  int outer_face() const { return outer_face_; }

  bool is_boundary_edge(int e) const;
  bool is_boundary_vertex(int v) const;

  // Darts having the outer face on their left, in clockwise order along the
  // boundary, starting from the smallest dart id.
  std::vector<int> boundary_darts() const;

  int num_components() const;
  int euler_characteristic() const;

  const std::vector<std::string>& vertex_labels() const { return vertex_labels_; }
  const std::vector<std::string>& edge_labels() const { return edge_labels_; }
  void set_vertex_labels(std::vector<std::string> labels);
  void set_edge_labels(std::vector<std::string> labels);

  const std::vector<int>& alpha_array() const { return alpha_; }
  const std::vector<int>& sigma_array() const { return sigma_; }
  const std::vector<int>& tail_array() const { return tail_; }

 private:
  int num_vertices_ = 0;
  std::vector<int> alpha_, sigma_, sigma_inv_, tail_;
  std::vector<int> face_of_, edge_of_, edge_darts_, vertex_dart_;
  std::vector<std::vector<int>> faces_;
  int outer_face_ = 0;
  std::vector<std::string> vertex_labels_, edge_labels_;
};

// Standing assumptions on input graphs: connected, Euler formula, simple,
// every degree >= 2 and a simple cycle as outer boundary.
void validate_input_graph(const PlanarMap& m);

// Edge k yields darts 2k (first -> second) and 2k+1. rotations[v] lists the
// neighbours of v counterclockwise.
PlanarMap build_map(int num_vertices, const std::vector<std::pair<int, int>>& edges,
                    const std::vector<std::vector<int>>& rotations, int outer_face);

// Rotations from straight-line coordinates; the outer face is the one with
// largest signed area (the only counterclockwise one).
PlanarMap embed_straight_line(const std::vector<std::pair<double, double>>& coords,
                              const std::vector<std::pair<int, int>>& edges);

// Dual map on the same dart ids: the dual dart d points from face(d) to
// face(alpha(d)). The outer face of the dual is the face around
// outer_vertex (default: tail of the first boundary dart).
PlanarMap dual_map(const PlanarMap& m, int outer_vertex = -1);

struct RestrictedDual {
  PlanarMap map;
  std::vector<int> face_of_vertex;  // dual vertex -> face of m
  std::vector<int> dart_origin;     // dart -> dart of m
};
RestrictedDual restricted_dual(const PlanarMap& m);

}  // namespace isotree
