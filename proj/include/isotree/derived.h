#pragma once

#include <string>
#include <vector>

#include "isotree/planar_map.h"

namespace isotree {

enum class VertexClass { Primal, Dual, White, Black, BulletBlack, LozengeBlack, RootR, RootS };

enum class OriginKind {
  Corner,          // quad-graph edge joining a face to a vertex on its boundary
  HalfRhombus,     // extended quad-graph edge to a split outer vertex
  CrossesPrimal,   // G^Q quadrangle edge crossing a primal edge
  CrossesDual,     // G^Q quadrangle edge crossing a dual edge
  External,        // G^Q external edge at an inner corner
  ExternalBoundary,// G^Q external edge at an outer corner
  StarArc,         // G0/G arc crossing a dual edge
  PrimArc,         // G0/G arc crossing a primal edge
  RootArc,         // arc into r
  SplitArc,        // arc b -> w created by splitting a boundary vertex
  PrimalEdge,      // G_ext edge of G
  RootEdge,        // G_ext edge p_j - r
  DualEdge,        // G*_ext dual of an edge of G
  BoundaryDualEdge,// G*_ext edge o_j - o_{j+1}
  HalfPrimal,      // extended double: half of an edge of G
  HalfDual,        // extended double: half of a dual edge of G
  HalfRootEdge,    // extended double: W_j - p_j
  HalfBoundarySplit,  // extended double: W_j - o_j, always in dual trees
  HalfBoundaryOther,  // extended double: W_j - o_{j+1}
};

const char* vertex_class_name(VertexClass c);
const char* origin_kind_name(OriginKind k);

struct EdgeOrigin {
  OriginKind kind = OriginKind::Corner;
  int source_edge = -1;     // edge of G
  int source_dart = -1;     // dart of G (or of G_ext for the extended double)
  int boundary_index = -1;  // j for objects attached to the j-th boundary vertex
};

struct DerivedMap {
  PlanarMap map;
  std::vector<VertexClass> vclass;
  std::vector<EdgeOrigin> origin;  // per edge of map
};

enum class QuadVariant { Full, Restricted, Extended };

// Vertices: primal 0..V-1, then faces (full: all, restricted/extended: inner
// faces in face-id order), then for Extended the split outer vertices o_j.
DerivedMap quad_graph(const PlanarMap& m, QuadVariant variant);

enum class QFaceKind { Quadrangle, PrimalVertex, DualVertex };

// G^Q. For each dart d of G: black vertex 2d = side (tail d, left face of d)
// and white vertex 2d+1 = side (head d, left face of d) of the rhombus of
// edge(d). Edge 3d joins 2d+1 and 2d (crosses the dual edge), edge 3d+1
// joins 2 alpha(d)+1 and 2d (crosses the primal edge), edge 3d+2 joins 2d+1
// and 2 left_next(d) (external). Dart 2k starts at the white end of edge k.
struct QuadriTiling {
  DerivedMap g;
  std::vector<QFaceKind> face_kind;
  std::vector<int> face_source;  // edge, vertex or face of G
  std::vector<int> boundary_darts;
  static int black(int d) { return 2 * d; }
  static int white(int d) { return 2 * d + 1; }
  static int star(int d) { return 3 * d; }
  static int prim(int d) { return 3 * d + 1; }
  static int ext(int d) { return 3 * d + 2; }
};
QuadriTiling quadri_tiling(const PlanarMap& m);

// G_ext keeps the darts of G and adds darts 2E+2j (p_j -> r) and 2E+2j+1.
// G*_ext is the dual on the same dart ids; its vertices ("lozenges") are the
// inner faces of G in face-id order followed by o_0..o_{n-1}, where o_j lies
// across the boundary edge of d_j and p_j = head(d_j).
struct ExtendedPair {
  DerivedMap graph;
  DerivedMap dual;
  int root_r = -1;
  int num_inner_faces = 0;
  std::vector<int> boundary_darts;     // d_j in clockwise order
  std::vector<int> boundary_vertices;  // p_j
  std::vector<int> root_darts;         // G_ext dart p_j -> r
  std::vector<int> lozenge_of_face;    // face of G -> lozenge (-1 for outer)
  int split_vertex(int j) const { return num_inner_faces + j; }
  int n() const { return static_cast<int>(boundary_darts.size()); }
};
ExtendedPair extended_pair(const PlanarMap& m);

// Extended double graph. Vertex ids: bullets 0..V-1, lozenges V..V+L-1,
// whites V+L+eps for each edge eps of G_ext. For a G_ext dart c, half_primal[c]
// joins the white of edge(c) to tail(c) (absent when tail(c) = r) and
// half_dual[c] joins it to the lozenge on the right of c.
struct ExtendedDouble {
  DerivedMap g;
  ExtendedPair ext;
  int num_bullets = 0;
  int num_lozenges = 0;
  int num_whites = 0;
  int root_s = -1;
  std::vector<int> half_primal;
  std::vector<int> half_dual;
  std::vector<int> edge_white;   // D edge -> white endpoint
  std::vector<int> edge_black;   // D edge -> black endpoint
  std::vector<int> edge_group;   // D edge -> G_ext dart c with edge in {half_primal[c], half_dual[c]}
  int lozenge_vertex(int lozenge) const { return num_bullets + lozenge; }
  int white_vertex(int gext_edge) const { return num_bullets + num_lozenges + gext_edge; }
  bool is_white(int v) const { return v >= num_bullets + num_lozenges; }
  bool is_lozenge(int v) const { return v >= num_bullets && v < num_bullets + num_lozenges; }
  int num_vertices() const { return num_bullets + num_lozenges + num_whites; }
  int num_edges() const { return g.map.num_edges(); }
  std::vector<int> split_edges() const;
};
// root_s selects the split vertex o_{root_s}.
ExtendedDouble extended_double(const PlanarMap& m, int root_s = 0);

}  // namespace isotree
