#include <set>

#include "doctest.h"
#include "isotree/derived.h"
#include "isotree/error.h"
#include "isotree/generators.h"
#include "support/test_oracles.h"

using namespace isotree;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::BadInput;
}

int count_class(const DerivedMap& d, VertexClass c) {
  int n = 0;
  for (VertexClass x : d.vclass) n += x == c;
  return n;
}

}  // namespace

TEST_SUITE("planar_core") {

TEST_CASE("build_map counts for the corpus") {
  const PlanarMap c3 = make_cycle(3).map, c4 = make_cycle(4).map, grid = make_grid(3, 3).map;
  CHECK(c3.num_vertices() == 3);
  CHECK(c3.num_edges() == 3);
  CHECK(c3.num_faces() == 2);
  CHECK(c4.num_vertices() == 4);
  CHECK(c4.num_edges() == 4);
  CHECK(c4.num_faces() == 2);
  CHECK(grid.num_vertices() == 9);
  CHECK(grid.num_edges() == 12);
  CHECK(grid.num_faces() == 5);
  for (const PlanarMap* m : {&c3, &c4, &grid}) CHECK(m->euler_characteristic() == 2);
}

TEST_CASE("build_map from explicit rotations") {
  // Square 0-1-2-3 with counterclockwise neighbour lists.
  const std::vector<std::pair<int, int>> edges{{0, 1}, {1, 2}, {2, 3}, {3, 0}};
  const std::vector<std::vector<int>> rot{{1, 3}, {2, 0}, {3, 1}, {0, 2}};
  const PlanarMap m = build_map(4, edges, rot, 0);
  CHECK(m.num_faces() == 2);
  validate_input_graph(m);
  CHECK(testsupport::isomorphic(m, make_cycle(4).map));
}

TEST_CASE("map validation errors") {
  SUBCASE("not an involution") {
    CHECK(code_of([] { PlanarMap(2, {0, 1}, {1, 0}, {0, 1}, 0); }) == ErrorCode::BadMap);
  }
  SUBCASE("disconnected") {
    const auto a = make_cycle(3).map;
    // Two disjoint triangles.
    std::vector<int> alpha, sigma, tail;
    for (int copy = 0; copy < 2; ++copy)
      for (int d = 0; d < a.num_darts(); ++d) {
        alpha.push_back(a.alpha(d) + copy * a.num_darts());
        sigma.push_back(a.sigma(d) + copy * a.num_darts());
        tail.push_back(a.tail(d) + copy * 3);
      }
    PlanarMap two(6, alpha, sigma, tail, 0);
    CHECK(code_of([&] { validate_input_graph(two); }) == ErrorCode::Disconnected);
  }
  SUBCASE("degree one") {
    const std::vector<std::pair<int, int>> edges{{0, 1}, {1, 2}, {2, 0}, {0, 3}};
    const std::vector<std::vector<int>> rot{{1, 3, 2}, {2, 0}, {0, 1}, {0}};
    CHECK(code_of([&] { validate_input_graph(build_map(4, edges, rot, 0)); }) ==
          ErrorCode::DegreeTooLow);
  }
  SUBCASE("parallel edges") {
    const std::vector<std::pair<int, int>> edges{{0, 1}, {1, 0}};
    const std::vector<std::vector<int>> rot{{1, 1}, {0, 0}};
    CHECK(code_of([&] { validate_input_graph(build_map(2, edges, rot, 0)); }) == ErrorCode::NotSimple);
  }
  SUBCASE("torus rotation fails Euler") {
    // K4 with a rotation system of genus 1.
    const std::vector<std::pair<int, int>> edges{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    const std::vector<std::vector<int>> rot{{1, 2, 3}, {0, 2, 3}, {0, 1, 3}, {0, 1, 2}};
    CHECK(code_of([&] { build_map(4, edges, rot, 0); }) == ErrorCode::NonPlanar);
  }
}

TEST_CASE("boundary darts run clockwise") {
  const GraphFile g = make_grid(3, 3);
  const auto bd = g.map.boundary_darts();
  REQUIRE(bd.size() == 8);
  for (size_t j = 0; j < bd.size(); ++j) {
    CHECK(g.map.left_face(bd[j]) == g.map.outer_face());
    CHECK(g.map.head(bd[j]) == g.map.tail(bd[(j + 1) % bd.size()]));
  }
  // Signed area of the boundary polygon in this order is negative.
  double area = 0;
  for (int d : bd) {
    const auto p = g.coords[g.map.tail(d)], q = g.coords[g.map.head(d)];
    area += p.first * q.second - q.first * p.second;
  }
  CHECK(area < 0);
}

TEST_CASE("dual_map") {
  const PlanarMap c3 = make_cycle(3).map, c4 = make_cycle(4).map, grid = make_grid(3, 3).map;
  SUBCASE("dual of dual is the map") {
    // The second dual needs the old outer face as its outer vertex.
    CHECK(testsupport::isomorphic(dual_map(dual_map(c4), c4.outer_face()), c4));
    CHECK(testsupport::isomorphic(dual_map(dual_map(grid), grid.outer_face()), grid));
  }
  SUBCASE("dual of C3: two vertices, three parallel edges") {
    const PlanarMap d = dual_map(c3);
    CHECK(d.num_vertices() == 2);
    CHECK(d.num_edges() == 3);
    for (int e = 0; e < 3; ++e) CHECK(d.tail(d.edge_dart(e)) != d.head(d.edge_dart(e)));
  }
  SUBCASE("dual of the grid") {
    const PlanarMap d = dual_map(grid);
    CHECK(d.num_vertices() == 5);
    CHECK(d.num_edges() == 12);
    CHECK(d.euler_characteristic() == 2);
  }
  SUBCASE("non-isomorphic maps are told apart") {
    CHECK_FALSE(testsupport::isomorphic(c3, c4));
    CHECK_FALSE(testsupport::isomorphic(make_wheel(5).map, make_cycle(6).map));
  }
}

TEST_CASE("restricted_dual") {
  const RestrictedDual c4 = restricted_dual(make_cycle(4).map);
  CHECK(c4.map.num_vertices() == 1);
  CHECK(c4.map.num_edges() == 0);
  const RestrictedDual c3 = restricted_dual(make_cycle(3).map);
  CHECK(c3.map.num_vertices() == 1);
  CHECK(c3.map.num_edges() == 0);
  const RestrictedDual g = restricted_dual(make_grid(3, 3).map);
  CHECK(g.map.num_vertices() == 4);
  CHECK(g.map.num_edges() == 4);
  for (int v = 0; v < 4; ++v) CHECK(g.map.degree(v) == 2);
  CHECK(g.map.num_components() == 1);
}

TEST_CASE("quad_graph") {
  const PlanarMap c4 = make_cycle(4).map;
  SUBCASE("full") {
    const DerivedMap q = quad_graph(c4, QuadVariant::Full);
    CHECK(count_class(q, VertexClass::Primal) == 4);
    CHECK(count_class(q, VertexClass::Dual) == 2);
    CHECK(q.map.num_edges() == 8);
    CHECK(q.map.num_faces() == 4);
  }
  SUBCASE("restricted") {
    const DerivedMap q = quad_graph(c4, QuadVariant::Restricted);
    CHECK(count_class(q, VertexClass::Primal) == 4);
    CHECK(count_class(q, VertexClass::Dual) == 1);
    CHECK(q.map.num_edges() == 4);
  }
  SUBCASE("every face of the full quad-graph has length 4") {
    for (const GraphFile& g : {make_cycle(3), make_cycle(5), make_grid(3, 3), make_wheel(6)}) {
      const DerivedMap q = quad_graph(g.map, QuadVariant::Full);
      for (int f = 0; f < q.map.num_faces(); ++f) CHECK(q.map.face_darts(f).size() == 4);
      CHECK(q.map.euler_characteristic() == 2);
    }
  }
  SUBCASE("extended variant adds the half rhombi") {
    const DerivedMap q = quad_graph(make_grid(3, 3).map, QuadVariant::Extended);
    CHECK(count_class(q, VertexClass::Dual) == 4 + 8);
    CHECK(q.map.euler_characteristic() == 2);
  }
}

TEST_CASE("quadri_tiling") {
  for (const GraphFile& g : {make_cycle(3), make_cycle(4), make_grid(3, 3), make_wheel(5)}) {
    const QuadriTiling t = quadri_tiling(g.map);
    const PlanarMap& q = t.g.map;
    CAPTURE(g.name);
    CHECK(q.num_vertices() == 4 * g.map.num_edges());
    CHECK(q.euler_characteristic() == 2);
    for (int v = 0; v < q.num_vertices(); ++v) CHECK(q.degree(v) == 3);
    for (int d = 0; d < q.num_darts(); ++d)
      CHECK((q.tail(d) % 2) != (q.head(d) % 2));  // bipartite
    int quads = 0, pv = 0, dv = 0;
    for (int f = 0; f < q.num_faces(); ++f) {
      switch (t.face_kind[f]) {
        case QFaceKind::Quadrangle: ++quads; CHECK(q.face_darts(f).size() == 4); break;
        case QFaceKind::PrimalVertex: ++pv; break;
        case QFaceKind::DualVertex: ++dv; break;
      }
    }
    CHECK(quads == g.map.num_edges());
    CHECK(pv == g.map.num_vertices());
    CHECK(dv == g.map.num_faces());
  }
  CHECK(quadri_tiling(make_cycle(4).map).g.map.num_vertices() == 16);
}

TEST_CASE("extended_pair") {
  SUBCASE("C4") {
    const ExtendedPair ep = extended_pair(make_cycle(4).map);
    CHECK(ep.dual.map.num_vertices() == 5);
    CHECK(ep.graph.map.num_vertices() == 5);
    CHECK(ep.graph.map.degree(ep.root_r) == 4);
    // Split vertices form a cycle of length 4.
    int boundary_edges = 0;
    for (const EdgeOrigin& o : ep.dual.origin) boundary_edges += o.kind == OriginKind::BoundaryDualEdge;
    CHECK(boundary_edges == 4);
    for (int j = 0; j < 4; ++j) CHECK(ep.dual.map.degree(ep.split_vertex(j)) == 3);
  }
  SUBCASE("C3") {
    const ExtendedPair ep = extended_pair(make_cycle(3).map);
    CHECK(ep.n() == 3);
    CHECK(ep.dual.map.num_vertices() == 4);
  }
  SUBCASE("boundary count, split vertices and degree of r agree") {
    for (const GraphFile& g : {make_cycle(5), make_grid(3, 3), make_wheel(6)}) {
      const ExtendedPair ep = extended_pair(g.map);
      CHECK(static_cast<int>(g.map.boundary_darts().size()) == ep.n());
      CHECK(ep.dual.map.num_vertices() == g.map.num_faces() - 1 + ep.n());
      CHECK(ep.graph.map.degree(ep.root_r) == ep.n());
      CHECK(ep.graph.map.euler_characteristic() == 2);
      CHECK(ep.dual.map.euler_characteristic() == 2);
      // The two maps are mutually dual.
      CHECK(testsupport::isomorphic(dual_map(ep.graph.map, ep.root_r), ep.dual.map));
    }
  }
}

TEST_CASE("extended_double") {
  SUBCASE("C4 counts") {
    const ExtendedDouble dd = extended_double(make_cycle(4).map);
    CHECK(dd.num_bullets == 4);
    CHECK(dd.num_lozenges == 5);
    CHECK(dd.num_whites == 8);
    int deg3 = 0, deg4 = 0;
    for (int v = 0; v < dd.num_vertices(); ++v)
      if (dd.is_white(v)) (dd.g.map.degree(v) == 3 ? deg3 : deg4)++;
    CHECK(deg3 == 4);
    CHECK(deg4 == 4);
  }
  SUBCASE("structure on the corpus") {
    for (const GraphFile& g : {make_cycle(3), make_grid(3, 3), make_wheel(5)}) {
      const ExtendedDouble dd = extended_double(g.map);
      CHECK(dd.g.map.euler_characteristic() == 2);
      const int ne = g.map.num_edges();
      for (int k = 0; k < dd.num_edges(); ++k) {
        CHECK(dd.is_white(dd.edge_white[k]));
        CHECK_FALSE(dd.is_white(dd.edge_black[k]));
      }
      for (int eps = 0; eps < dd.num_whites; ++eps)
        CHECK(dd.g.map.degree(dd.white_vertex(eps)) == (eps < ne ? 4 : 3));
      CHECK(dd.split_edges().size() == static_cast<size_t>(dd.ext.n()));
      CHECK(dd.g.vclass[dd.root_s] == VertexClass::RootS);
      // Contracting each white vertex recovers G_ext minus r and G*_ext.
      std::multiset<std::pair<int, int>> primal, dual;
      const PlanarMap& gx = dd.ext.graph.map;
      for (int eps = 0; eps < gx.num_edges(); ++eps) {
        const int a = gx.edge_dart(eps), b = gx.alpha(a);
        if (dd.half_primal[a] >= 0 && dd.half_primal[b] >= 0)
          primal.insert(std::minmax(dd.edge_black[dd.half_primal[a]], dd.edge_black[dd.half_primal[b]]));
        dual.insert(std::minmax(dd.edge_black[dd.half_dual[a]], dd.edge_black[dd.half_dual[b]]));
      }
      std::multiset<std::pair<int, int>> primal_ref, dual_ref;
      for (int e = 0; e < g.map.num_edges(); ++e)
        primal_ref.insert(std::minmax(g.map.tail(g.map.edge_dart(e)), g.map.head(g.map.edge_dart(e))));
      const PlanarMap& gd = dd.ext.dual.map;
      for (int e = 0; e < gd.num_edges(); ++e)
        dual_ref.insert(std::minmax(dd.lozenge_vertex(gd.tail(gd.edge_dart(e))),
                                    dd.lozenge_vertex(gd.head(gd.edge_dart(e)))));
      CHECK(primal == primal_ref);
      CHECK(dual == dual_ref);
    }
  }
  SUBCASE("root_s out of range") {
    CHECK(code_of([] { extended_double(make_cycle(4).map, 4); }) == ErrorCode::BadParams);
  }
}

}  // TEST_SUITE
