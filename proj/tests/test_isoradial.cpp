#include <cmath>
#include <numbers>

#include "doctest.h"
#include "isotree/error.h"
#include "isotree/generators.h"
#include "isotree/isoradial.h"

using namespace isotree;
using std::numbers::pi;

namespace {

const cd I(0, 1);

bool close(cd a, cd b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

// Rhombus half-angle from coordinates alone: half the angle subtended at the
// circumcenter of a face adjacent to e, measured by the chord length.
double chord_theta(const GraphFile& g, int e) {
  const int d = g.map.edge_dart(e);
  const Point p = g.coords[g.map.tail(d)], q = g.coords[g.map.head(d)];
  const double len = std::hypot(p.first - q.first, p.second - q.second);
  return std::acos(len / 2);
}

}  // namespace

TEST_SUITE("isoradial") {

TEST_CASE("rhombus half-angles") {
  SUBCASE("C4: pi/4") {
    const IsoradialData iso = prepare(make_cycle(4));
    for (double t : iso.theta) CHECK(t == doctest::Approx(pi / 4).epsilon(1e-12));
  }
  SUBCASE("C3: pi/6") {
    const IsoradialData iso = prepare(make_cycle(3));
    for (double t : iso.theta) CHECK(t == doctest::Approx(pi / 6).epsilon(1e-12));
  }
  SUBCASE("square lattice: pi/4") {
    const IsoradialData iso = prepare(make_grid(3, 3));
    for (double t : iso.theta) CHECK(t == doctest::Approx(pi / 4).epsilon(1e-12));
    CHECK(iso.regular);
  }
  SUBCASE("geometric chord oracle on the corpus") {
    for (const GraphFile& g : {make_cycle(5), make_rhombic(3, 2, 1, 6), make_wheel(6)}) {
      const IsoradialData iso = validate_isoradial(g.map, g.coords);
      for (int e = 0; e < g.map.num_edges(); ++e)
        CHECK(iso.theta[e] == doctest::Approx(chord_theta(g, e)).epsilon(1e-9));
    }
  }
}

TEST_CASE("non-isoradial coordinates are rejected") {
  GraphFile g = make_cycle(4);
  g.coords[0].first *= 1.3;
  try {
    validate_isoradial(g.map, g.coords);
    FAIL("expected NotIsoradial");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotIsoradial);
  }
}

TEST_CASE("boundary angles") {
  SUBCASE("C4: pi/2") {
    const IsoradialData iso = prepare(make_cycle(4));
    REQUIRE(iso.theta_boundary.size() == 4);
    for (double t : iso.theta_boundary) CHECK(t == doctest::Approx(pi / 2).epsilon(1e-12));
  }
  SUBCASE("C3: 2pi/3") {
    const IsoradialData iso = prepare(make_cycle(3));
    for (double t : iso.theta_boundary) CHECK(t == doctest::Approx(2 * pi / 3).epsilon(1e-12));
  }
  SUBCASE("closure at every boundary vertex and agreement with geometry") {
    for (const GraphFile& g : {make_cycle(6), make_grid(3, 3), make_rhombic(3, 2, 1, 6), make_wheel(5)}) {
      CAPTURE(g.name);
      const IsoradialData iso = prepare(g);
      const ExtendedPair ext = extended_pair(g.map);
      for (int j = 0; j < ext.n(); ++j) {
        const int p = ext.boundary_vertices[j];
        double sum = 0;
        for (int d : g.map.darts_at(p)) sum += iso.theta[g.map.edge(d)];
        CHECK(sum + iso.theta_boundary[j] == doctest::Approx(pi).epsilon(1e-12));
        const BoundaryAngles ba = boundary_angles(g.map, iso);
        CHECK(ba.max_mismatch < 1e-9);
        CHECK(ba.closure[j] == doctest::Approx(iso.theta_boundary[j]).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("angles close around inner vertices") {
  for (const GraphFile& g : {make_grid(3, 3), make_rhombic(4, 3, 1, 6), make_wheel(7)}) {
    const IsoradialData iso = prepare(g);
    for (int v = 0; v < g.map.num_vertices(); ++v) {
      if (g.map.is_boundary_vertex(v)) continue;
      double sum = 0;
      for (int d : g.map.darts_at(v)) sum += iso.theta[g.map.edge(d)];
      CHECK(sum == doctest::Approx(pi).epsilon(1e-12));
    }
  }
}

TEST_CASE("critical couplings") {
  CHECK(critical_coupling(pi / 4) == doctest::Approx(0.5 * std::log(1 + std::sqrt(2.0))).epsilon(1e-14));
  CHECK(critical_coupling(pi / 4) == doctest::Approx(0.440687).epsilon(1e-6));
  CHECK(critical_coupling(pi / 6) == doctest::Approx(0.25 * std::log(3.0)).epsilon(1e-14));
  CHECK(critical_coupling(pi / 6) == doctest::Approx(0.274653).epsilon(1e-6));
  CHECK(critical_coupling(pi / 3) == doctest::Approx(0.5 * std::log(2 + std::sqrt(3.0))).epsilon(1e-14));
  CHECK(critical_coupling(pi / 3) == doctest::Approx(0.658479).epsilon(1e-6));
  SUBCASE("strictly increasing on (0, pi/2)") {
    double prev = critical_coupling(1e-6);
    CHECK(prev > 0);
    for (int k = 1; k < 1000; ++k) {
      const double j = critical_coupling(k * pi / 2000);
      CHECK(j > prev);
      prev = j;
    }
  }
  SUBCASE("out of range") {
    for (double t : {0.0, -0.1, pi / 2, 2.0}) {
      try {
        critical_coupling(t);
        FAIL("expected AngleOutOfRange");
      } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::AngleOutOfRange);
      }
    }
  }
}

TEST_CASE("dimer weights") {
  const GraphFile g = make_rhombic(3, 2, 1, 6);
  const IsoradialData iso = prepare(g);
  const QuadriTiling gq = quadri_tiling(g.map);
  SUBCASE("critical: (1, cos, sin)") {
    const EdgeWeights nu = dimer_weights(critical_couplings(iso), gq);
    for (int k = 0; k < gq.g.map.num_edges(); ++k) {
      const EdgeOrigin& o = gq.g.origin[k];
      const double th = o.source_edge >= 0 ? iso.theta[o.source_edge] : 0;
      switch (o.kind) {
        case OriginKind::CrossesPrimal: CHECK(close(nu[k], std::cos(th))); break;
        case OriginKind::CrossesDual: CHECK(close(nu[k], std::sin(th))); break;
        default: CHECK(close(nu[k], 1.0)); break;
      }
    }
  }
  SUBCASE("pi/4: both crossing weights sqrt(2)/2") {
    const GraphFile c4 = make_cycle(4);
    const QuadriTiling q4 = quadri_tiling(c4.map);
    const EdgeWeights nu = dimer_weights(critical_couplings(prepare(c4)), q4);
    for (int k = 0; k < q4.g.map.num_edges(); ++k) {
      const OriginKind kind = q4.g.origin[k].kind;
      if (kind == OriginKind::CrossesPrimal || kind == OriginKind::CrossesDual)
        CHECK(close(nu[k], std::sqrt(0.5)));
    }
  }
  SUBCASE("J -> 0: (1, 1, 0)") {
    const EdgeWeights nu = dimer_weights(std::vector<double>(g.map.num_edges(), 1e-12), gq);
    for (int k = 0; k < gq.g.map.num_edges(); ++k) {
      switch (gq.g.origin[k].kind) {
        case OriginKind::CrossesPrimal: CHECK(close(nu[k], 1.0, 1e-9)); break;
        case OriginKind::CrossesDual: CHECK(close(nu[k], 0.0, 1e-9)); break;
        default: CHECK(close(nu[k], 1.0)); break;
      }
    }
  }
}

TEST_CASE("tau on the extended pair") {
  const GraphFile g = make_cycle(4);
  const IsoradialData iso = prepare(g);
  const ExtendedPair ext = extended_pair(g.map);
  const TauWeights t = tree_weights_tau(iso, ext);
  const PlanarMap& gx = ext.graph.map;
  for (int c = 0; c < gx.num_darts(); ++c) {
    if (ext.graph.origin[gx.edge(c)].kind == OriginKind::PrimalEdge) {
      CHECK(close(t.primal[c], 1.0));
      CHECK(close(t.dual[c], 1.0));
    } else {
      CHECK(close(t.primal[c], gx.tail(c) == ext.root_r ? 0.0 : std::sqrt(2.0)));
      CHECK(close(t.dual[c] * t.dual[gx.alpha(c)], 1.0));
      CHECK(std::abs(t.dual[c]) == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("double weights") {
  SUBCASE("C3 half-edges: 1/2 and i sqrt(3)/2") {
    const GraphFile g = make_cycle(3);
    const ExtendedDouble dd = extended_double(g.map);
    const DoubleWeights w = double_weights(prepare(g), dd);
    for (int k = 0; k < dd.num_edges(); ++k) {
      if (dd.g.origin[k].kind == OriginKind::HalfPrimal) CHECK(close(w.rho_star[k], 0.5));
      if (dd.g.origin[k].kind == OriginKind::HalfDual) CHECK(close(w.rho_star[k], I * std::sqrt(3.0) / 2.0));
    }
  }
  SUBCASE("C4 boundary: -1 - i and sqrt(2)") {
    const GraphFile g = make_cycle(4);
    const ExtendedDouble dd = extended_double(g.map);
    const DoubleWeights w = double_weights(prepare(g), dd);
    int seen = 0;
    for (int k = 0; k < dd.num_edges(); ++k)
      if (dd.g.origin[k].kind == OriginKind::HalfRootEdge) {
        ++seen;
        CHECK(close(w.rho_star[k], cd(-1, -1)));
        CHECK(close(w.tau2[k], std::sqrt(2.0)));
      }
    CHECK(seen == 4);
  }
  SUBCASE("every edge gets exactly one weight of each kind") {
    const GraphFile g = make_wheel(5);
    const ExtendedDouble dd = extended_double(g.map);
    const DoubleWeights w = double_weights(prepare(g), dd);
    CHECK(w.rho_star.size() == static_cast<size_t>(dd.num_edges()));
    CHECK(w.tau2.size() == static_cast<size_t>(dd.num_edges()));
  }
}

TEST_CASE("trigonometric identities behind the weights") {
  for (int k = -40; k <= 40; ++k) {
    const double tb = k * 0.173;
    const cd rho = std::exp(-I * tb) - 1.0;
    CHECK(std::abs(rho) == doctest::Approx(2 * std::abs(std::sin(tb / 2))).epsilon(1e-12));
    CHECK(close(rho, (-I * std::exp(-I * tb / 2.0)) * (2 * std::sin(tb / 2))));
  }
  for (int k = 1; k < 100; ++k) {
    const double th = k * pi / 200;
    CHECK(close(I * std::cos(th) + std::sin(th), I * std::exp(-I * th)));
  }
}

}  // TEST_SUITE
