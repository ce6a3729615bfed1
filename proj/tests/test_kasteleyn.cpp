#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "isotree/error.h"
#include "isotree/generators.h"
#include "isotree/kasteleyn.h"
#include "support/test_oracles.h"

using namespace isotree;
using std::numbers::pi;

namespace {

const cd I(0, 1);

struct Setup {
  GraphFile g;
  IsoradialData iso;
  QuadriTiling gq;
  Phasing phi;
  EdgeWeights nu;
  KasteleynMatrix k;
  explicit Setup(GraphFile graph)
      : g(std::move(graph)), iso(prepare(g)), gq(quadri_tiling(g.map)), phi(assign_phases(gq, iso)),
        nu(dimer_weights(critical_couplings(iso), gq)), k(build_kasteleyn(gq, nu, phi)) {}
};

std::vector<GraphFile> corpus() {
  return {make_cycle(3), make_cycle(4), make_cycle(6), make_grid(3, 3), make_rhombic(3, 2, 1, 6),
          make_wheel(5)};
}

}  // namespace

TEST_SUITE("kasteleyn") {

TEST_CASE("phases by provenance") {
  const Setup s(make_cycle(4));
  for (int e = 0; e < s.gq.g.map.num_edges(); ++e) {
    switch (s.gq.g.origin[e].kind) {
      case OriginKind::CrossesDual: CHECK(s.phi[e] == 0.0); break;
      case OriginKind::CrossesPrimal: CHECK(s.phi[e] == doctest::Approx(pi / 2)); break;
      // theta = pi/4, theta_boundary = pi/2 on C4.
      case OriginKind::ExternalBoundary: CHECK(s.phi[e] == doctest::Approx(3 * pi / 4)); break;
      case OriginKind::External: CHECK(s.phi[e] == doctest::Approx(5 * pi / 4)); break;
      default: FAIL("unexpected origin");
    }
  }
  const Setup grid(make_grid(3, 3));
  int interior = 0;
  for (int e = 0; e < grid.gq.g.map.num_edges(); ++e)
    if (grid.gq.g.origin[e].kind == OriginKind::External) {
      ++interior;
      CHECK(grid.phi[e] == doctest::Approx(5 * pi / 4));
    }
  CHECK(interior > 0);
}

TEST_CASE("curvature") {
  SUBCASE("quadrangles have curvature 1") {
    const Setup s(make_rhombic(3, 2, 1, 6));
    for (int f = 0; f < s.gq.g.map.num_faces(); ++f)
      if (s.gq.face_kind[f] == QFaceKind::Quadrangle && f != s.gq.g.map.outer_face())
        CHECK(std::abs(curvature(s.gq, s.phi, f) - 1.0) < 1e-12);
  }
  SUBCASE("outer face is an error") {
    const Setup s(make_cycle(3));
    try {
      curvature(s.gq, s.phi, s.gq.g.map.outer_face());
      FAIL("expected OuterFace");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::OuterFace);
    }
  }
  SUBCASE("perturbing one phase rotates the curvature of its two faces") {
    const Setup s(make_grid(3, 3));
    const PlanarMap& q = s.gq.g.map;
    const double delta = 0.3;
    for (int e = 0; e < q.num_edges(); e += 5) {
      Phasing p = s.phi;
      p[e] += delta;
      const int d = q.edge_dart(e);
      for (int f = 0; f < q.num_faces(); ++f) {
        if (f == q.outer_face()) continue;
        const cd ratio = curvature(s.gq, p, f) / curvature(s.gq, s.phi, f);
        if (f == q.face(d) || f == q.face(q.alpha(d))) {
          CHECK(std::abs(std::abs(std::arg(ratio)) - delta) < 1e-12);
        } else {
          CHECK(std::abs(ratio - 1.0) < 1e-12);
        }
      }
    }
  }
}

TEST_CASE("flatness") {
  for (const GraphFile& g : corpus()) {
    CAPTURE(g.name);
    const Setup s(g);
    const FlatReport r = check_flat(s.gq, s.phi);
    CHECK(r.pass);
    CHECK(r.max_deviation <= 1e-9);
    CHECK(s.k.flat);
  }
  SUBCASE("random phases are reported as curved") {
    const Setup s(make_grid(3, 3));
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(0, 2 * pi);
    Phasing p = s.phi;
    for (double& x : p) x = u(rng);
    const FlatReport r = check_flat(s.gq, p);
    CHECK_FALSE(r.pass);
    int bad = 0;
    for (double dev : r.deviation) bad += dev > 1e-9;
    CHECK(bad > 0);
    CHECK(r.faces.size() == r.deviation.size());
    // The determinant no longer counts dimers.
    const KasteleynMatrix k = build_kasteleyn(s.gq, s.nu, p);
    CHECK_FALSE(k.flat);
    const cd zd = dimer_Z(s.gq.g.map, s.nu);
    CHECK(relative_error(std::abs(complex_det(k.matrix)), zd) > 1e-6);
  }
}

TEST_CASE("Kasteleyn matrix entries") {
  const Setup s(make_cycle(3));
  const int n = s.k.matrix.rows();
  CHECK(n == s.k.matrix.cols());
  CHECK(n == 2 * s.g.map.num_edges());
  int nonzero = 0;
  for (int w = 0; w < n; ++w)
    for (int b = 0; b < n; ++b)
      if (std::abs(s.k.matrix(w, b)) > 0) ++nonzero;
  CHECK(nonzero == s.gq.g.map.num_edges());
  for (int e = 0; e < s.gq.g.map.num_edges(); ++e) {
    const int d = s.gq.g.map.edge_dart(e);
    const cd entry = s.k.matrix(s.gq.g.map.tail(d) / 2, s.gq.g.map.head(d) / 2);
    CHECK(std::abs(entry) == doctest::Approx(std::abs(s.nu[e])));
    switch (s.gq.g.origin[e].kind) {
      case OriginKind::CrossesDual: CHECK(std::abs(entry - 0.5) < 1e-12); break;
      case OriginKind::CrossesPrimal: CHECK(std::abs(entry - I * std::sqrt(3.0) / 2.0) < 1e-12); break;
      default: CHECK(std::abs(entry - std::exp(I * s.phi[e])) < 1e-12); break;
    }
  }
}

TEST_CASE("white neighbour sums") {
  for (const GraphFile& g : corpus()) {
    CAPTURE(g.name);
    const Setup s(g);
    int boundary = 0;
    for (const WhiteSum& w : white_neighbour_sums(s.gq, s.k, s.iso)) {
      boundary += w.boundary;
      if (!w.boundary) CHECK(w.expected == cd(0.0));
      CHECK(std::abs(w.sum - w.expected) <= 1e-9);
    }
    CHECK(boundary == static_cast<int>(s.g.map.boundary_darts().size()));
  }
}

TEST_CASE("determinant counts dimers") {
  for (const GraphFile& g : corpus()) {
    CAPTURE(g.name);
    const Setup s(g);
    const DeterminantReport r = dimer_Z_det(s.k);
    const cd zd = dimer_Z(s.gq.g.map, s.nu);
    CHECK(relative_error(r.abs, zd) <= 1e-9);
    CHECK(r.imag_ratio <= 1e-9);
  }
  SUBCASE("small cases against cofactor expansion") {
    const Setup s(make_cycle(3));
    CHECK(relative_error(complex_det(s.k.matrix), testsupport::cofactor_det(s.k.matrix)) <= 1e-10);
  }
  SUBCASE("empty matrix") {
    KasteleynMatrix k;
    CHECK(dimer_Z_det(k).det == cd(1.0));
  }
}

TEST_CASE("gauge transformation at a white vertex") {
  const Setup s(make_grid(3, 3));
  const cd det = complex_det(s.k.matrix);
  REQUIRE(s.k.matrix.rows() == 24);
  for (int w : {0, 7, 23}) {
    const cd u = std::exp(I * (0.4 + w));
    KasteleynMatrix k = s.k;
    for (int b = 0; b < k.matrix.cols(); ++b) k.matrix(w, b) *= u;
    const cd det2 = complex_det(k.matrix);
    CHECK(relative_error(det2, u * det) <= 1e-9);
    CHECK(std::abs(det2) == doctest::Approx(std::abs(det)).epsilon(1e-9));
  }
}

TEST_CASE("squared Ising equals dimers") {
  SUBCASE("C3 critical and generic") {
    const GraphFile g = make_cycle(3);
    const Report r = verify_squared_ising(g.map, prepare(g));
    CHECK(r.checks.size() == 4);
    CHECK(r.all_pass());
  }
  SUBCASE("C4 with J = 1") {
    const GraphFile g = make_cycle(4);
    const QuadriTiling gq = quadri_tiling(g.map);
    const std::vector<double> J(4, 1.0);
    const double z = ising_Z(g.map, J);
    const cd zd = dimer_Z(gq.g.map, dimer_weights(J, gq));
    CHECK(relative_error(z * z, 16 * std::pow(std::cosh(2.0), 4) * zd) <= 1e-9);
  }
  SUBCASE("grid and wheel") {
    for (const GraphFile& g : {make_grid(3, 3), make_wheel(5)}) {
      const Report r = verify_squared_ising(g.map, prepare(g));
      CHECK(r.all_pass());
    }
  }
}

}  // TEST_SUITE
