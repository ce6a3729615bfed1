#include "isotree/kasteleyn.h"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "isotree/error.h"

namespace isotree {

namespace {
constexpr double kPi = std::numbers::pi;
const cd kI(0.0, 1.0);
}  // namespace

Phasing assign_phases(const QuadriTiling& gq, const IsoradialData& iso) {
  Phasing phi;
  for (const EdgeOrigin& o : gq.g.origin) {
    switch (o.kind) {
      case OriginKind::CrossesDual: phi.push_back(0.0); break;
      case OriginKind::CrossesPrimal: phi.push_back(kPi / 2); break;
      case OriginKind::External: phi.push_back(1.5 * kPi - iso.theta.at(o.source_edge)); break;
      case OriginKind::ExternalBoundary:
        phi.push_back(1.5 * kPi - iso.theta.at(o.source_edge) -
                      iso.theta_boundary.at(o.boundary_index));
        break;
      default: throw Error(ErrorCode::MissingProvenance, "G^Q edge without quadri-tiling origin");
    }
  }
  return phi;
}

cd curvature(const QuadriTiling& gq, const Phasing& phi, int face) {
  const PlanarMap& g = gq.g.map;
  if (face == g.outer_face()) throw Error(ErrorCode::OuterFace, "curvature of the outer face");
  cd c = 1.0;
  const auto& darts = g.face_darts(face);
  for (int x : darts) {
    const cd u = std::exp(kI * phi[g.edge(x)]);
    // Even darts leave the white end of their edge.
    c = (x % 2 == 0) ? c * u : c / u;
  }
  const int k = static_cast<int>(darts.size()) / 2;
  return (k % 2 == 1) ? c : -c;
}

FlatReport check_flat(const QuadriTiling& gq, const Phasing& phi, double tol) {
  FlatReport r;
  for (int f = 0; f < gq.g.map.num_faces(); ++f) {
    if (f == gq.g.map.outer_face()) continue;
    const double dev = std::abs(curvature(gq, phi, f) - 1.0);
    r.faces.push_back(f);
    r.deviation.push_back(dev);
    r.max_deviation = std::max(r.max_deviation, dev);
    if (dev > tol) r.pass = false;
  }
  return r;
}

KasteleynMatrix build_kasteleyn(const QuadriTiling& gq, const EdgeWeights& nu, const Phasing& phi) {
  const PlanarMap& g = gq.g.map;
  const int n = g.num_vertices() / 2;
  KasteleynMatrix k;
  k.matrix = ComplexMatrix(n, n);
  for (int d = 0; d < n; ++d) {
    k.matrix.row_labels.push_back("w" + std::to_string(d));
    k.matrix.col_labels.push_back("b" + std::to_string(d));
  }
  for (int e = 0; e < g.num_edges(); ++e) {
    const int d = g.edge_dart(e);
    const int w = g.tail(d) / 2, b = g.head(d) / 2;
    k.matrix(w, b) += nu[e] * std::exp(kI * phi[e]);
  }
  k.flat = check_flat(gq, phi).pass;
  return k;
}

DeterminantReport dimer_Z_det(const KasteleynMatrix& k) {
  DeterminantReport r;
  r.det = complex_det(k.matrix);
  r.abs = std::abs(r.det);
  r.arg = std::arg(r.det);
  r.imag_ratio = r.abs > 0 ? std::abs(r.det.imag()) / r.abs : 0.0;
  return r;
}

std::vector<WhiteSum> white_neighbour_sums(const QuadriTiling& gq, const KasteleynMatrix& k,
                                           const IsoradialData& iso) {
  std::vector<WhiteSum> out;
  for (int d = 0; d < k.matrix.rows(); ++d) {
    WhiteSum s;
    s.white_row = d;
    for (int c = 0; c < k.matrix.cols(); ++c) s.sum += k.matrix(d, c);
    const EdgeOrigin& o = gq.g.origin[QuadriTiling::ext(d)];
    s.boundary = o.kind == OriginKind::ExternalBoundary;
    if (s.boundary) {
      const double th = iso.theta[o.source_edge], tb = iso.theta_boundary[o.boundary_index];
      s.expected = -kI * std::exp(-kI * th) * (std::exp(-kI * tb) - 1.0);
    }
    out.push_back(s);
  }
  return out;
}

std::vector<std::vector<double>> generic_couplings(int num_edges) {
  std::vector<std::vector<double>> out(3, std::vector<double>(num_edges));
  std::mt19937 rng(20171);
  std::uniform_real_distribution<double> dist(0.1, 1.2);
  for (int e = 0; e < num_edges; ++e) {
    out[0][e] = 1.0;
    out[1][e] = 0.3 + 0.1 * (e % 5);
    out[2][e] = dist(rng);
  }
  return out;
}

Report verify_squared_ising(const PlanarMap& m, const IsoradialData& iso,
                            const EnumerationLimits& lim, double tol) {
  Report rep;
  rep.subject = "squared Ising vs dimers on G^Q";
  const QuadriTiling gq = quadri_tiling(m);
  std::vector<std::pair<std::string, std::vector<double>>> cases;
  cases.emplace_back("critical", critical_couplings(iso));
  const auto gen = generic_couplings(m.num_edges());
  for (size_t i = 0; i < gen.size(); ++i) cases.emplace_back("generic-" + std::to_string(i + 1), gen[i]);
  for (const auto& [label, J] : cases) {
    const double z = ising_Z(m, J, lim);
    double rhs = std::ldexp(1.0, m.num_vertices());
    for (double j : J) rhs *= std::cosh(2 * j);
    const cd zd = dimer_Z(gq.g.map, dimer_weights(J, gq), lim);
    rep.relative("Z_Ising^2 = 2^V prod cosh(2J) Z_dimer(G^Q) [" + label + "]", z * z, rhs * zd, tol);
  }
  return rep;
}

}  // namespace isotree
