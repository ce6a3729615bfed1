#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "isotree/complex_matrix.h"
#include "isotree/derived.h"
#include "isotree/planar_map.h"

namespace isotree {

inline constexpr double kEpsGeom = 1e-9;
inline constexpr double kEpsNum = 1e-9;

using Point = std::pair<double, double>;
using EdgeWeights = std::vector<cd>;

struct IsoradialData {
  std::vector<Point> coords;
  std::vector<double> theta;             // per edge of G
  std::vector<int> boundary_darts;       // d_j, clockwise
  std::vector<double> theta_boundary;    // per j, from the closure identity
  std::vector<double> theta_boundary_geometric;  // per j, in [0, pi)
  std::vector<Point> circumcenter;       // per face (outer face unused)
  bool regular = true;
  double max_radius_error = 0;
};

// theta_exact, when given, replaces the geometric angles after checking they
// agree to kEpsGeom.
IsoradialData validate_isoradial(const PlanarMap& m, const std::vector<Point>& coords,
                                 const std::optional<std::vector<double>>& theta_exact = {});

// theta_boundary indexed like ext.boundary_vertices, with the geometric
// value of the extended half-rhombus angle as a cross-check.
struct BoundaryAngles {
  std::vector<double> closure;
  std::vector<double> geometric;
  double max_mismatch = 0;  // max |e^{2i closure} - e^{2i geometric}|
};
BoundaryAngles boundary_angles(const PlanarMap& m, const IsoradialData& iso);

std::vector<double> critical_couplings(const IsoradialData& iso);
double critical_coupling(double theta);

// nu per edge of G^Q.
EdgeWeights dimer_weights(const std::vector<double>& J, const QuadriTiling& gq);

struct TauWeights {
  std::vector<cd> primal;  // per dart of G_ext
  std::vector<cd> dual;    // per dart of G*_ext (same ids)
};
TauWeights tree_weights_tau(const IsoradialData& iso, const ExtendedPair& ext);

struct DoubleWeights {
  EdgeWeights rho_star;  // per edge of the extended double
  EdgeWeights tau2;
};
DoubleWeights double_weights(const IsoradialData& iso, const ExtendedDouble& dd);

}  // namespace isotree
