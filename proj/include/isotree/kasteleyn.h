#pragma once

#include <vector>

#include "isotree/complex_matrix.h"
#include "isotree/derived.h"
#include "isotree/isoradial.h"
#include "isotree/oracles.h"
#include "isotree/report.h"

namespace isotree {

using Phasing = std::vector<double>;  // per edge of G^Q

// Phases on G^Q with white vertices (d, head): 0 across dual edges, pi/2
// across primal edges, 3pi/2 - theta on external edges, minus theta_boundary
// at outer corners.
Phasing assign_phases(const QuadriTiling& gq, const IsoradialData& iso);

// Boundary w1 b1 ... wk bk walked clockwise, i.e. against the rotation.
cd curvature(const QuadriTiling& gq, const Phasing& phi, int face);

struct FlatReport {
  std::vector<int> faces;
  std::vector<double> deviation;  // |C(F) - 1|
  double max_deviation = 0;
  bool pass = true;
};
FlatReport check_flat(const QuadriTiling& gq, const Phasing& phi, double tol = kEpsNum);

// Rows: white (d, head) at index d. Columns: black (d, tail) at index d.
struct KasteleynMatrix {
  ComplexMatrix matrix;
  bool flat = true;
};
KasteleynMatrix build_kasteleyn(const QuadriTiling& gq, const EdgeWeights& nu, const Phasing& phi);

struct DeterminantReport {
  cd det = 0;
  double abs = 0;
  double arg = 0;
  double imag_ratio = 0;  // |Im det| / |det|
};
DeterminantReport dimer_Z_det(const KasteleynMatrix& k);

// Sum of K over the three neighbours of each white vertex, with the value the
// phasing predicts: 0 inside, -i e^{-i theta}(e^{-i theta_b} - 1) at outer
// corners.
struct WhiteSum {
  int white_row = 0;
  bool boundary = false;
  cd sum = 0;
  cd expected = 0;
};
std::vector<WhiteSum> white_neighbour_sums(const QuadriTiling& gq, const KasteleynMatrix& k,
                                           const IsoradialData& iso);

// Z_Ising^2 = 2^|V| prod cosh(2J) Z_dimer(G^Q, nu) at critical J and at
// three generic coupling vectors, both sides by enumeration.
Report verify_squared_ising(const PlanarMap& m, const IsoradialData& iso,
                            const EnumerationLimits& lim = {}, double tol = kEpsNum);

std::vector<std::vector<double>> generic_couplings(int num_edges);

}  // namespace isotree
