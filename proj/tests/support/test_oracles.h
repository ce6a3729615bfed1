#pragma once

// Independent oracles used only by the tests.

#include <algorithm>
#include <complex>
#include <deque>
#include <vector>

#include "isotree/complex_matrix.h"
#include "isotree/planar_map.h"

namespace testsupport {

using isotree::cd;

// Breadth-first relabelling of the darts from an anchor, following sigma and
// alpha. Two maps are isomorphic (orientation and outer face preserved) iff
// their minimum codes agree.
inline std::vector<int> code_from(const isotree::PlanarMap& m, int anchor) {
  const int nd = m.num_darts();
  std::vector<int> label(nd, -1), order;
  std::deque<int> queue{anchor};
  label[anchor] = 0;
  order.push_back(anchor);
  while (!queue.empty()) {
    const int x = queue.front();
    queue.pop_front();
    for (int y : {m.sigma(x), m.alpha(x)}) {
      if (label[y] >= 0) continue;
      label[y] = static_cast<int>(order.size());
      order.push_back(y);
      queue.push_back(y);
    }
  }
  std::vector<int> code{m.num_vertices(), nd};
  for (int x : order) {
    code.push_back(label[m.sigma(x)]);
    code.push_back(label[m.alpha(x)]);
  }
  int outer = nd;
  for (int x : m.face_darts(m.outer_face())) outer = std::min(outer, label[x]);
  code.push_back(outer);
  return code;
}

inline std::vector<int> canonical_code(const isotree::PlanarMap& m) {
  std::vector<int> best;
  for (int d = 0; d < m.num_darts(); ++d) {
    auto c = code_from(m, d);
    if (best.empty() || c < best) best = std::move(c);
  }
  return best;
}

inline bool isomorphic(const isotree::PlanarMap& a, const isotree::PlanarMap& b) {
  return canonical_code(a) == canonical_code(b);
}

// Laplace expansion along the first row.
inline cd cofactor_det(const std::vector<std::vector<cd>>& a) {
  const size_t n = a.size();
  if (n == 0) return 1.0;
  if (n == 1) return a[0][0];
  cd det = 0;
  for (size_t j = 0; j < n; ++j) {
    if (a[0][j] == cd(0)) continue;
    std::vector<std::vector<cd>> minor;
    for (size_t i = 1; i < n; ++i) {
      std::vector<cd> row;
      for (size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(row);
    }
    det += (j % 2 ? -1.0 : 1.0) * a[0][j] * cofactor_det(minor);
  }
  return det;
}

inline cd cofactor_det(const isotree::ComplexMatrix& m) {
  std::vector<std::vector<cd>> a(m.rows(), std::vector<cd>(m.cols()));
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) a[i][j] = m(i, j);
  return cofactor_det(a);
}

// Permanent by expansion along the first row.
inline long long permanent(const std::vector<std::vector<int>>& a) {
  const size_t n = a.size();
  if (n == 0) return 1;
  long long p = 0;
  for (size_t j = 0; j < n; ++j) {
    if (!a[0][j]) continue;
    std::vector<std::vector<int>> minor;
    for (size_t i = 1; i < n; ++i) {
      std::vector<int> row;
      for (size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(row);
    }
    p += a[0][j] * permanent(minor);
  }
  return p;
}

}  // namespace testsupport
