#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "isotree/complex_matrix.h"
#include "isotree/planar_map.h"

namespace isotree {

struct EnumerationLimits {
  int max_spin_vertices = 24;
  std::uint64_t max_states = 10'000'000;
};

// Defaults, with max_states overridden by ISOTREE_ENUM_CAP and
// max_spin_vertices by ISOTREE_SPIN_CAP when set.
EnumerationLimits limits_from_env();

// Counts search nodes and throws TooLarge past the cap.
class StateCounter {
 public:
  explicit StateCounter(std::uint64_t cap) : cap_(cap) {}
  void tick();
  std::uint64_t count() const { return count_; }

 private:
  std::uint64_t cap_;
  std::uint64_t count_ = 0;
};

// ---- Ising ----

struct IsingGraph {
  int num_vertices = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<double> J;
};

IsingGraph ising_graph(const PlanarMap& m, const std::vector<double>& J);
double ising_Z(const IsingGraph& g, const EnumerationLimits& lim = {});
double ising_Z(const PlanarMap& m, const std::vector<double>& J, const EnumerationLimits& lim = {});

// Partition function with every boundary spin fixed to +1.
double plus_ising_Z(const PlanarMap& m, const std::vector<double>& J,
                    const EnumerationLimits& lim = {});

struct PlusReduction {
  IsingGraph reduced;  // vertex 0 is the merged boundary vertex u0
  double constant = 1;
};
PlusReduction plus_boundary_reduce(const PlanarMap& m, const std::vector<double>& J);

// ---- perfect matchings ----

// Edges are vertex pairs; the callback receives the chosen edge ids.
void for_each_perfect_matching(int num_vertices, const std::vector<std::pair<int, int>>& edges,
                               const std::function<void(const std::vector<int>&)>& visit,
                               const EnumerationLimits& lim = {});
cd dimer_Z(int num_vertices, const std::vector<std::pair<int, int>>& edges,
           const std::vector<cd>& weights, const EnumerationLimits& lim = {});
cd dimer_Z(const PlanarMap& m, const std::vector<cd>& weights, const EnumerationLimits& lim = {});

// ---- directed graphs and oriented spanning trees ----

struct Arc {
  int from = 0, to = 0;
  cd weight = 1.0;
};

struct WeightedDigraph {
  int num_vertices = 0;
  std::vector<Arc> arcs;
  std::vector<std::vector<int>> out_arcs() const;
  int add_arc(int from, int to, cd w) {
    arcs.push_back({from, to, w});
    return static_cast<int>(arcs.size()) - 1;
  }
};

// out_arc[v] is the arc leaving v, -1 at the root.
struct Ost {
  int root = -1;
  std::vector<int> out_arc;
};

bool is_ost(const WeightedDigraph& g, const Ost& t);
cd ost_weight(const WeightedDigraph& g, const Ost& t);
void for_each_ost(const WeightedDigraph& g, int root, const std::function<void(const Ost&)>& visit,
                  const EnumerationLimits& lim = {});
cd ost_Z(const WeightedDigraph& g, int root, const EnumerationLimits& lim = {});

// Off-diagonal (x, y) = weight of x -> y, diagonal = minus the total
// outgoing weight.
ComplexMatrix laplacian(const WeightedDigraph& g);

// Weighted count of OSTs rooted at root: det(-L) with row and column root
// removed, i.e. (-1)^(n-1) times the root minor of laplacian(g).
cd matrix_tree_Z(const WeightedDigraph& g, int root);

// ---- undirected spanning trees ----

void for_each_spanning_tree(int num_vertices, const std::vector<std::pair<int, int>>& edges,
                            const std::function<void(const std::vector<char>&)>& visit,
                            const EnumerationLimits& lim = {});
bool is_spanning_tree(int num_vertices, const std::vector<std::pair<int, int>>& edges,
                      const std::vector<char>& chosen);

// Edges of dual_map(m) (same ids) dual to the edges not in t.
std::vector<char> dual_tree(const PlanarMap& m, const std::vector<char>& t);

std::vector<std::pair<int, int>> edge_list(const PlanarMap& m);

}  // namespace isotree
