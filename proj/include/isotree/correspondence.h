#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "isotree/derived.h"
#include "isotree/isoradial.h"
#include "isotree/kasteleyn.h"
#include "isotree/oracles.h"
#include "isotree/report.h"

namespace isotree {

enum class Stage { G0, G };

// G0: vertex d for each dart d of G (white (d, head) merged with the black
// vertex (left_next(d), tail)), root r = 2E. Arcs 2d (crosses the dual edge)
// and 2d+1 (crosses the primal edge) leave d; arc 2E+j joins x_{d_j} to r.
// G: the black half of x_{d_j} becomes b_j = 2E+j, r = 2E+n; arc 2E+2j is
// b_j -> x_{d_j} and arc 2E+2j+1 is b_j -> r.
struct DirectedModel {
  WeightedDigraph graph;
  int root_r = -1;
  Stage stage = Stage::G0;
  std::vector<EdgeOrigin> origin;  // per arc
  int num_darts = 0;               // darts of G
  std::vector<int> boundary_darts;
  std::vector<int> boundary_index;  // dart of G -> j or -1
  std::vector<int> holder;          // dart c of G -> vertex holding black (c, tail) in G0
  std::vector<int> twin;            // alpha on darts of G
  std::vector<double> theta;        // per edge of G
  std::vector<double> theta_boundary;
  int num_vertices_g0() const { return num_darts + 1; }
};

DirectedModel build_G0(const QuadriTiling& gq, const KasteleynMatrix& k, const IsoradialData& iso);
DirectedModel build_G(const DirectedModel& g0);

int permutation_sign(const std::vector<int>& perm);
// Number of OSTs rooted at root, by the matrix-tree theorem with unit weights.
double unit_ost_count(const WeightedDigraph& g, int root);

// Laplacian minor of G0 at r with rows and columns ordered like K.
ComplexMatrix g0_minor_in_kasteleyn_order(const DirectedModel& g0, const PlanarMap& m);

std::vector<Ost> map_ost_A_to_D(const DirectedModel& g0, const DirectedModel& g, const Ost& t);
Ost map_ost_D_to_A(const DirectedModel& g0, const DirectedModel& g, const Ost& t);

// Exhaustive check of the G0 -> G map over every OST of G0. Images of one
// tree differ only at boundary vertices x_{d_j} whose G0 arc went to r; in G
// the only arc into such a vertex leaves b_j, which then points to r, so the
// choice there cannot close a cycle. Each tree therefore checks one image as
// an OST and its round trip, plus the weight sum over all its images in
// product form.
struct AToDSurvey {
  std::uint64_t trees_g0 = 0;
  double images = 0;        // sum over trees of 2^k
  double trees_g = 0;       // matrix-tree count
  bool entry_structure = true;
  bool images_valid = true;
  bool round_trip = true;
  double max_weight_error = 0;
  bool bijection() const { return entry_structure && images_valid && round_trip && images == trees_g; }
};
AToDSurvey survey_A_to_D(const DirectedModel& g0, const DirectedModel& g, const EnumerationLimits& lim = {});

struct DoubleTree {
  std::vector<char> edges;  // per edge of the extended double
  int root_s = -1;
};

// arc of G -> edge of the extended double crossing it.
std::vector<int> arc_to_double_edge(const DirectedModel& g, const ExtendedDouble& dd);

DoubleTree dual_in_double(const DirectedModel& g, const ExtendedDouble& dd, const Ost& t);
Ost double_tree_to_ost(const DirectedModel& g, const ExtendedDouble& dd, const DoubleTree& dt);

struct LocalRuleReport {
  bool pass = true;
  std::vector<int> violations;  // white vertices
};
// Each white vertex w of edge eps of G_ext and each dart c of eps: exactly
// one of {half_primal[c], half_dual[c]} is present (the split edge is the
// only member of its pair, so it is forced).
LocalRuleReport check_local_rules(const ExtendedDouble& dd, const std::vector<char>& edges);

bool is_double_spanning_tree(const ExtendedDouble& dd, const std::vector<char>& edges);

// Black vertices other than s send their edge towards s.
std::vector<int> tree_to_matching(const ExtendedDouble& dd, const DoubleTree& dt);
bool is_matching_minus_s(const ExtendedDouble& dd, const std::vector<int>& matching);

struct CompatClass {
  std::vector<int> matching;
  double size = 0;                 // number of local-rule configurations
  bool enumerated = false;         // members listed explicitly
  std::vector<std::vector<char>> members;
  std::uint64_t cycle_rejections = 0;
  bool acyclic = true;             // from the explicit list, or the union digraph test
  cd weight = 0;                   // sum of rho* over members
  cd closed_form = 0;
};

// Union digraph test: every configuration containing M is a tree iff the
// digraph b -> M(b), w -> (allowed second neighbours of w) has no cycle.
bool class_union_is_acyclic(const ExtendedDouble& dd, const std::vector<int>& matching);

// Every configuration of the class determines an OST of G (the arcs whose
// crossing edges are absent) iff the union of those possible arcs is acyclic.
bool class_ost_union_is_acyclic(const DirectedModel& g, const ExtendedDouble& dd,
                                const std::vector<int>& matching);

CompatClass matching_to_trees(const ExtendedDouble& dd, const DoubleWeights& w,
                              const IsoradialData& iso, const std::vector<int>& matching,
                              bool keep_members, const EnumerationLimits& lim = {});

cd class_prefactor(const IsoradialData& iso);

struct ParityReport {
  int length = 0;
  int n1 = 0, n2 = 0, n3 = 0, n4 = 0, n5 = 0;
  int interior = 0;
  bool odd_interior = false;
  bool local_rules = false;   // both cycle edges at every white lie in different pairs
  bool euler_ok = false;      // V - E + F = 1 on the closed disc
  bool general_identity = false;  // n5 - n4 = 1 + (1/2) sum_w (k_w - 1)
  bool s_inside = false;
  int sum_k_minus_one = 0;
};
// cycle: vertex sequence of an alternating cycle (closed implicitly).
ParityReport parity_check(const ExtendedDouble& dd, const std::vector<int>& cycle);

// Cycles of the symmetric difference of two matchings, as vertex sequences.
std::vector<std::vector<int>> superposition_cycles(const ExtendedDouble& dd,
                                                   const std::vector<int>& m1,
                                                   const std::vector<int>& m2);

// Oriented pair of spanning trees, as dart sets of G_ext and G*_ext.
struct TreePair {
  std::vector<int> primal;
  std::vector<int> dual;
};
TreePair kpw_split(const ExtendedDouble& dd, const std::vector<int>& matching);
bool is_tree_pair(const ExtendedDouble& dd, const TreePair& p);
cd tree_pair_weight(const TauWeights& tau, const TreePair& p);

// Every spanning tree of G_ext with its dual, oriented towards r and s.
void for_each_tree_pair(const ExtendedDouble& dd, const std::function<void(const TreePair&)>& visit,
                        const EnumerationLimits& lim = {});

std::vector<std::vector<int>> all_matchings_minus_s(const ExtendedDouble& dd,
                                                    const EnumerationLimits& lim = {});

struct MainOptions {
  int root_s = 0;
  double tol = kEpsNum;
  EnumerationLimits lim;
};
Report verify_main_theorem(const PlanarMap& m, const IsoradialData& iso, const MainOptions& opt = {});

}  // namespace isotree
