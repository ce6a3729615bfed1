#include "isotree/oracles.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <deque>
#include <numeric>
#include <string>

#include "isotree/error.h"

namespace isotree {

EnumerationLimits limits_from_env() {
  EnumerationLimits lim;
  if (const char* s = std::getenv("ISOTREE_ENUM_CAP")) lim.max_states = std::strtoull(s, nullptr, 10);
  if (const char* s = std::getenv("ISOTREE_SPIN_CAP")) lim.max_spin_vertices = std::atoi(s);
  return lim;
}

void StateCounter::tick() {
  if (++count_ > cap_)
    throw Error(ErrorCode::TooLarge, "enumeration exceeded " + std::to_string(cap_) + " states");
}

std::vector<std::pair<int, int>> edge_list(const PlanarMap& m) {
  std::vector<std::pair<int, int>> out;
  for (int e = 0; e < m.num_edges(); ++e) {
    const int d = m.edge_dart(e);
    out.emplace_back(m.tail(d), m.head(d));
  }
  return out;
}

IsingGraph ising_graph(const PlanarMap& m, const std::vector<double>& J) {
  if (static_cast<int>(J.size()) != m.num_edges())
    throw Error(ErrorCode::BadInput, "one coupling per edge required");
  return {m.num_vertices(), edge_list(m), J};
}

namespace {

// Sum over spins of the free vertices; fixed[v] is 0 (free) or +-1.
double spin_sum(const IsingGraph& g, const std::vector<int>& fixed, const EnumerationLimits& lim) {
  std::vector<int> free;
  for (int v = 0; v < g.num_vertices; ++v)
    if (fixed[v] == 0) free.push_back(v);
  if (static_cast<int>(free.size()) > lim.max_spin_vertices)
    throw Error(ErrorCode::TooLarge, std::to_string(free.size()) + " free spins exceed the cap");
  std::vector<int> spin(fixed);
  double z = 0;
  const std::uint64_t count = std::uint64_t{1} << free.size();
  for (std::uint64_t mask = 0; mask < count; ++mask) {
    for (size_t i = 0; i < free.size(); ++i) spin[free[i]] = (mask >> i) & 1 ? -1 : 1;
    double energy = 0;
    for (size_t k = 0; k < g.edges.size(); ++k)
      energy += g.J[k] * spin[g.edges[k].first] * spin[g.edges[k].second];
    z += std::exp(energy);
  }
  return z;
}

}  // namespace

double ising_Z(const IsingGraph& g, const EnumerationLimits& lim) {
  return spin_sum(g, std::vector<int>(g.num_vertices, 0), lim);
}

double ising_Z(const PlanarMap& m, const std::vector<double>& J, const EnumerationLimits& lim) {
  return ising_Z(ising_graph(m, J), lim);
}

double plus_ising_Z(const PlanarMap& m, const std::vector<double>& J, const EnumerationLimits& lim) {
  std::vector<int> fixed(m.num_vertices(), 0);
  for (int v = 0; v < m.num_vertices(); ++v)
    if (m.is_boundary_vertex(v)) fixed[v] = 1;
  return spin_sum(ising_graph(m, J), fixed, lim);
}

PlusReduction plus_boundary_reduce(const PlanarMap& m, const std::vector<double>& J) {
  const IsingGraph g = ising_graph(m, J);
  std::vector<int> id(m.num_vertices());
  int next = 1;
  for (int v = 0; v < m.num_vertices(); ++v) id[v] = m.is_boundary_vertex(v) ? 0 : next++;
  PlusReduction out;
  out.reduced.num_vertices = next;
  double log_c = std::log(0.5);
  for (size_t k = 0; k < g.edges.size(); ++k) {
    const int a = id[g.edges[k].first], b = id[g.edges[k].second];
    if (a == 0 && b == 0) {
      log_c += g.J[k];
    } else {
      out.reduced.edges.emplace_back(a, b);
      out.reduced.J.push_back(g.J[k]);
    }
  }
  out.constant = std::exp(log_c);
  return out;
}

void for_each_perfect_matching(int n, const std::vector<std::pair<int, int>>& edges,
                               const std::function<void(const std::vector<int>&)>& visit,
                               const EnumerationLimits& lim) {
  if (n % 2 != 0) return;
  std::vector<std::vector<std::pair<int, int>>> adj(n);
  for (int k = 0; k < static_cast<int>(edges.size()); ++k) {
    adj[edges[k].first].emplace_back(edges[k].second, k);
    adj[edges[k].second].emplace_back(edges[k].first, k);
  }
  std::vector<char> matched(n, 0);
  std::vector<int> chosen;
  StateCounter counter(lim.max_states);
  std::function<void(int)> rec = [&](int from) {
    counter.tick();
    int v = from;
    while (v < n && matched[v]) ++v;
    if (v == n) {
      visit(chosen);
      return;
    }
    matched[v] = 1;
    for (const auto& [u, k] : adj[v]) {
      if (matched[u]) continue;
      matched[u] = 1;
      chosen.push_back(k);
      rec(v + 1);
      chosen.pop_back();
      matched[u] = 0;
    }
    matched[v] = 0;
  };
  rec(0);
}

cd dimer_Z(int n, const std::vector<std::pair<int, int>>& edges, const std::vector<cd>& w,
           const EnumerationLimits& lim) {
  if (w.size() != edges.size()) throw Error(ErrorCode::BadInput, "one weight per edge required");
  cd z = 0;
  for_each_perfect_matching(
      n, edges,
      [&](const std::vector<int>& m) {
        cd p = 1;
        for (int k : m) p *= w[k];
        z += p;
      },
      lim);
  return z;
}

cd dimer_Z(const PlanarMap& m, const std::vector<cd>& w, const EnumerationLimits& lim) {
  return dimer_Z(m.num_vertices(), edge_list(m), w, lim);
}

std::vector<std::vector<int>> WeightedDigraph::out_arcs() const {
  std::vector<std::vector<int>> out(num_vertices);
  for (int a = 0; a < static_cast<int>(arcs.size()); ++a) out[arcs[a].from].push_back(a);
  return out;
}

bool is_ost(const WeightedDigraph& g, const Ost& t) {
  if (t.root < 0 || t.root >= g.num_vertices) return false;
  if (static_cast<int>(t.out_arc.size()) != g.num_vertices) return false;
  for (int v = 0; v < g.num_vertices; ++v) {
    const int a = t.out_arc[v];
    if (v == t.root) {
      if (a != -1) return false;
      continue;
    }
    if (a < 0 || a >= static_cast<int>(g.arcs.size()) || g.arcs[a].from != v) return false;
  }
  // Every vertex must reach the root.
  // state: 0 unseen, 1 reaches the root, v + 2 on the walk started at v.
  std::vector<int> state(g.num_vertices, 0);
  state[t.root] = 1;
  for (int v = 0; v < g.num_vertices; ++v) {
    int x = v;
    while (state[x] == 0) {
      state[x] = v + 2;
      x = g.arcs[t.out_arc[x]].to;
    }
    if (state[x] == v + 2) return false;
    for (x = v; state[x] == v + 2; x = g.arcs[t.out_arc[x]].to) state[x] = 1;
  }
  return true;
}

cd ost_weight(const WeightedDigraph& g, const Ost& t) {
  cd w = 1;
  for (int v = 0; v < g.num_vertices; ++v)
    if (t.out_arc[v] >= 0) w *= g.arcs[t.out_arc[v]].weight;
  return w;
}

void for_each_ost(const WeightedDigraph& g, int root, const std::function<void(const Ost&)>& visit,
                  const EnumerationLimits& lim) {
  const int n = g.num_vertices;
  const auto out = g.out_arcs();
  // Assign vertices in order of distance to the root.
  std::vector<std::vector<int>> in(n);
  for (int a = 0; a < static_cast<int>(g.arcs.size()); ++a) in[g.arcs[a].to].push_back(a);
  std::vector<int> order;
  std::vector<char> seen(n, 0);
  std::deque<int> queue{root};
  seen[root] = 1;
  while (!queue.empty()) {
    const int v = queue.front();
    queue.pop_front();
    if (v != root) order.push_back(v);
    for (int a : in[v])
      if (!seen[g.arcs[a].from]) {
        seen[g.arcs[a].from] = 1;
        queue.push_back(g.arcs[a].from);
      }
  }
  if (static_cast<int>(order.size()) != n - 1) return;  // some vertex cannot reach the root
  Ost t{root, std::vector<int>(n, -1)};
  StateCounter counter(lim.max_states);
  std::function<void(size_t)> rec = [&](size_t i) {
    counter.tick();
    if (i == order.size()) {
      visit(t);
      return;
    }
    const int v = order[i];
    for (int a : out[v]) {
      int x = g.arcs[a].to;
      while (x != root && x != v && t.out_arc[x] >= 0) x = g.arcs[t.out_arc[x]].to;
      if (x == v) continue;
      t.out_arc[v] = a;
      rec(i + 1);
      t.out_arc[v] = -1;
    }
  };
  rec(0);
}

cd ost_Z(const WeightedDigraph& g, int root, const EnumerationLimits& lim) {
  cd z = 0;
  for_each_ost(g, root, [&](const Ost& t) { z += ost_weight(g, t); }, lim);
  return z;
}

ComplexMatrix laplacian(const WeightedDigraph& g) {
  ComplexMatrix L(g.num_vertices, g.num_vertices);
  for (const Arc& a : g.arcs) {
    if (a.from == a.to) continue;
    L(a.from, a.to) += a.weight;
    L(a.from, a.from) -= a.weight;
  }
  for (int v = 0; v < g.num_vertices; ++v) {
    L.row_labels.push_back(std::to_string(v));
    L.col_labels.push_back(std::to_string(v));
  }
  return L;
}

cd matrix_tree_Z(const WeightedDigraph& g, int root) {
  ComplexMatrix m = laplacian(g).minor(root, root);
  for (int i = 0; i < m.rows(); ++i)
    for (int j = 0; j < m.cols(); ++j) m(i, j) = -m(i, j);
  return complex_det(m);
}

namespace {

struct Dsu {
  std::vector<int> parent, size;
  std::vector<std::pair<int, int>> history;
  explicit Dsu(int n) : parent(n), size(n, 1) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) const {
    while (parent[x] != x) x = parent[x];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (size[a] < size[b]) std::swap(a, b);
    parent[b] = a;
    size[a] += size[b];
    history.emplace_back(a, b);
    return true;
  }
  void undo() {
    const auto [a, b] = history.back();
    history.pop_back();
    parent[b] = b;
    size[a] -= size[b];
  }
};

}  // namespace

bool is_spanning_tree(int n, const std::vector<std::pair<int, int>>& edges,
                      const std::vector<char>& chosen) {
  Dsu dsu(n);
  int count = 0;
  for (size_t k = 0; k < edges.size(); ++k) {
    if (!chosen[k]) continue;
    if (!dsu.unite(edges[k].first, edges[k].second)) return false;
    ++count;
  }
  return count == n - 1;
}

void for_each_spanning_tree(int n, const std::vector<std::pair<int, int>>& edges,
                            const std::function<void(const std::vector<char>&)>& visit,
                            const EnumerationLimits& lim) {
  const int m = static_cast<int>(edges.size());
  std::vector<char> chosen(m, 0);
  Dsu dsu(n);
  StateCounter counter(lim.max_states);
  int used = 0;
  auto can_finish = [&](int from) {
    Dsu probe = dsu;
    int comps = n - used;
    for (int k = from; k < m && comps > 1; ++k)
      if (probe.unite(edges[k].first, edges[k].second)) --comps;
    return comps == 1;
  };
  std::function<void(int)> rec = [&](int k) {
    counter.tick();
    if (used == n - 1) {
      visit(chosen);
      return;
    }
    if (k == m) return;
    if (dsu.unite(edges[k].first, edges[k].second)) {
      chosen[k] = 1;
      ++used;
      rec(k + 1);
      --used;
      chosen[k] = 0;
      dsu.undo();
    }
    if (can_finish(k + 1)) rec(k + 1);
  };
  if (n == 1) {
    visit(chosen);
    return;
  }
  if (can_finish(0)) rec(0);
}

std::vector<char> dual_tree(const PlanarMap& m, const std::vector<char>& t) {
  if (static_cast<int>(t.size()) != m.num_edges() ||
      !is_spanning_tree(m.num_vertices(), edge_list(m), t))
    throw Error(ErrorCode::NotATree, "edge subset is not a spanning tree");
  std::vector<char> out(m.num_edges());
  for (int e = 0; e < m.num_edges(); ++e) out[e] = !t[e];
  return out;
}

}  // namespace isotree
