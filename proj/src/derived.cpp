#include "isotree/derived.h"

#include <algorithm>

#include "isotree/error.h"

namespace isotree {

const char* vertex_class_name(VertexClass c) {
  switch (c) {
    case VertexClass::Primal: return "primal";
    case VertexClass::Dual: return "dual";
    case VertexClass::White: return "white";
    case VertexClass::Black: return "black";
    case VertexClass::BulletBlack: return "bullet-black";
    case VertexClass::LozengeBlack: return "lozenge-black";
    case VertexClass::RootR: return "root-r";
    case VertexClass::RootS: return "root-s";
  }
  return "?";
}

const char* origin_kind_name(OriginKind k) {
  switch (k) {
    case OriginKind::Corner: return "corner";
    case OriginKind::HalfRhombus: return "half-rhombus";
    case OriginKind::CrossesPrimal: return "crosses-primal";
    case OriginKind::CrossesDual: return "crosses-dual";
    case OriginKind::External: return "external";
    case OriginKind::ExternalBoundary: return "external-boundary";
    case OriginKind::StarArc: return "star-arc";
    case OriginKind::PrimArc: return "prim-arc";
    case OriginKind::RootArc: return "root-arc";
    case OriginKind::SplitArc: return "split-arc";
    case OriginKind::PrimalEdge: return "primal-edge";
    case OriginKind::RootEdge: return "root-edge";
    case OriginKind::DualEdge: return "dual-edge";
    case OriginKind::BoundaryDualEdge: return "boundary-dual-edge";
    case OriginKind::HalfPrimal: return "half-primal";
    case OriginKind::HalfDual: return "half-dual";
    case OriginKind::HalfRootEdge: return "half-root-edge";
    case OriginKind::HalfBoundarySplit: return "half-boundary-split";
    case OriginKind::HalfBoundaryOther: return "half-boundary-other";
  }
  return "?";
}

namespace {

// Edge k gives darts 2k (first -> second) and 2k+1; rot[v] lists darts
// leaving v counterclockwise.
struct MapBuilder {
  int nv = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> rot;

  explicit MapBuilder(int n) : nv(n), rot(n) {}
  int add_edge(int u, int v) {
    edges.emplace_back(u, v);
    return static_cast<int>(edges.size()) - 1;
  }
  PlanarMap build_probe() const { return build(0); }
  PlanarMap build(int outer) const {
    const int n = 2 * static_cast<int>(edges.size());
    std::vector<int> alpha(n), sigma(n, -1), tail(n);
    for (int k = 0; k < static_cast<int>(edges.size()); ++k) {
      alpha[2 * k] = 2 * k + 1;
      alpha[2 * k + 1] = 2 * k;
      tail[2 * k] = edges[k].first;
      tail[2 * k + 1] = edges[k].second;
    }
    for (const auto& r : rot)
      for (size_t i = 0; i < r.size(); ++i) sigma[r[i]] = r[(i + 1) % r.size()];
    return PlanarMap(nv, std::move(alpha), std::move(sigma), std::move(tail), outer);
  }
  PlanarMap build_with_largest_outer() const {
    PlanarMap probe = build_probe();
    int best = 0;
    for (int f = 1; f < probe.num_faces(); ++f)
      if (probe.face_darts(f).size() > probe.face_darts(best).size()) best = f;
    return build(best);
  }
};

}  // namespace

DerivedMap quad_graph(const PlanarMap& m, QuadVariant variant) {
  const int nv = m.num_vertices();
  const int outer = m.outer_face();
  std::vector<int> fvert(m.num_faces(), -1);
  int next = nv;
  for (int f = 0; f < m.num_faces(); ++f)
    if (variant == QuadVariant::Full || f != outer) fvert[f] = next++;
  const auto bd = m.boundary_darts();
  const int n = static_cast<int>(bd.size());
  const int first_split = next;
  if (variant == QuadVariant::Extended) next += n;

  MapBuilder b(next);
  DerivedMap out;
  std::vector<int> corner_edge(m.num_darts(), -1);
  for (int d = 0; d < m.num_darts(); ++d) {
    const int f = m.left_face(d);
    if (fvert[f] < 0) continue;
    corner_edge[d] = b.add_edge(m.tail(d), fvert[f]);
    out.origin.push_back({OriginKind::Corner, -1, d, -1});
  }
  // Extended: half-rhombus edges p_{j-1} - o_j (lo) and p_j - o_j (hi).
  std::vector<int> lo(n), hi(n), index_of(m.num_darts(), -1);
  if (variant == QuadVariant::Extended) {
    for (int j = 0; j < n; ++j) {
      index_of[bd[j]] = j;
      lo[j] = b.add_edge(m.tail(bd[j]), first_split + j);
      out.origin.push_back({OriginKind::HalfRhombus, m.edge(bd[j]), bd[j], j});
      hi[j] = b.add_edge(m.head(bd[j]), first_split + j);
      out.origin.push_back({OriginKind::HalfRhombus, m.edge(bd[j]), bd[j], j});
    }
  }
  for (int v = 0; v < nv; ++v) {
    for (int d : m.darts_at(v)) {
      if (corner_edge[d] >= 0) {
        b.rot[v].push_back(2 * corner_edge[d]);
      } else if (variant == QuadVariant::Extended) {
        // Outer corner at p_j = tail(d_{j+1}): o_{j+1} then o_j.
        const int j1 = index_of[d];
        const int j = (j1 + n - 1) % n;
        b.rot[v].push_back(2 * lo[j1]);
        b.rot[v].push_back(2 * hi[j]);
      }
    }
  }
  for (int f = 0; f < m.num_faces(); ++f) {
    if (fvert[f] < 0) continue;
    std::vector<int> darts;
    for (int d : m.face_darts(f)) darts.push_back(m.alpha(d));
    // Darts with f on their left, counterclockwise around f.
    const int start = darts.front();
    int d = start;
    do {
      b.rot[fvert[f]].push_back(2 * corner_edge[d] + 1);
      d = m.left_next(d);
    } while (d != start);
  }
  if (variant == QuadVariant::Extended)
    for (int j = 0; j < n; ++j) b.rot[first_split + j] = {2 * lo[j] + 1, 2 * hi[j] + 1};

  out.vclass.assign(next, VertexClass::Dual);
  for (int v = 0; v < nv; ++v) out.vclass[v] = VertexClass::Primal;
  if (variant == QuadVariant::Full) {
    PlanarMap probe = b.build_probe();
    // Any face works on the sphere; use the rhombus of the first boundary edge.
    out.map = b.build(bd.empty() ? 0 : probe.face(2 * corner_edge[bd.front()]));
  } else {
    out.map = b.build_with_largest_outer();
  }
  return out;
}

QuadriTiling quadri_tiling(const PlanarMap& m) {
  const int nd = m.num_darts();
  QuadriTiling q;
  q.boundary_darts = m.boundary_darts();
  std::vector<int> bindex(nd, -1);
  for (int j = 0; j < static_cast<int>(q.boundary_darts.size()); ++j)
    bindex[q.boundary_darts[j]] = j;

  const int ne = 3 * nd;
  std::vector<int> alpha(2 * ne), sigma(2 * ne), tail(2 * ne);
  q.g.origin.resize(ne);
  for (int d = 0; d < nd; ++d) {
    const int e = m.edge(d);
    const int ends[3][2] = {{QuadriTiling::white(d), QuadriTiling::black(d)},
                            {QuadriTiling::white(m.alpha(d)), QuadriTiling::black(d)},
                            {QuadriTiling::white(d), QuadriTiling::black(m.left_next(d))}};
    for (int t = 0; t < 3; ++t) {
      const int k = 3 * d + t;
      alpha[2 * k] = 2 * k + 1;
      alpha[2 * k + 1] = 2 * k;
      tail[2 * k] = ends[t][0];
      tail[2 * k + 1] = ends[t][1];
    }
    q.g.origin[QuadriTiling::star(d)] = {OriginKind::CrossesDual, e, d, -1};
    q.g.origin[QuadriTiling::prim(d)] = {OriginKind::CrossesPrimal, e, d, -1};
    // The white end of the external edge is (d, head); its corner is head(d).
    const int j = bindex[d];
    q.g.origin[QuadriTiling::ext(d)] = {
        j >= 0 ? OriginKind::ExternalBoundary : OriginKind::External, e, d,
        j >= 0 ? (j) : -1};
  }
  for (int d = 0; d < nd; ++d) {
    // White (d, head): external, star, prim counterclockwise.
    const int wx = 2 * QuadriTiling::ext(d), ws = 2 * QuadriTiling::star(d),
              wp = 2 * QuadriTiling::prim(m.alpha(d));
    sigma[wx] = ws;
    sigma[ws] = wp;
    sigma[wp] = wx;
    // Black (d, tail): star, external, prim counterclockwise.
    const int bs = 2 * QuadriTiling::star(d) + 1,
              bx = 2 * QuadriTiling::ext(m.left_prev(d)) + 1,
              bp = 2 * QuadriTiling::prim(d) + 1;
    sigma[bs] = bx;
    sigma[bx] = bp;
    sigma[bp] = bs;
  }
  PlanarMap probe(2 * nd, alpha, sigma, tail, 0);
  q.face_kind.assign(probe.num_faces(), QFaceKind::Quadrangle);
  q.face_source.assign(probe.num_faces(), -1);
  int outer = 0;
  for (int f = 0; f < probe.num_faces(); ++f) {
    bool has_prim = false, has_star = false;
    int any_star = -1, any_prim = -1;
    for (int x : probe.face_darts(f)) {
      const int k = probe.edge(x);
      if (k % 3 == 0) has_star = true, any_star = k / 3;
      if (k % 3 == 1) has_prim = true, any_prim = k / 3;
    }
    if (has_prim && has_star) {
      q.face_kind[f] = QFaceKind::Quadrangle;
      q.face_source[f] = m.edge(any_star);
    } else if (has_prim) {
      q.face_kind[f] = QFaceKind::PrimalVertex;
      q.face_source[f] = m.tail(any_prim);
    } else {
      q.face_kind[f] = QFaceKind::DualVertex;
      q.face_source[f] = m.left_face(any_star);
      if (q.face_source[f] == m.outer_face()) outer = f;
    }
  }
  q.g.map = PlanarMap(2 * nd, std::move(alpha), std::move(sigma), std::move(tail), outer);
  q.g.vclass.resize(2 * nd);
  for (int d = 0; d < nd; ++d) {
    q.g.vclass[QuadriTiling::black(d)] = VertexClass::Black;
    q.g.vclass[QuadriTiling::white(d)] = VertexClass::White;
  }
  return q;
}

ExtendedPair extended_pair(const PlanarMap& m) {
  ExtendedPair ep;
  const int nv = m.num_vertices();
  const int nd = m.num_darts();
  const int ne = m.num_edges();
  ep.boundary_darts = m.boundary_darts();
  const int n = ep.n();
  ep.root_r = nv;
  ep.num_inner_faces = m.num_faces() - 1;

  std::vector<int> alpha(nd + 2 * n), sigma(nd + 2 * n), tail(nd + 2 * n);
  for (int d = 0; d < nd; ++d) {
    alpha[d] = m.alpha(d);
    sigma[d] = m.sigma(d);
    tail[d] = m.tail(d);
  }
  for (int j = 0; j < n; ++j) {
    const int c = nd + 2 * j;
    const int p = m.head(ep.boundary_darts[j]);
    ep.boundary_vertices.push_back(p);
    ep.root_darts.push_back(c);
    alpha[c] = c + 1;
    alpha[c + 1] = c;
    tail[c] = p;
    tail[c + 1] = nv;
    // Insert into the outer corner at p, right after d_{j+1}.
    const int dn = ep.boundary_darts[(j + 1) % n];
    sigma[c] = m.sigma(dn);
    sigma[dn] = c;
    // Around r the boundary vertices appear counterclockwise in clockwise
    // boundary order.
    sigma[c + 1] = nd + 2 * ((j + 1) % n) + 1;
  }
  PlanarMap probe(nv + 1, alpha, sigma, tail, 0);
  const int gouter = n > 0 ? probe.face(m.alpha(ep.boundary_darts[0])) : 0;
  PlanarMap gext(nv + 1, alpha, sigma, tail, gouter);

  std::vector<int> lozenge_of_gface(gext.num_faces(), -1);
  ep.lozenge_of_face.assign(m.num_faces(), -1);
  int next = 0;
  for (int f = 0; f < m.num_faces(); ++f) {
    if (f == m.outer_face()) continue;
    ep.lozenge_of_face[f] = next;
    lozenge_of_gface[gext.face(m.face_darts(f).front())] = next++;
  }
  for (int j = 0; j < n; ++j) lozenge_of_gface[gext.face(m.alpha(ep.boundary_darts[j]))] = next++;
  for (int g = 0; g < gext.num_faces(); ++g)
    if (lozenge_of_gface[g] < 0) throw Error(ErrorCode::BadMap, "unclassified face of G_ext");

  std::vector<int> dalpha(gext.num_darts()), dsigma(gext.num_darts()), dtail(gext.num_darts());
  for (int c = 0; c < gext.num_darts(); ++c) {
    dalpha[c] = gext.alpha(c);
    dsigma[c] = gext.phi_inv(c);
    dtail[c] = lozenge_of_gface[gext.face(c)];
  }
  PlanarMap dprobe(next, dalpha, dsigma, dtail, 0);
  const int douter = dprobe.face(gext.alpha(gext.vertex_dart(nv)));
  ep.dual.map = PlanarMap(next, std::move(dalpha), std::move(dsigma), std::move(dtail), douter);
  ep.dual.vclass.assign(next, VertexClass::Dual);

  ep.graph.map = std::move(gext);
  ep.graph.vclass.assign(nv + 1, VertexClass::Primal);
  ep.graph.vclass[nv] = VertexClass::RootR;
  for (int e = 0; e < ne + n; ++e) {
    if (e < ne) {
      ep.graph.origin.push_back({OriginKind::PrimalEdge, e, m.edge_dart(e), -1});
      ep.dual.origin.push_back({OriginKind::DualEdge, e, m.edge_dart(e), -1});
    } else {
      const int j = e - ne;
      ep.graph.origin.push_back({OriginKind::RootEdge, -1, ep.root_darts[j], j});
      ep.dual.origin.push_back({OriginKind::BoundaryDualEdge, -1, ep.root_darts[j], j});
    }
  }
  return ep;
}

std::vector<int> ExtendedDouble::split_edges() const {
  std::vector<int> out;
  for (int k = 0; k < num_edges(); ++k)
    if (g.origin[k].kind == OriginKind::HalfBoundarySplit) out.push_back(k);
  return out;
}

ExtendedDouble extended_double(const PlanarMap& m, int root_s) {
  ExtendedDouble dd;
  dd.ext = extended_pair(m);
  const PlanarMap& gx = dd.ext.graph.map;
  const PlanarMap& gd = dd.ext.dual.map;
  const int nE = m.num_edges();
  dd.num_bullets = m.num_vertices();
  dd.num_lozenges = gd.num_vertices();
  dd.num_whites = gx.num_edges();
  if (root_s < 0 || root_s >= dd.ext.n())
    throw Error(ErrorCode::BadParams, "root_s must index a boundary split vertex");
  dd.root_s = dd.lozenge_vertex(dd.ext.split_vertex(root_s));

  MapBuilder b(dd.num_vertices());
  const int nc = gx.num_darts();
  dd.half_primal.assign(nc, -1);
  dd.half_dual.assign(nc, -1);
  const int r = dd.ext.root_r;
  for (int c = 0; c < nc; ++c) {
    const int eps = gx.edge(c);
    const int w = dd.white_vertex(eps);
    const int lz = gd.tail(c);
    if (gx.tail(c) != r) {
      dd.half_primal[c] = b.add_edge(w, gx.tail(c));
      if (eps < nE) {
        dd.g.origin.push_back({OriginKind::HalfPrimal, eps, c, -1});
      } else {
        dd.g.origin.push_back({OriginKind::HalfRootEdge, -1, c, eps - nE});
      }
      dd.edge_group.push_back(c);
    }
    dd.half_dual[c] = b.add_edge(w, dd.lozenge_vertex(lz));
    if (eps < nE) {
      dd.g.origin.push_back({OriginKind::HalfDual, eps, c, -1});
    } else {
      const int j = eps - nE;
      const bool split = lz == dd.ext.split_vertex(j);
      dd.g.origin.push_back(
          {split ? OriginKind::HalfBoundarySplit : OriginKind::HalfBoundaryOther, -1, c, j});
    }
    dd.edge_group.push_back(c);
  }
  for (const auto& [wv, bv] : b.edges) {
    dd.edge_white.push_back(wv);
    dd.edge_black.push_back(bv);
  }
  for (int eps = 0; eps < gx.num_edges(); ++eps) {
    const int a = gx.edge_dart(eps), a2 = gx.alpha(a);
    for (int k : {dd.half_primal[a2], dd.half_dual[a2], dd.half_primal[a], dd.half_dual[a]})
      if (k >= 0) b.rot[dd.white_vertex(eps)].push_back(2 * k);
  }
  for (int v = 0; v < dd.num_bullets; ++v)
    for (int c : gx.darts_at(v)) b.rot[v].push_back(2 * dd.half_primal[c] + 1);
  for (int g = 0; g < gx.num_faces(); ++g) {
    const auto& fd = gx.face_darts(g);
    const int lz = dd.lozenge_vertex(gd.tail(fd.front()));
    for (auto it = fd.rbegin(); it != fd.rend(); ++it)
      b.rot[lz].push_back(2 * dd.half_dual[*it] + 1);
  }
  dd.g.map = b.build_with_largest_outer();
  dd.g.vclass.assign(dd.num_vertices(), VertexClass::White);
  for (int v = 0; v < dd.num_bullets; ++v) dd.g.vclass[v] = VertexClass::BulletBlack;
  for (int l = 0; l < dd.num_lozenges; ++l)
    dd.g.vclass[dd.lozenge_vertex(l)] = VertexClass::LozengeBlack;
  dd.g.vclass[dd.root_s] = VertexClass::RootS;
  return dd;
}

}  // namespace isotree
