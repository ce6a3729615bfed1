#include "isotree/graph_io.h"

#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

#include "isotree/error.h"

namespace isotree {

using nlohmann::json;

namespace {

json darts_json(const PlanarMap& m) {
  json darts = json::array();
  for (int d = 0; d < m.num_darts(); ++d)
    darts.push_back({{"id", d}, {"twin", m.alpha(d)}, {"next", m.sigma(d)}, {"vertex", m.tail(d)}});
  return darts;
}

const char* dot_style(const std::string& tag) {
  static const std::map<std::string, const char*> styles = {
      {"primal", "shape=circle"},
      {"dual", "shape=box"},
      {"white", "shape=circle,style=filled,fillcolor=white"},
      {"black", "shape=circle,style=filled,fillcolor=black,fontcolor=white"},
      {"bullet-black", "shape=circle,style=filled,fillcolor=black,fontcolor=white"},
      {"lozenge-black", "shape=diamond,style=filled,fillcolor=gray30,fontcolor=white"},
      {"root-r", "shape=doublecircle,style=filled,fillcolor=red"},
      {"root-s", "shape=doubleoctagon,style=filled,fillcolor=orange"},
  };
  const auto it = styles.find(tag);
  return it == styles.end() ? "shape=ellipse" : it->second;
}

std::string map_to_dot(const PlanarMap& m, const std::vector<std::string>& tags,
                       const std::vector<std::string>& edge_labels, const std::string& name,
                       const std::vector<Point>* coords) {
  std::ostringstream os;
  os.precision(12);
  os << "graph \"" << name << "\" {\n";
  for (int v = 0; v < m.num_vertices(); ++v) {
    os << "  " << v << " [label=\"" << v << "\"," << dot_style(tags[v]) << ",tag=\"" << tags[v] << "\"";
    if (coords) os << ",pos=\"" << (*coords)[v].first << "," << (*coords)[v].second << "!\"";
    os << "];\n";
  }
  for (int e = 0; e < m.num_edges(); ++e) {
    const int d = m.edge_dart(e);
    os << "  " << m.tail(d) << " -- " << m.head(d) << " [id=" << e;
    if (!edge_labels.empty()) os << ",label=\"" << edge_labels[e] << "\"";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::vector<std::string> class_tags(const DerivedMap& d) {
  std::vector<std::string> tags;
  for (VertexClass c : d.vclass) tags.push_back(vertex_class_name(c));
  return tags;
}

std::vector<std::string> origin_labels(const DerivedMap& d) {
  std::vector<std::string> out;
  for (const EdgeOrigin& o : d.origin) out.push_back(origin_kind_name(o.kind));
  return out;
}

DerivedMap plain(const PlanarMap& m, VertexClass c) {
  DerivedMap d;
  d.map = m;
  d.vclass.assign(m.num_vertices(), c);
  for (int e = 0; e < m.num_edges(); ++e)
    d.origin.push_back({c == VertexClass::Primal ? OriginKind::PrimalEdge : OriginKind::DualEdge, e,
                        m.edge_dart(e), -1});
  return d;
}

}  // namespace

json graph_to_json(const GraphFile& g) {
  const PlanarMap& m = g.map;
  json j;
  json vs = json::array();
  for (int v = 0; v < m.num_vertices(); ++v)
    vs.push_back({{"id", v},
                  {"x", g.coords.at(v).first},
                  {"y", g.coords.at(v).second},
                  {"tag", g.tags.empty() ? "primal" : g.tags[v]}});
  j["vertices"] = vs;
  j["darts"] = darts_json(m);
  j["outer_face"] = m.outer_face();
  json es = json::array();
  for (int e = 0; e < m.num_edges(); ++e) {
    json x = {{"id", e}};
    if (g.theta_over_pi) {
      x["theta_over_pi"] = (*g.theta_over_pi)[e];
      x["theta"] = (*g.theta_over_pi)[e] * std::numbers::pi;
    }
    es.push_back(x);
  }
  j["edges"] = es;
  if (!g.name.empty()) j["name"] = g.name;
  return j;
}

GraphFile graph_from_json(const json& j) {
  try {
    GraphFile g;
    const auto& vs = j.at("vertices");
    const int nv = static_cast<int>(vs.size());
    g.coords.assign(nv, {0.0, 0.0});
    g.tags.assign(nv, "primal");
    for (const auto& v : vs) {
      const int id = v.at("id").get<int>();
      if (id < 0 || id >= nv) throw Error(ErrorCode::BadInput, "vertex id out of range");
      g.coords[id] = {v.at("x").get<double>(), v.at("y").get<double>()};
      if (v.contains("tag")) g.tags[id] = v.at("tag").get<std::string>();
    }
    const auto& ds = j.at("darts");
    const int nd = static_cast<int>(ds.size());
    std::vector<int> alpha(nd, -1), sigma(nd, -1), tail(nd, -1);
    for (const auto& d : ds) {
      const int id = d.at("id").get<int>();
      if (id < 0 || id >= nd) throw Error(ErrorCode::BadInput, "dart id out of range");
      alpha[id] = d.at("twin").get<int>();
      sigma[id] = d.at("next").get<int>();
      tail[id] = d.at("vertex").get<int>();
    }
    g.map = PlanarMap(nv, alpha, sigma, tail, j.at("outer_face").get<int>());
    if (j.contains("edges")) {
      std::vector<double> th(g.map.num_edges(), 0.0);
      bool all = true;
      int count = 0;
      for (const auto& e : j.at("edges")) {
        const int id = e.at("id").get<int>();
        if (id < 0 || id >= g.map.num_edges()) throw Error(ErrorCode::BadInput, "edge id out of range");
        if (e.contains("theta_over_pi")) th[id] = e.at("theta_over_pi").get<double>(), ++count;
        else all = false;
      }
      if (all && count == g.map.num_edges()) g.theta_over_pi = th;
    }
    if (j.contains("name")) g.name = j.at("name").get<std::string>();
    return g;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::BadInput, std::string("malformed graph JSON: ") + e.what());
  }
}

GraphFile read_graph_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::BadInput, "cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::BadInput, std::string("invalid JSON: ") + e.what());
  }
  return graph_from_json(j);
}

json derived_to_json(const DerivedMap& d) {
  json j;
  json vs = json::array();
  for (int v = 0; v < d.map.num_vertices(); ++v)
    vs.push_back({{"id", v}, {"tag", vertex_class_name(d.vclass[v])}});
  j["vertices"] = vs;
  j["darts"] = darts_json(d.map);
  j["outer_face"] = d.map.outer_face();
  json es = json::array();
  for (int e = 0; e < d.map.num_edges(); ++e) {
    const EdgeOrigin& o = d.origin[e];
    es.push_back({{"id", e},
                  {"kind", origin_kind_name(o.kind)},
                  {"source_edge", o.source_edge},
                  {"source_dart", o.source_dart},
                  {"boundary_index", o.boundary_index}});
  }
  j["edges"] = es;
  return j;
}

std::string derived_to_dot(const DerivedMap& d, const std::string& name) {
  return map_to_dot(d.map, class_tags(d), origin_labels(d), name, nullptr);
}

namespace {

std::string model_tag(const DirectedModel& g, int v) {
  if (v == g.root_r) return "root-r";
  return v < g.num_darts ? "white" : "black";
}

}  // namespace

json digraph_to_json(const DirectedModel& g) {
  json j;
  j["stage"] = g.stage == Stage::G0 ? "G0" : "G";
  j["root"] = g.root_r;
  json vs = json::array();
  for (int v = 0; v < g.graph.num_vertices; ++v) vs.push_back({{"id", v}, {"tag", model_tag(g, v)}});
  j["vertices"] = vs;
  json as = json::array();
  for (size_t a = 0; a < g.graph.arcs.size(); ++a) {
    const Arc& arc = g.graph.arcs[a];
    const EdgeOrigin& o = g.origin[a];
    as.push_back({{"id", a},
                  {"from", arc.from},
                  {"to", arc.to},
                  {"weight", complex_json(arc.weight)},
                  {"kind", origin_kind_name(o.kind)},
                  {"source_edge", o.source_edge},
                  {"source_dart", o.source_dart},
                  {"boundary_index", o.boundary_index}});
  }
  j["arcs"] = as;
  return j;
}

std::string digraph_to_dot(const DirectedModel& g, const std::string& name) {
  std::ostringstream os;
  os.precision(12);
  os << "digraph \"" << name << "\" {\n";
  for (int v = 0; v < g.graph.num_vertices; ++v) {
    const std::string tag = model_tag(g, v);
    os << "  " << v << " [label=\"" << v << "\"," << dot_style(tag) << ",tag=\"" << tag << "\"];\n";
  }
  for (size_t a = 0; a < g.graph.arcs.size(); ++a) {
    const Arc& arc = g.graph.arcs[a];
    os << "  " << arc.from << " -> " << arc.to << " [id=" << a << ",label=\""
       << origin_kind_name(g.origin[a].kind) << "\",weight_re=" << arc.weight.real()
       << ",weight_im=" << arc.weight.imag() << "];\n";
  }
  os << "}\n";
  return os.str();
}

std::string export_target(const GraphFile& g, const std::string& what, const std::string& format,
                          int root_s) {
  if (format != "dot" && format != "json")
    throw Error(ErrorCode::BadParams, "format must be dot or json, got '" + format + "'");
  const bool dot = format == "dot";
  auto out_map = [&](const DerivedMap& d) {
    return dot ? derived_to_dot(d, what) : derived_to_json(d).dump(2) + "\n";
  };
  if (what == "primal") {
    if (dot) return map_to_dot(g.map, std::vector<std::string>(g.map.num_vertices(), "primal"), {}, what,
                               &g.coords);
    return graph_to_json(g).dump(2) + "\n";
  }
  if (what == "dual") return out_map(plain(dual_map(g.map), VertexClass::Dual));
  if (what == "quad") return out_map(quad_graph(g.map, QuadVariant::Full));
  if (what == "quadri_tiling") return out_map(quadri_tiling(g.map).g);
  if (what == "extended_double") return out_map(extended_double(g.map, root_s).g);
  if (what == "G0" || what == "G") {
    const IsoradialData iso = prepare(g);
    const QuadriTiling gq = quadri_tiling(g.map);
    const KasteleynMatrix k =
        build_kasteleyn(gq, dimer_weights(critical_couplings(iso), gq), assign_phases(gq, iso));
    DirectedModel model = build_G0(gq, k, iso);
    if (what == "G") model = build_G(model);
    return dot ? digraph_to_dot(model, what) : digraph_to_json(model).dump(2) + "\n";
  }
  throw Error(ErrorCode::UnknownTarget, "unknown export target '" + what + "'");
}

}  // namespace isotree
