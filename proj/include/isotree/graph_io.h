#pragma once

#include <string>

#include "json.hpp"

#include "isotree/correspondence.h"
#include "isotree/derived.h"
#include "isotree/generators.h"

namespace isotree {

// {"vertices":[{id,x,y,tag}], "darts":[{id,twin,next,vertex}], "outer_face",
//  "edges":[{id,theta,theta_over_pi}]}; next is the counterclockwise
// successor around the vertex.
nlohmann::json graph_to_json(const GraphFile& g);
GraphFile graph_from_json(const nlohmann::json& j);
GraphFile read_graph_file(const std::string& path);

// Derived maps: same vertex/dart layout without coordinates, plus edge origins.
nlohmann::json derived_to_json(const DerivedMap& d);
std::string derived_to_dot(const DerivedMap& d, const std::string& name);
nlohmann::json digraph_to_json(const DirectedModel& g);
std::string digraph_to_dot(const DirectedModel& g, const std::string& name);

// what: primal, dual, quad, quadri_tiling, extended_double, G0, G.
// format: dot or json.
std::string export_target(const GraphFile& g, const std::string& what, const std::string& format,
                          int root_s = 0);

}  // namespace isotree
