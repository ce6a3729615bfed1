#include "cli.h"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "isotree/correspondence.h"
#include "isotree/error.h"
#include "isotree/graph_io.h"

namespace isotree {

namespace {

struct RunConfig {
  std::string input;
  std::string generator;
  double tolerance = kEpsNum;
  int root_s = 0;
  std::string out;
  std::string format = "json";
  std::string target;
  std::string gen_name;
  std::vector<int> gen_params;
};

GraphFile load(const RunConfig& c) {
  if (!c.input.empty() && !c.generator.empty())
    throw Error(ErrorCode::BadParams, "give either --input or --generator, not both");
  if (!c.input.empty()) return read_graph_file(c.input);
  if (c.generator.empty()) throw Error(ErrorCode::BadParams, "--input or --generator required");
  std::string text = c.generator;
  for (char& ch : text)
    if (ch == ',' || ch == ':') ch = ' ';
  std::istringstream is(text);
  std::string name;
  is >> name;
  std::vector<int> params;
  std::string tok;
  while (is >> tok) {
    try {
      size_t pos = 0;
      params.push_back(std::stoi(tok, &pos));
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw Error(ErrorCode::BadParams, "generator parameter '" + tok + "' is not an integer");
    }
  }
  return generate(name, params);
}

void emit(const RunConfig& c, const std::string& text, std::ostream& out) {
  if (c.out.empty() || c.out == "-") {
    out << text;
    return;
  }
  std::ofstream f(c.out, std::ios::binary);
  if (!f) throw Error(ErrorCode::BadInput, "cannot write " + c.out);
  f << text;
}

int cmd_generate(const RunConfig& c, std::ostream& out) {
  const GraphFile g = generate(c.gen_name, c.gen_params);
  prepare(g);
  emit(c, graph_to_json(g).dump(2) + "\n", out);
  return 0;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const GraphFile g = load(c);
  const IsoradialData iso = prepare(g);
  MainOptions opt;
  opt.root_s = c.root_s;
  opt.tol = c.tolerance;
  opt.lim = limits_from_env();
  Report rep = verify_main_theorem(g.map, iso, opt);
  rep.append(verify_squared_ising(g.map, iso, opt.lim, opt.tol));
  nlohmann::json j = rep.to_json();
  j["graph"] = {{"name", g.name},
                {"vertices", g.map.num_vertices()},
                {"edges", g.map.num_edges()},
                {"faces", g.map.num_faces()},
                {"regular", iso.regular},
                {"root_s", c.root_s}};
  emit(c, j.dump(2) + "\n", out);
  for (const std::string& f : rep.failures()) err << "FAIL " << f << "\n";
  return rep.all_pass() ? 0 : 1;
}

int cmd_export(const RunConfig& c, std::ostream& out) {
  const GraphFile g = load(c);
  emit(c, export_target(g, c.target, c.format, c.root_s), out);
  return 0;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Critical Ising model and spanning trees on isoradial graphs"};
  app.require_subcommand(1);
  RunConfig c;
  auto positive = CLI::PositiveNumber;

  CLI::App* gen = app.add_subcommand("generate", "write a corpus graph as JSON");
  gen->add_option("name", c.gen_name, "cycle | grid | rhombic | wheel")->required();
  gen->add_option("params", c.gen_params, "integer parameters");
  gen->add_option("--out", c.out, "output file (default stdout)");

  CLI::App* ver = app.add_subcommand("verify", "run every identity of the chain");
  CLI::App* exp = app.add_subcommand("export", "serialize a derived graph");
  exp->add_option("what", c.target, "primal | dual | quad | quadri_tiling | extended_double | G0 | G")
      ->required();
  for (CLI::App* sub : {ver, exp}) {
    sub->add_option("--input", c.input, "graph JSON file");
    sub->add_option("--generator", c.generator, "generator and parameters, e.g. \"grid 3 3\"");
    sub->add_option("--root-s", c.root_s, "index of the boundary split vertex used as s");
    sub->add_option("--out", c.out, "output file (default stdout)");
  }
  ver->add_option("--tolerance", c.tolerance, "relative tolerance")->check(positive);
  exp->add_option("--format", c.format, "dot | json");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << nlohmann::json{{"error", "BadParams"}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }
  try {
    if (gen->parsed()) return cmd_generate(c, out);
    if (ver->parsed()) return cmd_verify(c, out, err);
    return cmd_export(c, out);
  } catch (const Error& e) {
    err << nlohmann::json{{"error", error_code_name(e.code())}, {"message", e.what()}}.dump() << "\n";
    return 2;
  }
}

}  // namespace isotree
