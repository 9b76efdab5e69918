#include "bmg/structure_io.hpp"

#include <sstream>

#include "json.hpp"

namespace bmg {

using nlohmann::json;

std::string structure_to_json(const FinStructure& s, int indent) {
  json out;
  out["universe"] = s.vertices();
  json rels = json::object();
  for (const auto& rel : s.sig().relations()) {
    json tuples = json::array();
    for (const Tuple& t : s.table(rel.name)) tuples.push_back(t);
    rels[rel.name] = tuples;
  }
  out["relations"] = rels;
  return out.dump(indent);
}

FinStructure structure_from_json(const Signature& sig, const std::string& text) {
  json in = json::parse(text);
  FinStructure s(sig);
  for (const auto& v : in.at("universe")) s.add_vertex(v.get<Vertex>());
  if (in.contains("relations")) {
    for (const auto& [name, tuples] : in.at("relations").items()) {
      for (const auto& t : tuples) s.add_tuple(name, t.get<Tuple>());
    }
  }
  return s;
}

std::string graph_to_dot(const FinStructure& g) {
  std::ostringstream os;
  os << "graph g {\n";
  for (Vertex v : g.universe()) os << "  " << v << ";\n";
  for (const Tuple& t : g.table("edge")) {
    if (t[0] < t[1]) os << "  " << t[0] << " -- " << t[1] << ";\n";
  }
  os << "}\n";
  return os.str();
}

FinStructure graph_from_dot(const std::string& text) {
  FinStructure g(Signature::graphs());
  std::istringstream is(text);
  std::string line;
  std::vector<std::pair<Vertex, Vertex>> edges;
  while (std::getline(is, line)) {
    // Strip comments, braces, semicolons and the header line.
    if (line.find('{') != std::string::npos || line.find('}') != std::string::npos) continue;
    for (char& c : line) {
      if (c == ';') c = ' ';
    }
    std::istringstream ls(line);
    Vertex u;
    if (!(ls >> u)) continue;
    std::string sep;
    if (ls >> sep && sep == "--") {
      Vertex v;
      if (!(ls >> v)) throw GameError(Fault::InvalidArgument, "malformed DOT edge: " + line);
      g.add_vertex(u);
      g.add_vertex(v);
      edges.emplace_back(u, v);
    } else {
      g.add_vertex(u);
    }
  }
  for (const auto& [u, v] : edges) g.add_edge(u, v);
  return g;
}

}  // namespace bmg
