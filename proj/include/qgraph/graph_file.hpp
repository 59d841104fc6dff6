#pragma once

#include <charconv>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "qgraph/secular.hpp"

namespace qgraph {

/// Result of parsing a graph description file.
struct ParsedGraph {
  MetricGraph graph;
  std::optional<FluxAssignment> flux;  // present when the file has flux lines
};

namespace detail {

inline bool parse_double(std::string_view tok, double& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last;
}

inline bool parse_int(std::string_view tok, int& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto res = std::from_chars(first, last, out);
  return res.ec == std::errc() && res.ptr == last;
}

/// Shortest decimal representation that round-trips to the same double.
inline std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, res.ptr);
}

}  // namespace detail

/// Line-oriented graph description:
///   vertex <id> <neumann|dirichlet>
///   edge <id> <u> <v> <length>
///   flux <chord edge id> <value>
/// Ids must be declared consecutively from zero; '#' starts a comment.
inline ParsedGraph parse_graph_file(const std::string& text) {
  GraphBuilder builder;
  int vertex_count = 0;
  int edge_count = 0;
  struct FluxLine {
    int edge;
    double value;
    int line;
  };
  std::vector<FluxLine> flux_lines;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string_view line(raw);
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);

    std::vector<std::pair<std::string_view, int>> toks;  // token, column
    size_t pos = 0;
    while (pos < line.size()) {
      while (pos < line.size() && std::isspace(static_cast<unsigned char>(
                                      line[pos])))
        ++pos;
      if (pos >= line.size()) break;
      size_t end = pos;
      while (end < line.size() && !std::isspace(static_cast<unsigned char>(
                                      line[end])))
        ++end;
      toks.emplace_back(line.substr(pos, end - pos), static_cast<int>(pos) + 1);
      pos = end;
    }
    if (toks.empty()) continue;

    const std::string_view kw = toks[0].first;
    if (kw == "vertex") {
      if (toks.size() != 3)
        throw SyntaxError("vertex line needs: vertex <id> <condition>",
                          lineno, toks[0].second);
      int id;
      if (!detail::parse_int(toks[1].first, id))
        throw SyntaxError("bad vertex id", lineno, toks[1].second);
      if (id != vertex_count)
        throw SemanticError("vertex ids must be consecutive from 0; expected " +
                                std::to_string(vertex_count),
                            lineno);
      VertexCondition c;
      if (toks[2].first == "neumann")
        c = VertexCondition::Neumann;
      else if (toks[2].first == "dirichlet")
        c = VertexCondition::Dirichlet;
      else
        throw SyntaxError("condition must be neumann or dirichlet", lineno,
                          toks[2].second);
      builder.add_vertex(c);
      ++vertex_count;
    } else if (kw == "edge") {
      if (toks.size() != 5)
        throw SyntaxError("edge line needs: edge <id> <u> <v> <length>",
                          lineno, toks[0].second);
      int id, u, v;
      double length;
      if (!detail::parse_int(toks[1].first, id))
        throw SyntaxError("bad edge id", lineno, toks[1].second);
      if (id != edge_count)
        throw SemanticError("edge ids must be consecutive from 0; expected " +
                                std::to_string(edge_count),
                            lineno);
      if (!detail::parse_int(toks[2].first, u))
        throw SyntaxError("bad endpoint id", lineno, toks[2].second);
      if (!detail::parse_int(toks[3].first, v))
        throw SyntaxError("bad endpoint id", lineno, toks[3].second);
      if (!detail::parse_double(toks[4].first, length))
        throw SyntaxError("bad edge length", lineno, toks[4].second);
      if (u < 0 || u >= vertex_count || v < 0 || v >= vertex_count)
        throw SemanticError("edge endpoint references an undeclared vertex",
                            lineno);
      if (!(length > 0.0))
        throw SemanticError("edge length must be positive", lineno);
      builder.add_edge(u, v, length);
      ++edge_count;
    } else if (kw == "flux") {
      if (toks.size() != 3)
        throw SyntaxError("flux line needs: flux <edge id> <value>", lineno,
                          toks[0].second);
      int e;
      double value;
      if (!detail::parse_int(toks[1].first, e))
        throw SyntaxError("bad edge id", lineno, toks[1].second);
      if (!detail::parse_double(toks[2].first, value))
        throw SyntaxError("bad flux value", lineno, toks[2].second);
      flux_lines.push_back({e, value, lineno});
    } else {
      throw SyntaxError("unknown keyword '" + std::string(kw) + "'", lineno,
                        toks[0].second);
    }
  }

  ParsedGraph out{builder.build(), std::nullopt};

  if (!flux_lines.empty()) {
    const CycleBasis basis = fundamental_cycles(out.graph);
    FluxAssignment flux = FluxAssignment::zero(basis.beta);
    for (const FluxLine& fl : flux_lines) {
      bool found = false;
      for (int i = 0; i < basis.beta; ++i) {
        if (basis.chords[i] == fl.edge) {
          flux.values[i] = fl.value;
          found = true;
          break;
        }
      }
      if (!found) {
        std::string chords;
        for (int c : basis.chords) chords += " " + std::to_string(c);
        throw SemanticError("edge " + std::to_string(fl.edge) +
                                " is not a chord of the cycle basis; chords:" +
                                (chords.empty() ? " none" : chords),
                            fl.line);
      }
    }
    flux.canonicalize();
    out.flux = flux;
  }
  return out;
}

/// Inverse of parse_graph_file on built graphs: parse(serialize(g))
/// reproduces g bit-exactly (lengths use shortest round-trip formatting).
inline std::string serialize_graph(const MetricGraph& g,
                                   const std::optional<FluxAssignment>& flux =
                                       std::nullopt) {
  std::string out;
  for (int v = 0; v < g.vertex_count(); ++v) {
    out += "vertex " + std::to_string(v) + " ";
    out += g.condition(v) == VertexCondition::Neumann ? "neumann" : "dirichlet";
    out += "\n";
  }
  for (const Edge& e : g.edges()) {
    out += "edge " + std::to_string(e.id) + " " + std::to_string(e.u) + " " +
           std::to_string(e.v) + " " + detail::format_double(e.length) + "\n";
  }
  if (flux && !flux->values.empty()) {
    const CycleBasis basis = fundamental_cycles(g);
    for (int i = 0; i < basis.beta && i < flux->size(); ++i)
      if (flux->values[i] != 0.0)
        out += "flux " + std::to_string(basis.chords[i]) + " " +
               detail::format_double(flux->values[i]) + "\n";
  }
  return out;
}

}  // namespace qgraph
