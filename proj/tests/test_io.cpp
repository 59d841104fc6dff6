#include <catch2/catch_amalgamated.hpp>

#include "qgraph/commands.hpp"
#include "qgraph/corpus.hpp"
#include "qgraph/graph_file.hpp"
#include "qgraph/oracles.hpp"

using namespace qgraph;

TEST_CASE("minimal interval file") {
  const ParsedGraph p = parse_graph_file(
      "# an interval\n"
      "vertex 0 neumann\n"
      "vertex 1 neumann\n"
      "edge 0 0 1 1.0\n");
  CHECK(p.graph.vertex_count() == 2);
  CHECK(p.graph.edge_count() == 1);
  CHECK(!p.flux.has_value());
}

TEST_CASE("star file with a Dirichlet leaf") {
  const ParsedGraph p = parse_graph_file(
      "vertex 0 neumann\n"
      "vertex 1 neumann\n"
      "vertex 2 dirichlet\n"
      "vertex 3 neumann\n"
      "edge 0 0 1 1.0\n"
      "edge 1 0 2 1.5   # the Dirichlet arm\n"
      "edge 2 0 3 2.0\n");
  CHECK(p.graph.vertex_count() == 4);
  CHECK(p.graph.condition(2) == VertexCondition::Dirichlet);
  CHECK(p.graph.degree(0) == 3);
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse_graph_file("vertex 0 neumann\nedge 0 0 1\n"),
                  SyntaxError);
  CHECK_THROWS_AS(parse_graph_file("vertex 0 robin\n"), SyntaxError);
  CHECK_THROWS_AS(parse_graph_file("frobnicate 1 2\n"), SyntaxError);
  try {
    parse_graph_file("vertex 0 neumann\nvertex 1 neumann\nedge 0 0 1 abc\n");
    FAIL("expected SyntaxError");
  } catch (const SyntaxError& e) {
    CHECK(e.line == 3);
    CHECK(e.col > 1);
  }
}

TEST_CASE("semantic errors") {
  // zero length
  CHECK_THROWS_AS(parse_graph_file("vertex 0 neumann\n"
                                   "vertex 1 neumann\n"
                                   "edge 0 0 1 0\n"),
                  SemanticError);
  // undeclared endpoint
  CHECK_THROWS_AS(parse_graph_file("vertex 0 neumann\nedge 0 0 5 1.0\n"),
                  SemanticError);
  // non-consecutive ids
  CHECK_THROWS_AS(parse_graph_file("vertex 1 neumann\n"), SemanticError);
  // flux on a non-chord edge
  CHECK_THROWS_AS(parse_graph_file("vertex 0 neumann\n"
                                   "vertex 1 neumann\n"
                                   "edge 0 0 1 1.0\n"
                                   "edge 1 0 0 2.0\n"
                                   "flux 0 0.5\n"),
                  SemanticError);
}

TEST_CASE("flux lines attach to basis chords") {
  const ParsedGraph p = parse_graph_file(
      "vertex 0 neumann\n"
      "vertex 1 neumann\n"
      "edge 0 0 1 1.0\n"
      "edge 1 0 0 2.0\n"
      "flux 1 1.25\n");
  REQUIRE(p.flux.has_value());
  REQUIRE(p.flux->size() == 1);
  CHECK(p.flux->values[0] == 1.25);
}

TEST_CASE("serialize then parse is the identity on the corpus") {
  for (const auto& entry : random_corpus(11, 25)) {
    const std::string text = serialize_graph(entry.graph);
    const ParsedGraph round = parse_graph_file(text);
    CHECK(round.graph == entry.graph);
    CHECK(serialize_graph(round.graph) == text);
  }
}

TEST_CASE("serialization round-trips awkward lengths bit-exactly") {
  GraphBuilder b;
  b.add_vertex();
  b.add_vertex();
  b.add_edge(0, 1, M_PI);
  b.add_edge(0, 1, std::sqrt(2.0));
  b.add_edge(0, 1, 0.1);
  b.add_edge(0, 0, 1e-3 + 1e-17);
  const MetricGraph g = b.build();
  const ParsedGraph round = parse_graph_file(serialize_graph(g));
  for (int e = 0; e < g.edge_count(); ++e)
    CHECK(round.graph.edge(e).length == g.edge(e).length);
}

TEST_CASE("spectrum command output") {
  const MetricGraph g = oracles::interval(1.0, VertexCondition::Dirichlet,
                                          VertexCondition::Dirichlet);
  const std::string csv =
      commands::cmd_spectrum(g, FluxAssignment::zero(0), 10.0, SolverConfig{});
  CHECK(csv.rfind("index,k,lambda,multiplicity\n", 0) == 0);
  CHECK(csv.find("3.14159265359") != std::string::npos);
  CHECK(csv.find("6.28318530718") != std::string::npos);
  // deterministic repeat
  CHECK(csv == commands::cmd_spectrum(g, FluxAssignment::zero(0), 10.0,
                                      SolverConfig{}));
  // lambda = 0 row appears exactly for connected Neumann graphs
  const std::string lasso_csv = commands::cmd_spectrum(
      oracles::lasso(1.0, 2.0), FluxAssignment::zero(1), 6.0, SolverConfig{});
  CHECK(lasso_csv.find("1,0,0,1\n") != std::string::npos);
  CHECK(csv.find("1,0,0,1\n") == std::string::npos);
}

TEST_CASE("zeta and weylgap command output") {
  const MetricGraph g = oracles::interval(1.0, VertexCondition::Neumann,
                                          VertexCondition::Neumann);
  const std::string zeta_csv =
      commands::cmd_zeta(g, FluxAssignment::zero(0), 5.0, 0.5);
  CHECK(zeta_csv.rfind("k,zeta\n", 0) == 0);
  CHECK(std::count(zeta_csv.begin(), zeta_csv.end(), '\n') == 11);

  const std::string gap_csv =
      commands::cmd_weylgap(g, FluxAssignment::zero(0), 9.0, SolverConfig{});
  CHECK(gap_csv.rfind("k,gap\n", 0) == 0);
}

TEST_CASE("nodal command flags the dihedral profile") {
  const MetricGraph g = oracles::dihedral_graph(M_PI, 1.0, std::sqrt(2.0));
  const std::string csv = commands::cmd_nodal(g, 2.6, SolverConfig{});
  CHECK(csv.rfind("n,k,phi,surplus,flag\n", 0) == 0);
  // surplus column pattern 0,0,1,1,0,0,1,1,1
  const int want_surplus[] = {0, 0, 1, 1, 0, 0, 1, 1, 1};
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  for (int n = 1; n <= 9; ++n) {
    REQUIRE(std::getline(in, line));
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    REQUIRE(cells.size() == 5);
    CHECK(cells[0] == std::to_string(n));
    CHECK(cells[3] == std::to_string(want_surplus[n - 1]));
    CHECK(cells[4] == "ok");
  }
}

TEST_CASE("sweep command emits one row per grid point and band") {
  const MetricGraph g = oracles::lasso(1.0, 2.0);
  const std::string csv = commands::cmd_sweep(g, 2, 5, SolverConfig{});
  CHECK(csv.rfind("flux1,band,lambda\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + 5 * 2);
}

TEST_CASE("report document renders deterministic CSV rows") {
  ReportDocument doc;
  doc.command = "verify demo";
  doc.add_config("seed", "7");
  doc.add_row("alpha", true, 1.5e-11, 2e-11, "x");
  doc.add_row("beta", false, 3.0, 1.0);
  const std::string text = doc.to_text();
  CHECK(text.find("# report: verify demo\n") != std::string::npos);
  CHECK(text.find("alpha,PASS,1.5e-11,2e-11,x\n") != std::string::npos);
  CHECK(text.find("beta,FAIL,3,1,\n") != std::string::npos);
  CHECK(text.find("# overall: FAIL\n") != std::string::npos);
  CHECK(!doc.all_passed());
}
