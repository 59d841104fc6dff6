#include <catch2/catch_amalgamated.hpp>

#include "qgraph/corpus.hpp"
#include "qgraph/graph.hpp"
#include "qgraph/oracles.hpp"

using namespace qgraph;

TEST_CASE("single edge builds the minimal graph") {
  GraphBuilder b;
  b.add_vertex();
  b.add_vertex();
  b.add_edge(0, 1, 1.0);
  const MetricGraph g = b.build();
  CHECK(g.vertex_count() == 2);
  CHECK(g.edge_count() == 1);
  CHECK(g.bond_count() == 2);
  CHECK(g.total_length() == 1.0);
  CHECK(g.degree(0) == 1);
  CHECK(g.zero_mode_multiplicity() == 1);
}

TEST_CASE("three-edge star") {
  const MetricGraph g = oracles::neumann_star({1.0, 2.0, 3.0});
  CHECK(g.vertex_count() == 4);
  CHECK(g.edge_count() == 3);
  CHECK(g.bond_count() == 6);
  CHECK(g.degree(0) == 3);
  CHECK(fundamental_cycles(g).beta == 0);
}

TEST_CASE("mandarin has beta 2") {
  const MetricGraph g = oracles::mandarin({1.0, 1.5, 2.0});
  CHECK(g.vertex_count() == 2);
  CHECK(g.degree(0) == 3);
  CHECK(g.degree(1) == 3);
  const CycleBasis basis = fundamental_cycles(g);
  CHECK(basis.beta == 2);
  CHECK(basis.chords == std::vector<int>{1, 2});
  for (const auto& cycle : basis.cycles) CHECK(cycle.size() == 2);
}

TEST_CASE("builder validation errors") {
  GraphBuilder empty;
  empty.add_vertex();
  CHECK_THROWS_AS(empty.build(), EmptyGraph);

  GraphBuilder dangling;
  dangling.add_vertex();
  dangling.add_edge(0, 3, 1.0);
  CHECK_THROWS_AS(dangling.build(), DanglingEndpoint);

  GraphBuilder zero_len;
  zero_len.add_vertex();
  zero_len.add_vertex();
  zero_len.add_edge(0, 1, 0.0);
  CHECK_THROWS_AS(zero_len.build(), NonPositiveLength);
}

TEST_CASE("Dirichlet vertices of degree >= 2 split into leaves") {
  GraphBuilder b;
  b.add_vertex(VertexCondition::Dirichlet);  // center
  for (int i = 0; i < 3; ++i) {
    b.add_vertex(VertexCondition::Neumann);
    b.add_edge(0, i + 1, 1.0 + i);
  }
  const MetricGraph g = b.build();
  CHECK(g.vertex_count() == 6);  // center split into three
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.condition(v) == VertexCondition::Dirichlet) CHECK(g.degree(v) == 1);
  }
  CHECK(g.component_count() == 3);
  CHECK(g.zero_mode_multiplicity() == 0);
}

TEST_CASE("reversal is a fixed-point-free involution") {
  for (const auto& entry : random_corpus(1234, 8)) {
    const MetricGraph& g = entry.graph;
    for (int b = 0; b < g.bond_count(); ++b) {
      CHECK(g.reversal(b) != b);
      CHECK(g.reversal(g.reversal(b)) == b);
      CHECK(g.bond_edge(g.reversal(b)) == g.bond_edge(b));
      CHECK(g.bond_origin(g.reversal(b)) == g.bond_terminus(b));
    }
  }
}

TEST_CASE("degree sum is twice the edge count") {
  for (const auto& entry : random_corpus(77, 12)) {
    const MetricGraph& g = entry.graph;
    int sum = 0;
    for (int v = 0; v < g.vertex_count(); ++v) sum += g.degree(v);
    CHECK(sum == 2 * g.edge_count());
  }
}

TEST_CASE("loop edges yield two bonds with equal endpoints") {
  const MetricGraph g = oracles::lasso(1.0, 2.0);
  const int loop = 1;
  CHECK(g.bond_origin(loop) == g.bond_terminus(loop));
  CHECK(g.bond_origin(loop + 2) == g.bond_terminus(loop + 2));
  CHECK(g.degree(0) == 3);
  const CycleBasis basis = fundamental_cycles(g);
  REQUIRE(basis.beta == 1);
  CHECK(basis.chords[0] == 1);
  CHECK(basis.cycles[0] == std::vector<int>{1});
}

TEST_CASE("degree-2 Neumann suppression fuses edges") {
  SECTION("two consecutive intervals") {
    GraphBuilder b;
    b.add_vertex();
    b.add_vertex();
    b.add_vertex();
    b.add_edge(0, 1, 1.25);
    b.add_edge(1, 2, 0.75);
    const MetricGraph g = suppress_degree2_neumann(b.build());
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 1);
    CHECK(g.edge(0).length == 2.0);
  }
  SECTION("triangle with two dummy vertices becomes a loop") {
    GraphBuilder b;
    b.add_vertex();  // attachment, kept at degree 2 only if loop forms later
    b.add_vertex();
    b.add_vertex();
    b.add_vertex();
    b.add_edge(0, 1, 0.5);   // tail to make vertex 0 degree 3
    b.add_edge(1, 2, 1.0);
    b.add_edge(2, 3, 1.0);
    b.add_edge(3, 1, 1.0);
    const MetricGraph g = suppress_degree2_neumann(b.build());
    CHECK(g.vertex_count() == 2);
    CHECK(g.edge_count() == 2);
    // loop of total length 3 at the attachment vertex
    bool found_loop = false;
    for (const Edge& e : g.edges())
      if (e.u == e.v) {
        found_loop = true;
        CHECK(e.length == 3.0);
      }
    CHECK(found_loop);
  }
  SECTION("no-op and idempotence") {
    const MetricGraph g = oracles::neumann_star({1.0, 2.0, 3.0});
    CHECK(suppress_degree2_neumann(g) == g);
    for (const auto& entry : random_corpus(5, 8)) {
      const MetricGraph once = suppress_degree2_neumann(entry.graph);
      CHECK(suppress_degree2_neumann(once) == once);
    }
  }
  SECTION("a bare circle is left alone") {
    GraphBuilder b;
    b.add_vertex();
    b.add_edge(0, 0, 2.0);
    const MetricGraph g = suppress_degree2_neumann(b.build());
    CHECK(g.vertex_count() == 1);
    CHECK(g.edge_count() == 1);
  }
}

TEST_CASE("modify_condition") {
  const MetricGraph star = oracles::neumann_star({1.0, 2.0, 3.0});
  SECTION("Neumann center to Dirichlet decouples the star") {
    const MetricGraph g =
        modify_condition(star, 0, VertexCondition::Dirichlet);
    CHECK(g.component_count() == 3);
    CHECK(g.vertex_count() == 6);
    CHECK(g.zero_mode_multiplicity() == 0);
  }
  SECTION("Dirichlet leaf back to Neumann") {
    const MetricGraph d = oracles::dirichlet_star({1.0, 2.0, 3.0});
    const MetricGraph g = modify_condition(d, 1, VertexCondition::Neumann);
    CHECK(g.condition(1) == VertexCondition::Neumann);
    CHECK(g.degree(1) == 1);
  }
  SECTION("unknown vertex") {
    CHECK_THROWS_AS(modify_condition(star, 17, VertexCondition::Dirichlet),
                    UnknownVertex);
  }
}

TEST_CASE("merge_vertices") {
  SECTION("two intervals merged at endpoints form a path") {
    GraphBuilder b;
    for (int i = 0; i < 4; ++i) b.add_vertex();
    b.add_edge(0, 1, 1.0);
    b.add_edge(2, 3, 1.5);
    const MetricGraph g = merge_vertices(b.build(), 1, 2);
    CHECK(g.vertex_count() == 3);
    CHECK(g.component_count() == 1);
    const MetricGraph path = suppress_degree2_neumann(g);
    CHECK(path.edge_count() == 1);
    CHECK(path.edge(0).length == 2.5);
  }
  SECTION("merging two leaves of a star adds a cycle") {
    const MetricGraph star = oracles::neumann_star({1.0, 2.0, 3.0});
    CHECK(fundamental_cycles(star).beta == 0);
    const MetricGraph g = merge_vertices(star, 1, 2);
    CHECK(fundamental_cycles(g).beta == 1);
  }
  SECTION("preconditions") {
    const MetricGraph star = oracles::dirichlet_star({1.0, 2.0, 3.0});
    CHECK_THROWS_AS(merge_vertices(star, 0, 0), SameVertex);
    CHECK_THROWS_AS(merge_vertices(star, 0, 1), NotNeumann);
  }
  SECTION("beta increases by one for same-component merges") {
    for (const auto& entry : random_corpus(99, 12)) {
      const MetricGraph& g = entry.graph;
      const auto [v1, v2] = [&] {
        int a = -1, b = -1;
        for (int v = 0; v < g.vertex_count(); ++v) {
          if (g.condition(v) != VertexCondition::Neumann) continue;
          if (a < 0)
            a = v;
          else if (b < 0 && g.component_of(v) == g.component_of(a))
            b = v;
        }
        return std::pair(a, b);
      }();
      if (v1 < 0 || v2 < 0) continue;
      const int beta0 = fundamental_cycles(g).beta;
      CHECK(fundamental_cycles(merge_vertices(g, v1, v2)).beta == beta0 + 1);
    }
  }
}

TEST_CASE("cycle basis of the dihedral family") {
  const MetricGraph g = oracles::dihedral_graph(M_PI, 1.0, std::sqrt(2.0));
  const CycleBasis basis = fundamental_cycles(g);
  REQUIRE(basis.beta == 1);
  CHECK(basis.chords[0] == 2);  // the 2c edge closes the cycle
  // closed walk through the two parallel edges
  REQUIRE(basis.cycles[0].size() == 2);
  CHECK(g.bond_edge(basis.cycles[0][0]) == 2);
  CHECK(g.bond_edge(basis.cycles[0][1]) == 1);

  CHECK(fundamental_cycles(oracles::dihedral_tree(1.0, 0.5, 0.25)).beta == 0);
  CHECK(fundamental_cycles(oracles::dihedral_parent(1, 0.5, 0.25)).beta == 5);
}

TEST_CASE("cycle walks are closed") {
  for (const auto& entry : random_corpus(2024, 16)) {
    const MetricGraph& g = entry.graph;
    const CycleBasis basis = fundamental_cycles(g);
    CHECK(basis.beta ==
          g.edge_count() - g.vertex_count() + g.component_count());
    for (const auto& cycle : basis.cycles) {
      REQUIRE(!cycle.empty());
      for (size_t i = 0; i < cycle.size(); ++i) {
        const int next = cycle[(i + 1) % cycle.size()];
        CHECK(g.bond_terminus(cycle[i]) == g.bond_origin(next));
      }
    }
  }
}
