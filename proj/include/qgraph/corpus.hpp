#pragma once

#include <random>
#include <string>
#include <vector>

#include "qgraph/oracles.hpp"

namespace qgraph {

struct CorpusEntry {
  std::string name;
  MetricGraph graph;
};

/// Seeded corpus of small random graphs: trees, stars with mixed leaf
/// conditions, mandarins and lassos, at most eight edges each. Used by the
/// verification suites and the randomized tests.
inline std::vector<CorpusEntry> random_corpus(unsigned seed, int count = 25) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> len(0.5, 2.5);
  std::vector<CorpusEntry> out;
  for (int i = 0; i < count; ++i) {
    const int kind = i % 4;
    GraphBuilder b;
    std::string name;
    switch (kind) {
      case 0: {  // random tree by random attachment
        std::uniform_int_distribution<int> nedges(2, 7);
        const int ne = nedges(rng);
        b.add_vertex(VertexCondition::Neumann);
        for (int e = 0; e < ne; ++e) {
          std::uniform_int_distribution<int> pick(0, e);
          b.add_vertex(VertexCondition::Neumann);
          b.add_edge(pick(rng), e + 1, len(rng));
        }
        name = "tree" + std::to_string(ne);
        break;
      }
      case 1: {  // star, possibly with Dirichlet leaves
        std::uniform_int_distribution<int> arms(3, 6);
        std::bernoulli_distribution dirichlet(0.4);
        const int n = arms(rng);
        b.add_vertex(VertexCondition::Neumann);
        int nd = 0;
        for (int a = 0; a < n; ++a) {
          const bool d = dirichlet(rng);
          nd += d;
          b.add_vertex(d ? VertexCondition::Dirichlet
                         : VertexCondition::Neumann);
          b.add_edge(0, a + 1, len(rng));
        }
        name = "star" + std::to_string(n) + "d" + std::to_string(nd);
        break;
      }
      case 2: {  // mandarin
        std::uniform_int_distribution<int> edges(3, 5);
        const int n = edges(rng);
        b.add_vertex(VertexCondition::Neumann);
        b.add_vertex(VertexCondition::Neumann);
        for (int e = 0; e < n; ++e) b.add_edge(0, 1, len(rng));
        name = "mandarin" + std::to_string(n);
        break;
      }
      default: {  // lasso
        b.add_vertex(VertexCondition::Neumann);
        b.add_vertex(VertexCondition::Neumann);
        b.add_edge(0, 1, len(rng));
        b.add_edge(0, 0, len(rng));
        name = "lasso";
        break;
      }
    }
    out.push_back({name + "#" + std::to_string(i), b.build()});
  }
  return out;
}

}  // namespace qgraph
