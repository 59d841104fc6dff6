#pragma once

#include <algorithm>
#include <cmath>
#include <numeric>
#include <queue>
#include <utility>
#include <vector>

#include "qgraph/errors.hpp"

namespace qgraph {

enum class VertexCondition { Neumann, Dirichlet };

/// Undirected edge with a positive metric length. The stored (u, v) order
/// fixes the forward direction of the edge (u is the lower endpoint id, or
/// the first one given for a loop).
struct Edge {
  int id;
  int u;
  int v;
  double length;
};

/// Directed bond. Bond b with b < E is the forward direction of edge b;
/// bond b >= E is the reversal of edge b - E. The reversal map is therefore
/// the fixed-point-free involution b <-> b + E (mod 2E).
struct Bond {
  int id;
  int edge;
  int reversal;
  int origin;
  int terminus;
};

class GraphBuilder;

/// Immutable compact metric graph. Dirichlet conditions only ever appear at
/// vertices of degree one; the builder splits higher-degree Dirichlet
/// vertices on construction.
class MetricGraph {
 public:
  int vertex_count() const { return static_cast<int>(conditions_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  int bond_count() const { return 2 * edge_count(); }

  VertexCondition condition(int v) const {
    check_vertex(v);
    return conditions_[v];
  }
  int degree(int v) const {
    check_vertex(v);
    return degrees_[v];
  }
  const Edge& edge(int e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }

  int reversal(int b) const { return (b + edge_count()) % bond_count(); }
  int bond_edge(int b) const { return b % edge_count(); }
  int bond_origin(int b) const {
    const Edge& e = edges_[b % edge_count()];
    return b < edge_count() ? e.u : e.v;
  }
  int bond_terminus(int b) const {
    const Edge& e = edges_[b % edge_count()];
    return b < edge_count() ? e.v : e.u;
  }
  double bond_length(int b) const { return edges_[b % edge_count()].length; }
  Bond bond(int b) const {
    return Bond{b, bond_edge(b), reversal(b), bond_origin(b),
                bond_terminus(b)};
  }

  /// Bonds whose origin is v, sorted by (edge id, bond id).
  const std::vector<int>& outgoing_bonds(int v) const {
    check_vertex(v);
    return out_bonds_[v];
  }

  double total_length() const { return total_length_; }

  int component_count() const { return component_count_; }
  int component_of(int v) const {
    check_vertex(v);
    return component_[v];
  }

  /// Multiplicity of the eigenvalue zero (flux-free case): one constant mode
  /// per edge-bearing connected component without a Dirichlet vertex.
  int zero_mode_multiplicity() const {
    std::vector<char> has_edge(component_count_, 0);
    std::vector<char> has_dirichlet(component_count_, 0);
    for (const Edge& e : edges_) {
      has_edge[component_[e.u]] = 1;
      has_edge[component_[e.v]] = 1;
    }
    for (int v = 0; v < vertex_count(); ++v)
      if (conditions_[v] == VertexCondition::Dirichlet)
        has_dirichlet[component_[v]] = 1;
    int m = 0;
    for (int c = 0; c < component_count_; ++c)
      if (has_edge[c] && !has_dirichlet[c]) ++m;
    return m;
  }

  bool has_dirichlet() const {
    return std::any_of(conditions_.begin(), conditions_.end(), [](auto c) {
      return c == VertexCondition::Dirichlet;
    });
  }

  bool operator==(const MetricGraph& o) const {
    if (conditions_ != o.conditions_ || edges_.size() != o.edges_.size())
      return false;
    for (size_t i = 0; i < edges_.size(); ++i) {
      const Edge &a = edges_[i], &b = o.edges_[i];
      if (a.u != b.u || a.v != b.v || a.length != b.length) return false;
    }
    return true;
  }
  bool operator!=(const MetricGraph& o) const { return !(*this == o); }

 private:
  friend class GraphBuilder;
  MetricGraph() = default;

  void check_vertex(int v) const {
    if (v < 0 || v >= static_cast<int>(conditions_.size()))
      throw UnknownVertex("vertex " + std::to_string(v) + " does not exist");
  }

  std::vector<VertexCondition> conditions_;
  std::vector<Edge> edges_;
  std::vector<int> degrees_;
  std::vector<std::vector<int>> out_bonds_;
  std::vector<int> component_;
  int component_count_ = 0;
  double total_length_ = 0.0;
};

/// Accumulates vertices and edges, validates them and produces an immutable
/// MetricGraph. Degree >= 2 Dirichlet vertices are normalized into separate
/// degree-1 Dirichlet leaves, one per incident edge end.
class GraphBuilder {
 public:
  int add_vertex(VertexCondition c = VertexCondition::Neumann) {
    conditions_.push_back(c);
    return static_cast<int>(conditions_.size()) - 1;
  }

  int add_edge(int u, int v, double length) {
    raw_edges_.push_back({u, v, length});
    return static_cast<int>(raw_edges_.size()) - 1;
  }

  MetricGraph build() const {
    if (raw_edges_.empty()) throw EmptyGraph("graph has no edges");
    const int nv = static_cast<int>(conditions_.size());
    for (size_t i = 0; i < raw_edges_.size(); ++i) {
      const RawEdge& e = raw_edges_[i];
      if (e.u < 0 || e.u >= nv || e.v < 0 || e.v >= nv)
        throw DanglingEndpoint("edge " + std::to_string(i) +
                               " references an undeclared vertex");
      if (!(e.length > 0.0) || !std::isfinite(e.length))
        throw NonPositiveLength("edge " + std::to_string(i) +
                                " has non-positive length");
    }

    std::vector<VertexCondition> conds = conditions_;
    std::vector<RawEdge> edges = raw_edges_;

    // Split every Dirichlet vertex of degree >= 2: the first incident edge
    // end keeps the vertex id, later ends get fresh Dirichlet leaves.
    std::vector<int> deg(conds.size(), 0);
    for (const RawEdge& e : edges) {
      ++deg[e.u];
      ++deg[e.v];
    }
    for (int v = 0; v < nv; ++v) {
      if (conds[v] != VertexCondition::Dirichlet || deg[v] < 2) continue;
      bool first = true;
      for (RawEdge& e : edges) {
        for (int* end : {&e.u, &e.v}) {
          if (*end != v) continue;
          if (first) {
            first = false;
            continue;
          }
          conds.push_back(VertexCondition::Dirichlet);
          *end = static_cast<int>(conds.size()) - 1;
        }
      }
    }

    MetricGraph g;
    g.conditions_ = std::move(conds);
    g.edges_.reserve(edges.size());
    for (size_t i = 0; i < edges.size(); ++i) {
      RawEdge e = edges[i];
      if (e.u > e.v) std::swap(e.u, e.v);
      g.edges_.push_back(Edge{static_cast<int>(i), e.u, e.v, e.length});
      g.total_length_ += e.length;
    }

    const int n = g.vertex_count();
    const int ne = g.edge_count();
    g.degrees_.assign(n, 0);
    g.out_bonds_.assign(n, {});
    for (int b = 0; b < 2 * ne; ++b) {
      const int o = g.bond_origin(b);
      ++g.degrees_[o];
      g.out_bonds_[o].push_back(b);
    }
    for (auto& bonds : g.out_bonds_)
      std::sort(bonds.begin(), bonds.end(), [ne](int a, int b) {
        return std::pair(a % ne, a) < std::pair(b % ne, b);
      });

    // connected components (vertices without edges form their own)
    g.component_.assign(n, -1);
    int comp = 0;
    for (int start = 0; start < n; ++start) {
      if (g.component_[start] >= 0) continue;
      std::queue<int> q;
      q.push(start);
      g.component_[start] = comp;
      while (!q.empty()) {
        int v = q.front();
        q.pop();
        for (int b : g.out_bonds_[v]) {
          int w = g.bond_terminus(b);
          if (g.component_[w] < 0) {
            g.component_[w] = comp;
            q.push(w);
          }
        }
      }
      ++comp;
    }
    g.component_count_ = comp;
    return g;
  }

 private:
  struct RawEdge {
    int u, v;
    double length;
  };
  std::vector<VertexCondition> conditions_;
  std::vector<RawEdge> raw_edges_;
};

/// Removes every Neumann vertex of degree two by fusing its two incident
/// edge ends into a single edge of summed length. Spectrum preserving.
/// A vertex carrying both ends of one loop is left alone (a bare circle has
/// no vertex-free representation).
inline MetricGraph suppress_degree2_neumann(const MetricGraph& g0) {
  std::vector<VertexCondition> conds;
  struct E {
    int u, v;
    double len;
  };
  std::vector<E> edges;
  conds.reserve(g0.vertex_count());
  for (int v = 0; v < g0.vertex_count(); ++v) conds.push_back(g0.condition(v));
  for (const Edge& e : g0.edges()) edges.push_back({e.u, e.v, e.length});

  for (;;) {
    // lowest-id eligible vertex
    int victim = -1;
    int ea = -1, eb = -1;
    for (int v = 0; v < static_cast<int>(conds.size()) && victim < 0; ++v) {
      if (conds[v] != VertexCondition::Neumann) continue;
      std::vector<int> incident;
      for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
        if (edges[i].u == v) incident.push_back(i);
        if (edges[i].v == v) incident.push_back(i);
      }
      if (incident.size() != 2) continue;
      if (incident[0] == incident[1]) continue;  // loop: skip
      victim = v;
      ea = incident[0];
      eb = incident[1];
    }
    if (victim < 0) break;

    const int far_a = edges[ea].u == victim ? edges[ea].v : edges[ea].u;
    const int far_b = edges[eb].u == victim ? edges[eb].v : edges[eb].u;
    edges[ea] = {far_a, far_b, edges[ea].len + edges[eb].len};
    edges.erase(edges.begin() + eb);

    for (E& e : edges) {
      if (e.u > victim) --e.u;
      if (e.v > victim) --e.v;
    }
    conds.erase(conds.begin() + victim);
  }

  GraphBuilder b;
  for (VertexCondition c : conds) b.add_vertex(c);
  for (const E& e : edges) b.add_edge(e.u, e.v, e.len);
  return b.build();
}

/// Returns a copy of the graph with the condition at one vertex swapped.
/// Changing Neumann to Dirichlet at degree d >= 2 splits the vertex into d
/// Dirichlet leaves (handled by the builder normalization).
inline MetricGraph modify_condition(const MetricGraph& g, int vertex,
                                    VertexCondition c) {
  if (vertex < 0 || vertex >= g.vertex_count())
    throw UnknownVertex("vertex " + std::to_string(vertex) +
                        " does not exist");
  GraphBuilder b;
  for (int v = 0; v < g.vertex_count(); ++v)
    b.add_vertex(v == vertex ? c : g.condition(v));
  for (const Edge& e : g.edges()) b.add_edge(e.u, e.v, e.length);
  return b.build();
}

/// Merges two Neumann vertices into one Neumann vertex of summed degree.
/// The merged vertex takes the lower of the two ids; ids above the higher
/// one shift down by one.
inline MetricGraph merge_vertices(const MetricGraph& g, int v1, int v2) {
  if (v1 < 0 || v1 >= g.vertex_count() || v2 < 0 || v2 >= g.vertex_count())
    throw UnknownVertex("merge_vertices: vertex does not exist");
  if (v1 == v2) throw SameVertex("merge_vertices: identical vertices");
  if (g.condition(v1) != VertexCondition::Neumann ||
      g.condition(v2) != VertexCondition::Neumann)
    throw NotNeumann("merge_vertices: both vertices must be Neumann");

  const int lo = std::min(v1, v2), hi = std::max(v1, v2);
  auto remap = [&](int v) {
    if (v == hi) return lo;
    return v > hi ? v - 1 : v;
  };
  GraphBuilder b;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (v != hi) b.add_vertex(g.condition(v));
  for (const Edge& e : g.edges()) b.add_edge(remap(e.u), remap(e.v), e.length);
  return b.build();
}

/// Disjoint union; vertices of b are shifted past those of a.
inline MetricGraph disjoint_union(const MetricGraph& a, const MetricGraph& b) {
  GraphBuilder bd;
  for (int v = 0; v < a.vertex_count(); ++v) bd.add_vertex(a.condition(v));
  const int off = a.vertex_count();
  for (int v = 0; v < b.vertex_count(); ++v) bd.add_vertex(b.condition(v));
  for (const Edge& e : a.edges()) bd.add_edge(e.u, e.v, e.length);
  for (const Edge& e : b.edges()) bd.add_edge(e.u + off, e.v + off, e.length);
  return bd.build();
}

/// Fundamental cycle basis from a breadth-first spanning forest.
struct CycleBasis {
  int beta = 0;
  /// Each cycle is a closed bond walk; cycles[i][0] is the forward bond of
  /// the chord edge chords[i].
  std::vector<std::vector<int>> cycles;
  std::vector<int> chords;  // edge ids, one per cycle, sorted
};

/// BFS spanning tree rooted at the lowest vertex id of each component, ties
/// between parallel edges broken by edge id; every non-tree edge closes one
/// basis cycle through the tree.
inline CycleBasis fundamental_cycles(const MetricGraph& g) {
  const int n = g.vertex_count();
  const int ne = g.edge_count();
  std::vector<int> parent_bond(n, -1);  // tree bond parent -> vertex
  std::vector<int> depth(n, -1);
  std::vector<char> tree_edge(ne, 0);

  for (int start = 0; start < n; ++start) {
    if (depth[start] >= 0) continue;
    depth[start] = 0;
    std::queue<int> q;
    q.push(start);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int b : g.outgoing_bonds(v)) {  // edge-id order
        int w = g.bond_terminus(b);
        if (depth[w] >= 0) continue;
        depth[w] = depth[v] + 1;
        parent_bond[w] = b;
        tree_edge[g.bond_edge(b)] = 1;
        q.push(w);
      }
    }
  }

  CycleBasis basis;
  for (int e = 0; e < ne; ++e) {
    if (tree_edge[e]) continue;
    basis.chords.push_back(e);
    const Edge& ed = g.edge(e);
    std::vector<int> walk;
    walk.push_back(e);  // forward bond of chord: u -> v
    if (ed.u != ed.v) {
      // tree path v -> u: climb both endpoints to their LCA
      std::vector<int> up_v, up_u;
      int x = ed.v, y = ed.u;
      while (depth[x] > depth[y]) {
        up_v.push_back(g.reversal(parent_bond[x]));
        x = g.bond_origin(parent_bond[x]);
      }
      while (depth[y] > depth[x]) {
        up_u.push_back(parent_bond[y]);
        y = g.bond_origin(parent_bond[y]);
      }
      while (x != y) {
        up_v.push_back(g.reversal(parent_bond[x]));
        x = g.bond_origin(parent_bond[x]);
        up_u.push_back(parent_bond[y]);
        y = g.bond_origin(parent_bond[y]);
      }
      walk.insert(walk.end(), up_v.begin(), up_v.end());
      walk.insert(walk.end(), up_u.rbegin(), up_u.rend());
    }
    basis.cycles.push_back(std::move(walk));
  }
  basis.beta = static_cast<int>(basis.chords.size());
  return basis;
}

}  // namespace qgraph
