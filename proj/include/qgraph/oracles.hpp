#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "qgraph/secular.hpp"

namespace qgraph {
namespace oracles {

// ---------------------------------------------------------------------------
// graph builders for the worked examples
// ---------------------------------------------------------------------------

inline MetricGraph interval(double L, VertexCondition left,
                            VertexCondition right) {
  GraphBuilder b;
  b.add_vertex(left);
  b.add_vertex(right);
  b.add_edge(0, 1, L);
  return b.build();
}

/// Star with the center at vertex 0 and the given leaf condition.
inline MetricGraph star(const std::vector<double>& lengths,
                        VertexCondition leaf_condition) {
  GraphBuilder b;
  b.add_vertex(VertexCondition::Neumann);
  for (size_t i = 0; i < lengths.size(); ++i) {
    b.add_vertex(leaf_condition);
    b.add_edge(0, static_cast<int>(i) + 1, lengths[i]);
  }
  return b.build();
}

inline MetricGraph neumann_star(const std::vector<double>& lengths) {
  return star(lengths, VertexCondition::Neumann);
}

inline MetricGraph dirichlet_star(const std::vector<double>& lengths) {
  return star(lengths, VertexCondition::Dirichlet);
}

/// Edge of length L1 from the attachment vertex 0 to the tip 1, plus a loop
/// of length L2 at vertex 0; the tip carries the Neumann condition.
inline MetricGraph lasso(double L1, double L2) {
  GraphBuilder b;
  b.add_vertex(VertexCondition::Neumann);
  b.add_vertex(VertexCondition::Neumann);
  b.add_edge(0, 1, L1);
  b.add_edge(0, 0, L2);
  return b.build();
}

/// Two vertices joined by parallel edges.
inline MetricGraph mandarin(const std::vector<double>& lengths) {
  GraphBuilder b;
  b.add_vertex(VertexCondition::Neumann);
  b.add_vertex(VertexCondition::Neumann);
  for (double L : lengths) b.add_edge(0, 1, L);
  return b.build();
}

/// Dirichlet tip - a - junction = {2b, 2c} = junction - a - Neumann tip.
/// The cycle is the pair of parallel edges of lengths 2b and 2c.
inline MetricGraph dihedral_graph(double a, double b, double c) {
  GraphBuilder gb;
  gb.add_vertex(VertexCondition::Dirichlet);
  gb.add_vertex(VertexCondition::Neumann);
  gb.add_vertex(VertexCondition::Neumann);
  gb.add_vertex(VertexCondition::Neumann);
  gb.add_edge(0, 1, a);
  gb.add_edge(1, 2, 2.0 * b);
  gb.add_edge(1, 2, 2.0 * c);
  gb.add_edge(2, 3, a);
  return gb.build();
}

/// The isospectral partner tree: a center edge of length 2a whose ends each
/// carry pendant edges of lengths b and c; Neumann tips on one side,
/// Dirichlet tips on the other.
inline MetricGraph dihedral_tree(double a, double b, double c) {
  GraphBuilder gb;
  gb.add_vertex(VertexCondition::Neumann);   // 0: junction with Neumann tips
  gb.add_vertex(VertexCondition::Neumann);   // 1: junction with Dirichlet tips
  gb.add_vertex(VertexCondition::Neumann);   // 2: tip of b pendant
  gb.add_vertex(VertexCondition::Neumann);   // 3: tip of c pendant
  gb.add_vertex(VertexCondition::Dirichlet); // 4
  gb.add_vertex(VertexCondition::Dirichlet); // 5
  gb.add_edge(0, 1, 2.0 * a);
  gb.add_edge(0, 2, b);
  gb.add_edge(0, 3, c);
  gb.add_edge(1, 4, b);
  gb.add_edge(1, 5, c);
  return gb.build();
}

/// Complete graph on four vertices with 3-fold symmetric lengths: the three
/// edges among the outer vertices 1, 2, 3 have length a and the three
/// spokes from vertex 0 have length b.
inline MetricGraph tetrahedron(double a, double b) {
  GraphBuilder gb;
  for (int i = 0; i < 4; ++i) gb.add_vertex(VertexCondition::Neumann);
  gb.add_edge(1, 2, a);
  gb.add_edge(2, 3, a);
  gb.add_edge(1, 3, a);
  gb.add_edge(0, 1, b);
  gb.add_edge(0, 2, b);
  gb.add_edge(0, 3, b);
  return gb.build();
}

/// The graph with the full dihedral (square) symmetry whose quotients are
/// the dihedral graph and tree: an octagon alternating corner pairs, with
/// every quarter doubled. Eight Neumann vertices, four edges of length 2a
/// on the axes and a {2b, 2c} double edge in every quarter.
inline MetricGraph dihedral_parent(double a, double b, double c) {
  GraphBuilder gb;
  for (int i = 0; i < 8; ++i) gb.add_vertex(VertexCondition::Neumann);
  // vertices 0..3: cycle-side corners (TR, TL, BR, BL)
  // vertices 4..7: tip-side corners   (TR, BR, TL, BL)
  gb.add_edge(0, 1, 2.0 * a);  // top
  gb.add_edge(2, 3, 2.0 * a);  // bottom
  gb.add_edge(4, 5, 2.0 * a);  // right
  gb.add_edge(6, 7, 2.0 * a);  // left
  const int quarters[4][2] = {{0, 4}, {1, 6}, {2, 5}, {3, 7}};
  for (const auto& q : quarters) {
    gb.add_edge(q[0], q[1], 2.0 * b);
    gb.add_edge(q[0], q[1], 2.0 * c);
  }
  return gb.build();
}

// ---------------------------------------------------------------------------
// closed-form spectra and secular functions
// ---------------------------------------------------------------------------

/// Interval spectrum in k, Neumann/Dirichlet ends in any combination:
/// NN and DD give pi n / L (NN also has the zero mode, reported separately);
/// mixed ends give (n - 1/2) pi / L.
inline std::vector<double> interval_spectrum(double L, VertexCondition left,
                                             VertexCondition right,
                                             double k_max) {
  std::vector<double> ks;
  const bool mixed = left != right;
  for (int n = 1;; ++n) {
    const double k = mixed ? (n - 0.5) * M_PI / L : n * M_PI / L;
    if (k > k_max) break;
    ks.push_back(k);
  }
  return ks;
}

/// Robust three-edge Neumann star secular form:
/// sin cos cos + cos sin cos + cos cos sin. Root order equals eigenvalue
/// multiplicity.
inline double star_secular_neumann(const std::vector<double>& L, double k) {
  const double s1 = std::sin(k * L[0]), c1 = std::cos(k * L[0]);
  const double s2 = std::sin(k * L[1]), c2 = std::cos(k * L[1]);
  const double s3 = std::sin(k * L[2]), c3 = std::cos(k * L[2]);
  return s1 * c2 * c3 + c1 * s2 * c3 + c1 * c2 * s3;
}

/// Dirichlet star secular form for any number of edges:
/// sum_i cos(k L_i) prod_{j != i} sin(k L_j), the pole-free version of the
/// cotangent sum condition.
inline double star_secular_dirichlet(const std::vector<double>& L, double k) {
  const size_t n = L.size();
  double total = 0.0;
  for (size_t i = 0; i < n; ++i) {
    double term = std::cos(k * L[i]);
    for (size_t j = 0; j < n; ++j)
      if (j != i) term *= std::sin(k * L[j]);
    total += term;
  }
  return total;
}

inline Complex lasso_secular(double L1, double L2, double k) {
  const Complex z1 = std::polar(1.0, k * L1);
  const Complex z2 = std::polar(1.0, k * L2);
  return (z2 - 1.0) * (3.0 * z1 * z1 * z2 - z1 * z1 + z2 - 3.0) / 3.0;
}

/// Product of the symmetric and antisymmetric star factors with z in place
/// of z^2.
inline Complex mandarin_secular(double L1, double L2, double L3, double k) {
  const Complex z1 = std::polar(1.0, k * L1);
  const Complex z2 = std::polar(1.0, k * L2);
  const Complex z3 = std::polar(1.0, k * L3);
  const Complex even = -z1 * z2 * z3 - (z1 * z2 + z2 * z3 + z3 * z1) / 3.0 +
                       (z1 + z2 + z3) / 3.0 + 1.0;
  const Complex odd = z1 * z2 * z3 - (z1 * z2 + z2 * z3 + z3 * z1) / 3.0 -
                      (z1 + z2 + z3) / 3.0 + 1.0;
  return even * odd;
}

/// Full complex secular polynomial of the three-edge Neumann star.
inline Complex star_secular_neumann_full(const std::vector<double>& L,
                                         double k) {
  const Complex z1 = std::polar(1.0, 2.0 * k * L[0]);
  const Complex z2 = std::polar(1.0, 2.0 * k * L[1]);
  const Complex z3 = std::polar(1.0, 2.0 * k * L[2]);
  return -z1 * z2 * z3 - (z1 * z2 + z2 * z3 + z3 * z1) / 3.0 +
         (z1 + z2 + z3) / 3.0 + 1.0;
}

/// Full complex secular polynomial of the three-edge Dirichlet star.
inline Complex star_secular_dirichlet_full(const std::vector<double>& L,
                                           double k) {
  const Complex z1 = std::polar(1.0, 2.0 * k * L[0]);
  const Complex z2 = std::polar(1.0, 2.0 * k * L[1]);
  const Complex z3 = std::polar(1.0, 2.0 * k * L[2]);
  return z1 * z2 * z3 - (z1 * z2 + z2 * z3 + z3 * z1) / 3.0 -
         (z1 + z2 + z3) / 3.0 + 1.0;
}

/// Secular polynomial of the dihedral graph with flux alpha through its
/// cycle; alpha = 0 recovers the flux-free form.
inline Complex dihedral_secular(double a, double b, double c, double k,
                                double alpha = 0.0) {
  const Complex za = std::polar(1.0, k * a);
  const Complex zb = std::polar(1.0, k * b);
  const Complex zc = std::polar(1.0, k * c);
  const Complex za4 = za * za * za * za;
  const Complex zb4 = zb * zb * zb * zb;
  const Complex zc4 = zc * zc * zc * zc;
  const Complex zb2zc2 = zb * zb * zc * zc;
  return -za4 * zb4 * zc4 + (za4 * zb4 + zb4 * zc4 + zc4 * za4) / 9.0 +
         (8.0 / 9.0) * std::cos(alpha) * (za4 - 1.0) * zb2zc2 -
         (za4 + zb4 + zc4) / 9.0 + 1.0;
}

/// Factors of the tetrahedron secular determinant, one per irreducible
/// symmetry class (the last one enters squared).
inline std::vector<Complex> tetrahedron_factors(double a, double b, double k) {
  const Complex za = std::polar(1.0, k * a);
  const Complex zb = std::polar(1.0, k * b);
  const Complex zb2 = zb * zb;
  return {
      za - 1.0,
      3.0 * za * zb2 - zb2 + za - 3.0,
      3.0 * za * za * zb2 + 2.0 * za * zb2 - za * za + zb2 - 2.0 * za - 3.0,
  };
}

inline Complex tetrahedron_secular(double a, double b, double k) {
  const auto f = tetrahedron_factors(a, b, k);
  return f[0] * f[1] * f[2] * f[2] / 27.0;
}

/// Factors of the parent dihedral-symmetry graph: the doubled quotient
/// factor (nine times the dihedral secular polynomial, sign flipped)
/// followed by the four one-dimensional symmetry factors. The full
/// determinant is their product, the first factor squared, divided by 6561.
inline std::vector<Complex> dihedral_parent_factors(double a, double b,
                                                    double c, double k) {
  const Complex za2 = std::polar(1.0, 2.0 * k * a);
  const Complex zb2 = std::polar(1.0, 2.0 * k * b);
  const Complex zc2 = std::polar(1.0, 2.0 * k * c);
  const Complex f2 = 3.0 * za2 * zb2 * zc2 + za2 * zb2 + zb2 * zc2 +
                     zc2 * za2 - za2 - zb2 - zc2 - 3.0;
  const Complex f3 = 3.0 * za2 * zb2 * zc2 + za2 * zb2 - zb2 * zc2 +
                     zc2 * za2 - za2 + zb2 + zc2 + 3.0;
  const Complex f4 = 3.0 * za2 * zb2 * zc2 - za2 * zb2 + zb2 * zc2 -
                     zc2 * za2 - za2 + zb2 + zc2 - 3.0;
  const Complex f5 = 3.0 * za2 * zb2 * zc2 - za2 * zb2 - zb2 * zc2 -
                     zc2 * za2 - za2 - zb2 - zc2 + 3.0;
  return {-9.0 * dihedral_secular(a, b, c, k), f2, f3, f4, f5};
}

inline Complex dihedral_parent_secular(double a, double b, double c,
                                       double k) {
  const auto f = dihedral_parent_factors(a, b, c, k);
  return f[0] * f[0] * f[1] * f[2] * f[3] * f[4] / 6561.0;
}

// ---------------------------------------------------------------------------
// determinant identity
// ---------------------------------------------------------------------------

struct DetSReport {
  int det_lu = 0;
  int det_formula = 0;
  bool ok = false;
};

/// det S = (-1)^(|E| - |V| + n) with n the number of degree-1 Dirichlet
/// vertices; compares the LU value against the formula.
inline DetSReport verify_det_s(const MetricGraph& g) {
  DetSReport rep;
  rep.det_lu = scattering_matrix(g).det_S;
  int n_dirichlet = 0;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.condition(v) == VertexCondition::Dirichlet) ++n_dirichlet;
  const int exponent = g.edge_count() - g.vertex_count() + n_dirichlet;
  rep.det_formula = (exponent % 2 + 2) % 2 == 0 ? 1 : -1;
  rep.ok = rep.det_lu == rep.det_formula;
  return rep;
}

inline void require_det_s(const MetricGraph& g) {
  const DetSReport rep = verify_det_s(g);
  if (!rep.ok)
    throw DetSMismatch("det S from LU is " + std::to_string(rep.det_lu) +
                       " but the sign formula gives " +
                       std::to_string(rep.det_formula));
}

}  // namespace oracles
}  // namespace qgraph
