#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "qgraph/solver.hpp"

namespace qgraph {

/// One eigenfunction in the per-edge form
///   f_e(x) = a_e exp(ikx) + a_{e'} exp(ik(L_e - x)),
/// with x measured from the edge's lower endpoint. Coefficients are stored
/// in bond order (forward coefficients first).
struct Eigenfunction {
  double k = 0.0;
  int index_n = 0;  // 1-based spectral index, multiplicities expanded
  Eigen::VectorXcd coefficients;
  bool is_real_normalized = false;
  double max_condition_residual = 0.0;  // vertex-condition residual, relative
  double max_imag_residual = 0.0;       // sup |Im f| / sup |f| after rotation

  Complex value(const MetricGraph& g, int edge, double x) const {
    const int ne = g.edge_count();
    const double L = g.edge(edge).length;
    return coefficients(edge) * std::polar(1.0, k * x) +
           coefficients(edge + ne) * std::polar(1.0, k * (L - x));
  }

  /// Derivative along increasing x.
  Complex derivative(const MetricGraph& g, int edge, double x) const {
    const int ne = g.edge_count();
    const double L = g.edge(edge).length;
    const Complex i(0.0, 1.0);
    return i * k * coefficients(edge) * std::polar(1.0, k * x) -
           i * k * coefficients(edge + ne) * std::polar(1.0, k * (L - x));
  }

  Complex value_at_vertex(const MetricGraph& g, int v) const {
    for (int b : g.outgoing_bonds(v)) {
      const int e = g.bond_edge(b);
      return value(g, e, b < g.edge_count() ? 0.0 : g.edge(e).length);
    }
    return 0.0;  // isolated vertex
  }

  double sup_norm(const MetricGraph& g, int samples_per_edge = 64) const {
    double m = 0.0;
    for (int e = 0; e < g.edge_count(); ++e) {
      const double L = g.edge(e).length;
      for (int i = 0; i <= samples_per_edge; ++i)
        m = std::max(m, std::abs(value(g, e, L * i / samples_per_edge)));
    }
    return m;
  }

  /// Real cosine-phase form on one edge: f = A cos(kx) + B sin(kx).
  /// Only meaningful after real normalization.
  std::pair<double, double> real_form(const MetricGraph& g, int edge) const {
    const int ne = g.edge_count();
    const Complex zl = std::polar(1.0, k * g.edge(edge).length);
    const Complex A = coefficients(edge) + coefficients(edge + ne) * zl;
    const Complex B =
        Complex(0, 1) * (coefficients(edge) - coefficients(edge + ne) * zl);
    return {A.real(), B.real()};
  }
};

namespace detail {

/// Locate the spectral slot of the 1-based expanded index n.
struct SpectralSlot {
  bool is_zero_mode = false;
  double k = 0.0;
  int multiplicity = 1;
};

inline SpectralSlot spectral_slot(const Spectrum& s, int n) {
  if (n < 1 || n > s.total_count())
    throw Error("spectral index " + std::to_string(n) +
                " outside the computed range (have " +
                std::to_string(s.total_count()) + ")");
  if (n <= s.lambda0_multiplicity)
    return {true, 0.0, s.lambda0_multiplicity};
  int left = n - s.lambda0_multiplicity;
  for (const RootInfo& r : s.roots) {
    if (left <= r.multiplicity) return {false, r.k, r.multiplicity};
    left -= r.multiplicity;
  }
  throw Error("spectral index bookkeeping failure");
}

inline double vertex_condition_residual(const MetricGraph& g,
                                        const Eigenfunction& f) {
  const int ne = g.edge_count();
  double sup = f.sup_norm(g);
  if (sup <= 0.0) return 1.0;
  double worst = 0.0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto& bonds = g.outgoing_bonds(v);
    if (bonds.empty()) continue;
    if (g.condition(v) == VertexCondition::Dirichlet) {
      for (int b : bonds) {
        const int e = g.bond_edge(b);
        const double x = b < ne ? 0.0 : g.edge(e).length;
        worst = std::max(worst, std::abs(f.value(g, e, x)) / sup);
      }
      continue;
    }
    Complex ref = 0.0;
    bool have_ref = false;
    Complex deriv_sum = 0.0;
    for (int b : bonds) {
      const int e = g.bond_edge(b);
      const bool at_origin = b < ne;
      const double x = at_origin ? 0.0 : g.edge(e).length;
      const Complex val = f.value(g, e, x);
      // derivative directed from the vertex into the edge
      const Complex der =
          at_origin ? f.derivative(g, e, x) : -f.derivative(g, e, x);
      if (!have_ref) {
        ref = val;
        have_ref = true;
      } else {
        worst = std::max(worst, std::abs(val - ref) / sup);
      }
      deriv_sum += der;
    }
    worst = std::max(worst, std::abs(deriv_sum) / (std::max(f.k, 1.0) * sup));
  }
  return worst;
}

}  // namespace detail

/// All null-space coefficient vectors at the n-th eigenvalue, without
/// normalization; companion to reconstruct() for degenerate levels.
inline std::vector<Eigenfunction> reconstruct_basis(
    const MetricGraph& g, const Spectrum& s, int n,
    const FluxAssignment& flux = {}, double null_tol = 1e-8) {
  const auto slot = detail::spectral_slot(s, n);
  if (slot.is_zero_mode)
    throw Error("reconstruct: index " + std::to_string(n) +
                " is the zero mode; it is the constant function");
  SecularEngine eng(g, flux.size() ? flux
                                   : FluxAssignment::zero(
                                         fundamental_cycles(g).beta));
  std::vector<Eigenfunction> out;
  for (const Eigen::VectorXcd& vec : eng.null_space(slot.k, null_tol)) {
    Eigenfunction f;
    f.k = slot.k;
    f.index_n = n;
    f.coefficients = vec;
    f.max_condition_residual = detail::vertex_condition_residual(g, f);
    out.push_back(std::move(f));
  }
  return out;
}

/// Reconstructs the eigenfunction of the n-th eigenvalue (1-based index with
/// multiplicities expanded, zero mode included). Requires a simple level;
/// at zero flux the result is rotated to the real representative. Throws
/// DegenerateEigenvalue for multiple levels and ResidualTooLarge when the
/// reconstruction fails the vertex conditions.
inline Eigenfunction reconstruct(const MetricGraph& g, const Spectrum& s,
                                 int n, double null_tol = 1e-8) {
  const auto slot = detail::spectral_slot(s, n);
  if (slot.is_zero_mode)
    throw Error("reconstruct: index " + std::to_string(n) +
                " is the zero mode; it is the constant function");
  if (slot.multiplicity != 1)
    throw DegenerateEigenvalue(
        "eigenvalue at k = " + std::to_string(slot.k) + " has multiplicity " +
        std::to_string(slot.multiplicity) +
        "; use reconstruct_basis instead");

  SecularEngine eng(g);
  auto vecs = eng.null_space(slot.k, null_tol);
  if (vecs.size() > 1)
    throw DegenerateEigenvalue("null space at k = " + std::to_string(slot.k) +
                               " is " + std::to_string(vecs.size()) +
                               "-dimensional");
  Eigenfunction f;
  f.k = slot.k;
  f.index_n = n;
  f.coefficients = vecs.front();

  // global phase: rotate the largest sampled value onto the positive reals
  Complex best = 0.0;
  for (int e = 0; e < g.edge_count(); ++e) {
    const double L = g.edge(e).length;
    for (int i = 0; i <= 24; ++i) {
      const Complex val = f.value(g, e, L * i / 24.0);
      if (std::abs(val) > std::abs(best)) best = val;
    }
  }
  if (std::abs(best) > 0.0)
    f.coefficients *= std::polar(1.0, -std::arg(best));

  double sup = 0.0, imag = 0.0;
  for (int e = 0; e < g.edge_count(); ++e) {
    const double L = g.edge(e).length;
    for (int i = 0; i <= 96; ++i) {
      const Complex val = f.value(g, e, L * i / 96.0);
      sup = std::max(sup, std::abs(val));
      imag = std::max(imag, std::abs(val.imag()));
    }
  }
  f.max_imag_residual = sup > 0 ? imag / sup : 1.0;
  f.is_real_normalized = f.max_imag_residual < 1e-8;
  f.max_condition_residual = detail::vertex_condition_residual(g, f);
  if (f.max_condition_residual > 1e-8)
    throw ResidualTooLarge("vertex-condition residual " +
                           std::to_string(f.max_condition_residual) +
                           " at k = " + std::to_string(slot.k));
  return f;
}

/// Interior zero census of a real-normalized eigenfunction.
struct NodalData {
  int phi = 0;  // interior zeros, Dirichlet endpoints excluded
  std::vector<std::pair<int, double>> zero_positions;  // (edge, x)
  int surplus = 0;  // phi - (n - 1)
  bool vanishes_on_vertex = false;
};

/// Exact zero count: on each edge the real form A cos(kx) + B sin(kx) is
/// R cos(kx - theta), whose zeros form an explicit lattice intersected with
/// the open edge. Zeros closer than 1e-9 to a vertex are attributed to the
/// vertex: expected (and skipped) at Dirichlet endpoints, an error
/// elsewhere, as is a vertex value below 1e-6 of the sup norm.
inline NodalData count_zeros(const Eigenfunction& f, const MetricGraph& g) {
  if (!f.is_real_normalized)
    throw Error("count_zeros requires a real-normalized eigenfunction");
  const double sup = f.sup_norm(g);
  if (sup <= 0.0) throw VertexZero("eigenfunction vanishes identically");

  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.outgoing_bonds(v).empty()) continue;
    if (g.condition(v) == VertexCondition::Dirichlet) continue;
    if (std::abs(f.value_at_vertex(g, v)) < 1e-6 * sup)
      throw VertexZero("eigenfunction vanishes at vertex " +
                       std::to_string(v) +
                       "; nodal count is not well defined");
  }

  const double vertex_snap = 1e-9;
  NodalData nd;
  for (int e = 0; e < g.edge_count(); ++e) {
    const auto [A, B] = f.real_form(g, e);
    const double R = std::hypot(A, B);
    const double L = g.edge(e).length;
    if (R < 1e-12 * sup)
      throw VertexZero("eigenfunction vanishes on edge " + std::to_string(e));
    const double theta = std::atan2(B, A);
    // zeros at x = (theta + pi/2 + m pi) / k
    const double k = f.k;
    int m = static_cast<int>(
        std::floor((-theta - M_PI / 2.0) / M_PI));  // first candidate below 0
    for (;; ++m) {
      const double x = (theta + M_PI / 2.0 + m * M_PI) / k;
      if (x < -vertex_snap) continue;
      if (x <= vertex_snap) {  // zero at the near vertex
        if (g.condition(g.edge(e).u) != VertexCondition::Dirichlet)
          throw VertexZero("zero within 1e-9 of vertex " +
                           std::to_string(g.edge(e).u));
        continue;
      }
      if (x >= L - vertex_snap) {
        if (x < L + vertex_snap &&
            g.condition(g.edge(e).v) != VertexCondition::Dirichlet)
          throw VertexZero("zero within 1e-9 of vertex " +
                           std::to_string(g.edge(e).v));
        break;
      }
      nd.zero_positions.emplace_back(e, x);
      ++nd.phi;
    }
  }
  nd.surplus = nd.phi - (f.index_n - 1);
  return nd;
}

/// Number of zeros an eigenfunction places on a closed bond walk.
inline int zeros_on_cycle(const NodalData& nd, const MetricGraph& g,
                          const std::vector<int>& cycle) {
  std::vector<char> on(g.edge_count(), 0);
  for (int b : cycle) on[g.bond_edge(b)] = 1;
  int n = 0;
  for (const auto& [e, x] : nd.zero_positions)
    if (on[e]) ++n;
  return n;
}

/// Per-index nodal record over a spectrum.
struct NodalProfileEntry {
  int n = 0;
  double k = 0.0;
  int phi = -1;
  int surplus = 0;
  bool valid = false;
  std::string flag;  // "ok", "zero-mode", "degenerate", "vertex-zero"
};

/// Runs reconstruct + count_zeros over every level up to the scan ceiling,
/// skipping (and flagging) degenerate and vertex-vanishing levels. The zero
/// mode of a connected flux-free Neumann graph is the constant function and
/// counts as a valid level with no zeros.
inline std::vector<NodalProfileEntry> nodal_surplus_profile(
    const MetricGraph& g, const Spectrum& s) {
  std::vector<NodalProfileEntry> out;
  const int total = s.total_count();
  for (int n = 1; n <= total; ++n) {
    NodalProfileEntry entry;
    entry.n = n;
    const auto slot = detail::spectral_slot(s, n);
    entry.k = slot.k;
    if (slot.is_zero_mode) {
      if (slot.multiplicity == 1) {
        entry.phi = 0;
        entry.surplus = 0 - (n - 1);
        entry.valid = true;
        entry.flag = "zero-mode";
      } else {
        entry.flag = "degenerate";
      }
      out.push_back(entry);
      continue;
    }
    if (slot.multiplicity != 1) {
      entry.flag = "degenerate";
      out.push_back(entry);
      continue;
    }
    try {
      const Eigenfunction f = reconstruct(g, s, n);
      const NodalData nd = count_zeros(f, g);
      entry.phi = nd.phi;
      entry.surplus = nd.surplus;
      entry.valid = true;
      entry.flag = "ok";
    } catch (const VertexZero&) {
      entry.flag = "vertex-zero";
    } catch (const DegenerateEigenvalue&) {
      entry.flag = "degenerate";
    }
    out.push_back(entry);
  }
  return out;
}

/// Closed-form zero-count prediction for the dihedral graph, as published:
/// n - mod2(floor((b+c) n / (a+b+c))). The companion
/// dihedral_zero_count_side_parity keeps the side-edge zero count explicit
/// instead of folding it into the floor.
inline int dihedral_zero_count_formula(double a, double b, double c, int n) {
  const long long fl =
      static_cast<long long>(std::floor((b + c) * n / (a + b + c)));
  return n - static_cast<int>(fl % 2);
}

/// Parity variant derived from the side-edge count N1 = floor(a n / (a+b+c)):
/// n - mod2(n - N1).
inline int dihedral_zero_count_side_parity(double a, double b, double c,
                                           int n) {
  const long long n1 =
      static_cast<long long>(std::floor(a * n / (a + b + c)));
  return n - static_cast<int>((n - n1) % 2);
}

/// Merged-progression counting: S1 = {m/alpha}, S2 = {m/beta}. Given that
/// the merged set has n-1 elements below a threshold, the number of them
/// coming from S1 is floor(alpha n / (alpha + beta)). Throws
/// CommensurateTie when the split sits numerically on an integer, which
/// happens exactly when the merged set has a tie at the threshold.
inline long long progression_split_count(double alpha, double beta,
                                         long long n, double eps = 1e-9) {
  if (!(alpha > 0.0) || !(beta > 0.0))
    throw Error("progression_split_count: alpha and beta must be positive");
  const double x = alpha * static_cast<double>(n) / (alpha + beta);
  const double frac = x - std::floor(x);
  if (frac < eps || frac > 1.0 - eps)
    throw CommensurateTie("split count " + std::to_string(x) +
                          " is too close to an integer to be resolved");
  return static_cast<long long>(std::floor(x));
}

}  // namespace qgraph
