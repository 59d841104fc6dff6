#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <cmath>
#include <complex>
#include <vector>

#include "qgraph/graph.hpp"

namespace qgraph {

using Complex = std::complex<double>;

/// Magnetic fluxes through the fundamental cycles, one value per basis
/// chord, canonically represented in (-pi, pi].
struct FluxAssignment {
  std::vector<double> values;

  FluxAssignment() = default;
  explicit FluxAssignment(std::vector<double> v) : values(std::move(v)) {
    canonicalize();
  }
  static FluxAssignment zero(int beta) {
    return FluxAssignment(std::vector<double>(beta, 0.0));
  }

  int size() const { return static_cast<int>(values.size()); }
  bool is_zero(double eps = 1e-14) const {
    for (double a : values)
      if (std::abs(a) > eps) return false;
    return true;
  }
  FluxAssignment negated() const {
    FluxAssignment f = *this;
    for (double& a : f.values) a = -a;
    f.canonicalize();
    return f;
  }
  void canonicalize() {
    for (double& a : values) {
      a = std::remainder(a, 2.0 * M_PI);  // (-pi, pi]
      if (a <= -M_PI) a = M_PI;
    }
  }
};

/// Bond scattering matrix of the graph, with rows and columns in the bond
/// order [forward edges 0..E-1, reversals]. Real orthogonal; entries are
/// 2/d - 1 for back-scattering and 2/d for transmission at a Neumann vertex
/// of degree d, and -1 for back-scattering at a degree-1 Dirichlet vertex.
struct BondMatrices {
  Eigen::MatrixXd S;
  int det_S = 1;                 // always +1 or -1
  std::vector<int> bond_order;   // identity permutation, kept for reference
};

inline BondMatrices scattering_matrix(const MetricGraph& g) {
  const int m = g.bond_count();
  BondMatrices bm;
  bm.S = Eigen::MatrixXd::Zero(m, m);
  for (int j = 0; j < m; ++j) {
    const int v = g.bond_terminus(j);
    if (g.condition(v) == VertexCondition::Dirichlet) {
      bm.S(g.reversal(j), j) = -1.0;  // degree 1 by construction
      continue;
    }
    const double d = g.degree(v);
    for (int jp : g.outgoing_bonds(v))
      bm.S(jp, j) = jp == g.reversal(j) ? (2.0 - d) / d : 2.0 / d;
  }
  const double det = Eigen::PartialPivLU<Eigen::MatrixXd>(bm.S).determinant();
  bm.det_S = det >= 0.0 ? 1 : -1;
  bm.bond_order.resize(m);
  for (int b = 0; b < m; ++b) bm.bond_order[b] = b;
  return bm;
}

/// Diagonal of D(k): exp(i k L_b + i theta_b) per bond, where theta flips
/// sign under bond reversal.
struct PhaseMatrix {
  Eigen::VectorXcd diagonal;
};

/// Per-edge magnetic phases: theta on the forward bond, -theta on the
/// reversal. The flux gauge used by the solver puts each cycle's full flux
/// on its chord edge.
inline std::vector<double> chord_gauge_phases(const MetricGraph& g,
                                              const CycleBasis& basis,
                                              const FluxAssignment& flux) {
  if (flux.size() != basis.beta)
    throw FluxDimensionMismatch(
        "flux has " + std::to_string(flux.size()) + " entries, graph has " +
        std::to_string(basis.beta) + " independent cycles");
  std::vector<double> theta(g.edge_count(), 0.0);
  for (int i = 0; i < basis.beta; ++i) theta[basis.chords[i]] += flux.values[i];
  return theta;
}

inline PhaseMatrix phase_matrix_from_edge_phases(
    const MetricGraph& g, double k, const std::vector<double>& edge_theta) {
  const int ne = g.edge_count();
  PhaseMatrix pm;
  pm.diagonal.resize(2 * ne);
  for (int e = 0; e < ne; ++e) {
    const double kl = k * g.edge(e).length;
    pm.diagonal(e) = std::polar(1.0, kl + edge_theta[e]);
    pm.diagonal(e + ne) = std::polar(1.0, kl - edge_theta[e]);
  }
  return pm;
}

inline PhaseMatrix phase_matrix(const MetricGraph& g, double k,
                                const FluxAssignment& flux) {
  return phase_matrix_from_edge_phases(
      g, k, chord_gauge_phases(g, fundamental_cycles(g), flux));
}

/// One evaluation of the secular determinant.
struct SecularValue {
  Complex sigma;         // det(I - S D(k))
  double zeta;           // real secular function, same zeros as sigma
  double residual_imag;  // |Im zeta| before discarding, diagnostic
};

/// Caches the scattering matrix, cycle basis and flux gauge of one graph so
/// that repeated evaluations along a k-grid only pay for the determinant.
class SecularEngine {
 public:
  explicit SecularEngine(const MetricGraph& g)
      : SecularEngine(g, FluxAssignment::zero(fundamental_cycles(g).beta)) {}

  SecularEngine(const MetricGraph& g, const FluxAssignment& flux)
      : graph_(g),
        basis_(fundamental_cycles(g)),
        bm_(scattering_matrix(g)),
        edge_theta_(chord_gauge_phases(g, basis_, flux)),
        flux_(flux) {
    // sqrt(det S) on the principal branch: 1 or i, fixed per graph
    sqrt_det_inv_ = bm_.det_S == 1 ? Complex(1, 0) : Complex(0, -1);
  }

  SecularEngine(const MetricGraph& g, std::vector<double> edge_theta)
      : graph_(g),
        basis_(fundamental_cycles(g)),
        bm_(scattering_matrix(g)),
        edge_theta_(std::move(edge_theta)) {
    sqrt_det_inv_ = bm_.det_S == 1 ? Complex(1, 0) : Complex(0, -1);
  }

  const MetricGraph& graph() const { return graph_; }
  const CycleBasis& cycle_basis() const { return basis_; }
  const BondMatrices& bond_matrices() const { return bm_; }
  const FluxAssignment& flux() const { return flux_; }
  const std::vector<double>& edge_theta() const { return edge_theta_; }

  Complex sigma(double k) const {
    const int m = graph_.bond_count();
    const PhaseMatrix pm = phase_matrix_from_edge_phases(graph_, k, edge_theta_);
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(m, m);
    M.noalias() -= bm_.S.cast<Complex>() * pm.diagonal.asDiagonal();
    return Eigen::PartialPivLU<Eigen::MatrixXcd>(std::move(M)).determinant();
  }

  SecularValue secular(double k) const {
    SecularValue sv;
    sv.sigma = sigma(k);
    const Complex z =
        std::polar(1.0, -k * graph_.total_length()) * sqrt_det_inv_ * sv.sigma;
    sv.zeta = z.real();
    sv.residual_imag = std::abs(z.imag());
    return sv;
  }

  double zeta(double k) const { return secular(k).zeta; }

  /// Singular values of I - S D(k), descending.
  Eigen::VectorXd singular_values(double k) const {
    return svd(k).singularValues();
  }

  /// Orthonormal basis of the numerical null space of I - S D(k); these are
  /// the bond coefficient vectors of the eigenfunctions at k. Throws
  /// NoNullVector when no singular value falls below tol * sigma_max.
  std::vector<Eigen::VectorXcd> null_space(double k, double tol = 1e-8) const {
    const auto dec = svd(k);
    const Eigen::VectorXd sv = dec.singularValues();
    const double cutoff = tol * std::max(sv(0), 1e-300);
    std::vector<Eigen::VectorXcd> out;
    for (int i = sv.size() - 1; i >= 0 && sv(i) < cutoff; --i)
      out.push_back(dec.matrixV().col(i));
    if (out.empty())
      throw NoNullVector("k = " + std::to_string(k) +
                         " is not an eigenvalue at tolerance " +
                         std::to_string(tol));
    return out;
  }

  int null_dimension(double k, double tol = 1e-8) const {
    const Eigen::VectorXd sv = singular_values(k);
    const double cutoff = tol * std::max(sv(0), 1e-300);
    int d = 0;
    for (int i = sv.size() - 1; i >= 0 && sv(i) < cutoff; --i) ++d;
    return d;
  }

 private:
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(double k) const {
    const int m = graph_.bond_count();
    const PhaseMatrix pm = phase_matrix_from_edge_phases(graph_, k, edge_theta_);
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Identity(m, m);
    M.noalias() -= bm_.S.cast<Complex>() * pm.diagonal.asDiagonal();
    return Eigen::JacobiSVD<Eigen::MatrixXcd>(M, Eigen::ComputeFullV);
  }

  MetricGraph graph_;
  CycleBasis basis_;
  BondMatrices bm_;
  std::vector<double> edge_theta_;
  FluxAssignment flux_;
  Complex sqrt_det_inv_;
};

inline SecularValue secular(const MetricGraph& g, double k,
                            const FluxAssignment& flux) {
  return SecularEngine(g, flux).secular(k);
}

inline SecularValue secular(const MetricGraph& g, double k) {
  return SecularEngine(g).secular(k);
}

inline std::vector<Eigen::VectorXcd> null_space(const MetricGraph& g, double k,
                                                const FluxAssignment& flux,
                                                double tol = 1e-8) {
  return SecularEngine(g, flux).null_space(k, tol);
}

}  // namespace qgraph
