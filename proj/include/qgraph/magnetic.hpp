#pragma once

#include <Eigen/Eigenvalues>
#include <cmath>
#include <map>
#include <string>
#include <vector>

#include "qgraph/eigenfunction.hpp"
#include "qgraph/solver.hpp"

namespace qgraph {

/// One eigenvalue band lambda_n over a flux grid.
struct DispersionSheet {
  int band = 0;  // 1-based
  std::vector<double> lambda;  // one value per grid point
};

struct SweepResult {
  std::vector<FluxAssignment> grid;
  std::vector<DispersionSheet> sheets;
  /// Grid points where two adjacent sheets come within the solver
  /// resolution (conical touchings and the like); sorted (grid index, band).
  std::vector<std::pair<int, int>> touchings;
};

namespace detail {

/// Lowest n eigenvalues (lambda, multiplicity expanded, zero modes
/// included) at one flux point. Raises the scan ceiling until enough
/// levels are present.
inline std::vector<double> lowest_levels(const MetricGraph& g,
                                         const FluxAssignment& flux, int n,
                                         const SolverConfig& cfg) {
  const double L = g.total_length();
  double k_max = M_PI * (n + g.vertex_count() + 1) / L;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const Spectrum s = find_spectrum(g, flux, k_max, cfg);
    const std::vector<double> ks = s.expanded_k();
    if (static_cast<int>(ks.size()) >= n) {
      std::vector<double> lam(n);
      for (int i = 0; i < n; ++i) lam[i] = ks[i] * ks[i];
      return lam;
    }
    k_max *= 1.6;
  }
  throw SolverFailureAtGridPoint("could not collect " + std::to_string(n) +
                                 " levels");
}

/// Cache of flux-point spectra; exploits lambda(alpha) = lambda(-alpha).
class LevelCache {
 public:
  LevelCache(const MetricGraph& g, int bands, SolverConfig cfg)
      : g_(g), bands_(bands), cfg_(cfg) {}

  const std::vector<double>& at(const FluxAssignment& flux) {
    FluxAssignment key = flux;
    key.canonicalize();
    // conjugation symmetry: fold onto the lexicographically larger of
    // (alpha, -alpha)
    const FluxAssignment neg = key.negated();
    if (std::lexicographical_compare(key.values.begin(), key.values.end(),
                                     neg.values.begin(), neg.values.end()))
      key = neg;
    auto it = cache_.find(key.values);
    if (it == cache_.end())
      it = cache_
               .emplace(key.values,
                        lowest_levels(g_, key, bands_, cfg_))
               .first;
    return it->second;
  }

 private:
  const MetricGraph& g_;
  int bands_;
  SolverConfig cfg_;
  std::map<std::vector<double>, std::vector<double>> cache_;
};

}  // namespace detail

/// Computes the lowest n_bands eigenvalue sheets over the given flux grid.
/// Sheets are ordered by value at every grid point, so they never cross;
/// touchings are reported instead.
inline SweepResult sweep(const MetricGraph& g, int n_bands,
                         const std::vector<FluxAssignment>& flux_grid,
                         SolverConfig cfg = {}) {
  const CycleBasis basis = fundamental_cycles(g);
  if (basis.beta < 1)
    throw Error("sweep: the graph has no cycles, so there is no flux to sweep");
  SweepResult result;
  result.grid = flux_grid;
  result.sheets.resize(n_bands);
  for (int b = 0; b < n_bands; ++b) result.sheets[b].band = b + 1;

  detail::LevelCache cache(g, n_bands + 1, cfg);
  for (size_t i = 0; i < flux_grid.size(); ++i) {
    const std::vector<double>& lam = cache.at(flux_grid[i]);
    for (int b = 0; b < n_bands; ++b)
      result.sheets[b].lambda.push_back(lam[b]);
    for (int b = 0; b + 1 < n_bands; ++b) {
      const double gap = lam[b + 1] - lam[b];
      const double scale = std::max(1.0, std::abs(lam[b + 1]));
      if (gap < 1e-7 * scale)
        result.touchings.emplace_back(static_cast<int>(i), b + 1);
    }
  }
  return result;
}

/// Derivative data of one band at alpha = 0 and its classification.
struct CriticalPointReport {
  int n = 0;
  Eigen::VectorXd gradient;
  Eigen::MatrixXd hessian;
  Eigen::VectorXd hessian_eigenvalues;
  int morse_index = 0;
  bool degenerate = false;
  double lambda0 = 0.0;  // lambda_n at zero flux
};

namespace detail {

inline Eigen::MatrixXd fd_hessian(detail::LevelCache& cache, int n, int beta,
                                  double h) {
  Eigen::MatrixXd H(beta, beta);
  auto lam = [&](const std::vector<double>& v) {
    return cache.at(FluxAssignment(v))[n - 1];
  };
  const std::vector<double> zero(beta, 0.0);
  const double l0 = lam(zero);
  for (int i = 0; i < beta; ++i) {
    std::vector<double> vp = zero, vm = zero;
    vp[i] = h;
    vm[i] = -h;
    H(i, i) = (lam(vp) - 2.0 * l0 + lam(vm)) / (h * h);
    for (int j = 0; j < i; ++j) {
      std::vector<double> vpp = zero, vpm = zero, vmp = zero, vmm = zero;
      vpp[i] = h;  vpp[j] = h;
      vpm[i] = h;  vpm[j] = -h;
      vmp[i] = -h; vmp[j] = h;
      vmm[i] = -h; vmm[j] = -h;
      H(i, j) = H(j, i) =
          (lam(vpp) - lam(vpm) - lam(vmp) + lam(vmm)) / (4.0 * h * h);
    }
  }
  return H;
}

}  // namespace detail

/// Gradient and Hessian of lambda_n(alpha) at alpha = 0 by central finite
/// differences with one step of Richardson refinement; the Morse index is
/// the number of Hessian eigenvalues below -1e-4 |H|. Requires a simple
/// level with a vertex-nonvanishing eigenfunction.
inline CriticalPointReport hessian_at_zero(const MetricGraph& g, int n,
                                           double step = 1e-3,
                                           SolverConfig cfg = {}) {
  const CycleBasis basis = fundamental_cycles(g);
  const int beta = basis.beta;

  // hypothesis checks at zero flux
  {
    const Spectrum s0 = find_spectrum(
        g, FluxAssignment::zero(beta),
        M_PI * (n + g.vertex_count() + 2) / g.total_length(), cfg);
    if (s0.total_count() < n + 1)
      throw SolverFailureAtGridPoint("scan ceiling too low for band " +
                                     std::to_string(n));
    const auto slot = detail::spectral_slot(s0, n);
    if (slot.multiplicity != 1)
      throw DegenerateEigenvalue("lambda_" + std::to_string(n) +
                                 " is not simple at zero flux");
    if (!slot.is_zero_mode) {
      const Eigenfunction f = reconstruct(g, s0, n);
      const double sup = f.sup_norm(g);
      for (int v = 0; v < g.vertex_count(); ++v) {
        if (g.outgoing_bonds(v).empty()) continue;
        if (g.condition(v) == VertexCondition::Dirichlet) continue;
        if (std::abs(f.value_at_vertex(g, v)) < 1e-6 * sup)
          throw VertexZero("eigenfunction of band " + std::to_string(n) +
                           " vanishes at vertex " + std::to_string(v));
      }
    }
  }

  detail::LevelCache cache(g, n + 1, cfg);
  CriticalPointReport rep;
  rep.n = n;
  rep.lambda0 = cache.at(FluxAssignment::zero(beta))[n - 1];

  if (beta == 0) {  // trees: zero-dimensional flux space
    rep.gradient = Eigen::VectorXd::Zero(0);
    rep.hessian = Eigen::MatrixXd::Zero(0, 0);
    rep.hessian_eigenvalues = Eigen::VectorXd::Zero(0);
    return rep;
  }

  rep.gradient.resize(beta);
  for (int i = 0; i < beta; ++i) {
    std::vector<double> vp(beta, 0.0), vm(beta, 0.0);
    vp[i] = step;
    vm[i] = -step;
    rep.gradient(i) = (cache.at(FluxAssignment(vp))[n - 1] -
                       cache.at(FluxAssignment(vm))[n - 1]) /
                      (2.0 * step);
  }
  const double grad_tol =
      50.0 * step * step * std::max(1.0, std::abs(rep.lambda0));
  if (rep.gradient.size() > 0 &&
      rep.gradient.cwiseAbs().maxCoeff() > grad_tol)
    throw NotCritical("gradient of lambda_" + std::to_string(n) +
                      " does not vanish at zero flux");

  const Eigen::MatrixXd h1 = detail::fd_hessian(cache, n, beta, step);
  const Eigen::MatrixXd h2 = detail::fd_hessian(cache, n, beta, step / 2.0);
  rep.hessian = (4.0 * h2 - h1) / 3.0;

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(rep.hessian);
  rep.hessian_eigenvalues = es.eigenvalues();
  const double scale = rep.hessian_eigenvalues.cwiseAbs().maxCoeff();
  const double deg_tol = 1e-4 * std::max(scale, 1e-12);
  rep.morse_index = 0;
  for (int i = 0; i < beta; ++i) {
    const double ev = rep.hessian_eigenvalues(i);
    if (std::abs(ev) < deg_tol) rep.degenerate = true;
    if (ev < -deg_tol) ++rep.morse_index;
  }
  if (rep.degenerate)
    throw DegenerateHessian("Hessian of lambda_" + std::to_string(n) +
                            " has an eigenvalue below the resolution floor");
  return rep;
}

/// Per-level outcome of the Morse index vs nodal surplus comparison.
struct MagneticNodalEntry {
  int n = 0;
  double k = 0.0;
  int surplus = 0;
  int morse_index = 0;
  bool match = false;
  bool skipped = true;
  std::string flag;
};

struct MagneticNodalReport {
  bool ok = true;
  std::vector<MagneticNodalEntry> entries;
  int checked = 0;

  void raise_if_failed() const {
    for (const auto& e : entries)
      if (!e.skipped && !e.match)
        throw TheoremViolation(
            "Morse index " + std::to_string(e.morse_index) +
            " != nodal surplus " + std::to_string(e.surplus) + " at level " +
            std::to_string(e.n));
  }
};

/// Checks Morse index == nodal surplus for every simple, vertex-nonvanishing
/// level up to k_max; other levels are flagged and skipped.
inline MagneticNodalReport verify_magnetic_nodal(const MetricGraph& g,
                                                 double k_max,
                                                 double step = 1e-3,
                                                 SolverConfig cfg = {}) {
  const CycleBasis basis = fundamental_cycles(g);
  const Spectrum s = find_spectrum(g, FluxAssignment::zero(basis.beta), k_max,
                                   cfg);
  const auto profile = nodal_surplus_profile(g, s);

  MagneticNodalReport rep;
  for (const auto& p : profile) {
    MagneticNodalEntry e;
    e.n = p.n;
    e.k = p.k;
    e.flag = p.flag;
    if (!p.valid) {
      rep.entries.push_back(e);
      continue;
    }
    e.surplus = p.surplus;
    try {
      const CriticalPointReport cp = hessian_at_zero(g, p.n, step, cfg);
      e.morse_index = cp.morse_index;
      e.skipped = false;
      e.match = e.morse_index == e.surplus;
      if (!e.match) rep.ok = false;
      ++rep.checked;
    } catch (const DegenerateHessian&) {
      e.flag = "degenerate-hessian";
    } catch (const DegenerateEigenvalue&) {
      e.flag = "degenerate";
    } catch (const VertexZero&) {
      e.flag = "vertex-zero";
    }
    rep.entries.push_back(e);
  }
  return rep;
}

struct FluxSymmetryReport {
  bool ok = true;
  double max_deviation = 0.0;
  int checked = 0;

  void raise_if_failed() const {
    if (!ok)
      throw SymmetryViolation("lambda(alpha) != lambda(-alpha), deviation " +
                              std::to_string(max_deviation));
  }
};

/// Asserts lambda_n(alpha) = lambda_n(-alpha) band by band (in k, within
/// 2 refine_tol) for each sampled flux vector.
inline FluxSymmetryReport verify_flux_symmetry(
    const MetricGraph& g, int n_bands,
    const std::vector<FluxAssignment>& sample_fluxes, SolverConfig cfg = {}) {
  FluxSymmetryReport rep;
  for (const FluxAssignment& flux : sample_fluxes) {
    const auto a = detail::lowest_levels(g, flux, n_bands, cfg);
    const auto b = detail::lowest_levels(g, flux.negated(), n_bands, cfg);
    for (int i = 0; i < n_bands; ++i) {
      const double dev = std::abs(std::sqrt(a[i]) - std::sqrt(b[i]));
      rep.max_deviation = std::max(rep.max_deviation, dev);
      if (dev > 2.0 * cfg.refine_tol) rep.ok = false;
      ++rep.checked;
    }
  }
  return rep;
}

}  // namespace qgraph
