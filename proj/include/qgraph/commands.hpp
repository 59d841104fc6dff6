#pragma once

#include <string>
#include <vector>

#include "qgraph/graph_file.hpp"
#include "qgraph/magnetic.hpp"
#include "qgraph/report.hpp"
#include "qgraph/verify.hpp"

namespace qgraph {
namespace commands {

inline FluxAssignment resolve_flux(const MetricGraph& g,
                                   const std::optional<FluxAssignment>& file,
                                   const std::vector<double>& flag) {
  const int beta = fundamental_cycles(g).beta;
  if (!flag.empty()) {
    if (static_cast<int>(flag.size()) != beta)
      throw FluxDimensionMismatch("--flux needs " + std::to_string(beta) +
                                  " comma-separated values for this graph");
    return FluxAssignment(flag);
  }
  if (file) return *file;
  return FluxAssignment::zero(beta);
}

/// CSV of (index, k, lambda, multiplicity); the zero mode appears as a
/// k = 0 row when present.
inline std::string cmd_spectrum(const MetricGraph& g,
                                const FluxAssignment& flux, double k_max,
                                const SolverConfig& cfg) {
  const Spectrum s = find_spectrum(g, flux, k_max, cfg);
  std::string out = "index,k,lambda,multiplicity\n";
  int index = 1;
  if (s.lambda0_multiplicity > 0) {
    out += "1,0,0," + std::to_string(s.lambda0_multiplicity) + "\n";
    index += s.lambda0_multiplicity;
  }
  for (const RootInfo& r : s.roots) {
    out += std::to_string(index) + "," + fmt12(r.k) + "," +
           fmt12(r.k * r.k) + "," + std::to_string(r.multiplicity) + "\n";
    index += r.multiplicity;
  }
  return out;
}

/// CSV of (k, zeta) on a uniform grid.
inline std::string cmd_zeta(const MetricGraph& g, const FluxAssignment& flux,
                            double k_max, double grid_step) {
  SecularEngine eng(g, flux);
  if (grid_step <= 0) grid_step = M_PI / (20.0 * g.total_length());
  std::string out = "k,zeta\n";
  for (double k = grid_step; k <= k_max + 1e-15; k += grid_step)
    out += fmt12(k) + "," + fmt12(eng.zeta(k)) + "\n";
  return out;
}

/// CSV of (k, gap) step samples of N(k) - L k / pi.
inline std::string cmd_weylgap(const MetricGraph& g,
                               const FluxAssignment& flux, double k_max,
                               const SolverConfig& cfg) {
  const Spectrum s = find_spectrum(g, flux, k_max, cfg);
  std::string out = "k,gap\n";
  for (const auto& [k, gap] : weyl_gap(s))
    out += fmt12(k) + "," + fmt12(gap) + "\n";
  return out;
}

/// CSV of (n, k, phi, surplus, flag) over all levels up to k_max.
inline std::string cmd_nodal(const MetricGraph& g, double k_max,
                             const SolverConfig& cfg) {
  const Spectrum s =
      find_spectrum(g, FluxAssignment::zero(fundamental_cycles(g).beta),
                    k_max, cfg);
  std::string out = "n,k,phi,surplus,flag\n";
  for (const NodalProfileEntry& e : nodal_surplus_profile(g, s)) {
    out += std::to_string(e.n) + "," + fmt12(e.k) + ",";
    out += e.valid ? std::to_string(e.phi) : std::string("");
    out += ",";
    out += e.valid ? std::to_string(e.surplus) : std::string("");
    out += "," + e.flag + "\n";
  }
  return out;
}

/// CSV of (flux..., band, lambda) over a uniform flux grid: `points` values
/// per cycle spanning [-pi, pi], full product grid across cycles.
inline std::string cmd_sweep(const MetricGraph& g, int bands, int points,
                             const SolverConfig& cfg) {
  const int beta = fundamental_cycles(g).beta;
  if (beta < 1) throw Error("sweep: the graph has no cycles");
  if (points < 2) throw Error("sweep: need at least 2 grid points");

  std::vector<FluxAssignment> grid;
  std::vector<int> idx(beta, 0);
  for (;;) {
    std::vector<double> v(beta);
    for (int d = 0; d < beta; ++d)
      v[d] = -M_PI + 2.0 * M_PI * idx[d] / (points - 1);
    grid.push_back(FluxAssignment(v));
    int d = 0;
    while (d < beta && ++idx[d] == points) idx[d++] = 0;
    if (d == beta) break;
  }

  const SweepResult res = sweep(g, bands, grid, cfg);
  std::string out;
  for (int d = 0; d < beta; ++d) out += "flux" + std::to_string(d + 1) + ",";
  out += "band,lambda\n";
  for (size_t i = 0; i < grid.size(); ++i) {
    for (int b = 0; b < bands; ++b) {
      std::string row;
      for (int d = 0; d < beta; ++d) row += fmt12(grid[i].values[d]) + ",";
      row += std::to_string(b + 1) + "," +
             fmt12(res.sheets[b].lambda[i]) + "\n";
      out += row;
    }
  }
  return out;
}

inline ReportDocument cmd_verify(const std::string& suite, unsigned seed) {
  return verify::run_suite(suite, seed);
}

}  // namespace commands
}  // namespace qgraph
