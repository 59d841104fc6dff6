#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qgraph/secular.hpp"

namespace qgraph {

struct SolverConfig {
  double grid_step = 0.0;    // <= 0 selects pi / (20 * total length)
  double refine_tol = 1e-11; // absolute tolerance on k for refined roots
  double cluster_gap = 1e-6; // roots closer than this are retested as one
  int max_rescans = 12;
  double null_tol = 1e-8;    // relative singular-value cutoff
};

struct RootInfo {
  double k;
  int multiplicity;
};

struct SolverDiagnostics {
  int grid_points = 0;
  int brackets_found = 0;
  int rescans = 0;
  double max_imag_residual = 0.0;
  bool unresolved_deficit = false;
};

/// Positive k-roots of the secular function with multiplicities, plus the
/// analytically prepended zero mode.
struct Spectrum {
  std::vector<RootInfo> roots;  // strictly increasing in k
  int lambda0_multiplicity = 0;
  double k_max = 0.0;
  double total_length = 0.0;
  SolverDiagnostics diagnostics;

  int total_count() const {
    int n = lambda0_multiplicity;
    for (const RootInfo& r : roots) n += r.multiplicity;
    return n;
  }

  /// k values with multiplicities expanded; the zero mode contributes
  /// leading zeros. Entry i is k_{i+1} in 1-based spectral numbering.
  std::vector<double> expanded_k() const {
    std::vector<double> out(lambda0_multiplicity, 0.0);
    for (const RootInfo& r : roots)
      out.insert(out.end(), r.multiplicity, r.k);
    return out;
  }
};

/// N(k): number of eigenvalues with sqrt(lambda) <= k.
inline int counting_function(const Spectrum& s, double k) {
  if (k > s.k_max * (1.0 + 1e-12) + 1e-12)
    throw BeyondScanCeiling("counting function queried at k = " +
                            std::to_string(k) + " beyond scan ceiling " +
                            std::to_string(s.k_max));
  int n = s.lambda0_multiplicity;
  for (const RootInfo& r : s.roots)
    if (r.k <= k) n += r.multiplicity;
  return n;
}

/// Step samples of N(k) - L k / pi at every root (after the jump) and at
/// midpoints between consecutive roots.
inline std::vector<std::pair<double, double>> weyl_gap(const Spectrum& s) {
  const double slope = s.total_length / M_PI;
  std::vector<std::pair<double, double>> out;
  int n = s.lambda0_multiplicity;
  out.emplace_back(0.0, static_cast<double>(n));
  for (size_t i = 0; i < s.roots.size(); ++i) {
    n += s.roots[i].multiplicity;
    out.emplace_back(s.roots[i].k, n - slope * s.roots[i].k);
    const double next = i + 1 < s.roots.size() ? s.roots[i + 1].k : s.k_max;
    const double mid = 0.5 * (s.roots[i].k + next);
    out.emplace_back(mid, n - slope * mid);
  }
  if (s.roots.empty() || s.roots.back().k < s.k_max)
    out.emplace_back(s.k_max, n - slope * s.k_max);
  return out;
}

namespace detail {

/// Brent-Dekker root refinement on a sign-change bracket.
inline double brent_root(const std::function<double(double)>& f, double a,
                         double b, double fa, double fb, double xtol) {
  double c = a, fc = fa;
  double d = b - a, e = d;
  for (int iter = 0; iter < 200; ++iter) {
    if (std::abs(fc) < std::abs(fb)) {
      a = b; b = c; c = a;
      fa = fb; fb = fc; fc = fa;
    }
    const double tol1 = 2.0 * 2.2e-16 * std::abs(b) + 0.5 * xtol;
    const double xm = 0.5 * (c - b);
    if (std::abs(xm) <= tol1 || fb == 0.0) return b;
    if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
      double p, q, r;
      const double s = fb / fa;
      if (a == c) {
        p = 2.0 * xm * s;
        q = 1.0 - s;
      } else {
        q = fa / fc;
        r = fb / fc;
        p = s * (2.0 * xm * q * (q - r) - (b - a) * (r - 1.0));
        q = (q - 1.0) * (r - 1.0) * (s - 1.0);
      }
      if (p > 0.0) q = -q;
      p = std::abs(p);
      if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q),
                             std::abs(e * q))) {
        e = d;
        d = p / q;
      } else {
        d = xm;
        e = d;
      }
    } else {
      d = xm;
      e = d;
    }
    a = b;
    fa = fb;
    b += std::abs(d) > tol1 ? d : (xm > 0 ? tol1 : -tol1);
    fb = f(b);
    if ((fb > 0) == (fc > 0)) {
      c = a;
      fc = fa;
      d = b - a;
      e = d;
    }
  }
  return b;
}

/// Brent local minimization of f on [a, b].
inline double brent_min(const std::function<double(double)>& f, double a,
                        double b, double xtol) {
  const double gold = 0.3819660112501051;
  double x = a + gold * (b - a), w = x, v = x;
  double fx = f(x), fw = fx, fv = fx;
  double d = 0.0, e = 0.0;
  for (int iter = 0; iter < 200; ++iter) {
    const double xm = 0.5 * (a + b);
    const double tol1 = 1e-15 * std::abs(x) + 0.25 * xtol;
    const double tol2 = 2.0 * tol1;
    if (std::abs(x - xm) <= tol2 - 0.5 * (b - a)) return x;
    bool golden = true;
    if (std::abs(e) > tol1) {
      const double r = (x - w) * (fx - fv);
      double q = (x - v) * (fx - fw);
      double p = (x - v) * q - (x - w) * r;
      q = 2.0 * (q - r);
      if (q > 0.0) p = -p;
      q = std::abs(q);
      const double etemp = e;
      e = d;
      if (std::abs(p) < std::abs(0.5 * q * etemp) && p > q * (a - x) &&
          p < q * (b - x)) {
        d = p / q;
        const double u = x + d;
        if (u - a < tol2 || b - u < tol2) d = xm > x ? tol1 : -tol1;
        golden = false;
      }
    }
    if (golden) {
      e = x >= xm ? a - x : b - x;
      d = gold * e;
    }
    const double u = std::abs(d) >= tol1 ? x + d : x + (d > 0 ? tol1 : -tol1);
    const double fu = f(u);
    if (fu <= fx) {
      if (u >= x) a = x; else b = x;
      v = w; w = x; x = u;
      fv = fw; fw = fx; fx = fu;
    } else {
      if (u < x) a = u; else b = u;
      if (fu <= fw || w == x) {
        v = w; w = u;
        fv = fw; fw = fu;
      } else if (fu <= fv || v == x || v == w) {
        v = u;
        fv = fu;
      }
    }
  }
  return x;
}

}  // namespace detail

namespace detail {

struct ScanState {
  const SecularEngine* eng;
  SolverConfig cfg;
  double k_max;
  double zeta_scale = 1.0;
  std::vector<RootInfo> roots;
  SolverDiagnostics diag;

  double zeta(double k) {
    const SecularValue sv = eng->secular(k);
    const double mag = std::max(1.0, std::abs(sv.zeta));
    diag.max_imag_residual =
        std::max(diag.max_imag_residual, sv.residual_imag / mag);
    return sv.zeta;
  }

  bool near_existing(double k, double gap) const {
    for (const RootInfo& r : roots)
      if (std::abs(r.k - k) < gap) return true;
    return false;
  }

  void insert_root(double k, int mult) {
    // k = 0 is a spurious root of the secular determinant; nothing below
    // this floor is a genuine eigenvalue in any configuration we scan.
    if (k <= 1e-8 || k > k_max * (1.0 + 1e-12)) return;
    auto it = std::lower_bound(
        roots.begin(), roots.end(), k,
        [](const RootInfo& r, double x) { return r.k < x; });
    roots.insert(it, RootInfo{k, mult});
  }

  /// Collapse duplicates and decide near-degenerate clusters by the null
  /// space dimension at the cluster midpoint.
  void consolidate() {
    std::sort(roots.begin(), roots.end(),
              [](const RootInfo& a, const RootInfo& b) { return a.k < b.k; });
    std::vector<RootInfo> out;
    for (const RootInfo& r : roots) {
      if (!out.empty()) {
        RootInfo& p = out.back();
        const double dist = r.k - p.k;
        if (dist < 8.0 * cfg.refine_tol) {
          // the same root refined twice
          p.multiplicity = std::max(p.multiplicity, r.multiplicity);
          continue;
        }
        if (dist < cfg.cluster_gap) {
          const double mid = 0.5 * (r.k + p.k);
          const int dim = eng->null_dimension(mid, cfg.null_tol);
          if (dim >= 2) {
            p.k = mid;
            p.multiplicity = dim;
            continue;
          }
        }
      }
      out.push_back(r);
    }
    roots = std::move(out);
  }

  int multiplicity_at(double k) {
    return std::max(1, eng->null_dimension(k, cfg.null_tol));
  }

  /// Refine a sign-change bracket and record the root.
  void refine_bracket(double a, double b, double fa, double fb) {
    ++diag.brackets_found;
    const double k =
        brent_root([this](double x) { return zeta(x); }, a, b, fa, fb,
                   cfg.refine_tol);
    insert_root(k, multiplicity_at(k));
  }

  /// Handle a candidate even-order root: minimize |zeta| in [a, b]; if the
  /// minimizer is singular, add it, and when it turns out to be a simple
  /// zero locate its sibling (a tangential pair crossed zero twice).
  void refine_minimum(double a, double b) {
    const double x = brent_min(
        [this](double t) {
          const double z = zeta(t);
          return z * z;
        },
        a, b, cfg.refine_tol);
    if (near_existing(x, std::max(cfg.cluster_gap, 4.0 * cfg.refine_tol)))
      return;
    const int dim = eng->null_dimension(x, cfg.null_tol);
    if (dim == 0) return;
    insert_root(x, dim);
    if (dim >= 2) return;

    // simple zero inside a no-sign-change window: find the sibling
    const double fb = zeta(b);
    const double s_out = fb >= 0 ? 1.0 : -1.0;
    for (double delta = 64.0 * cfg.refine_tol; ; delta *= 8.0) {
      const double kr = x + delta, kl = x - delta;
      if (kr >= b && kl <= a) break;
      if (kr < b) {
        const double fr = zeta(kr);
        if (fr * s_out < 0) {
          refine_bracket(kr, b, fr, fb);
          return;
        }
      }
      if (kl > a) {
        const double fl = zeta(kl);
        if (fl * s_out < 0) {
          refine_bracket(a, kl, zeta(a), fl);
          return;
        }
      }
    }
  }

  /// Scan [lo, hi] with the given number of points: refine every sign
  /// change and probe interior local minima of |zeta| that undershoot the
  /// window scale.
  void scan_window(double lo, double hi, int points, bool probe_minima) {
    lo = std::max(lo, 1e-14);
    hi = std::min(hi, k_max);
    if (hi <= lo || points < 3) return;
    std::vector<double> ks(points), vs(points);
    for (int i = 0; i < points; ++i) {
      ks[i] = lo + (hi - lo) * i / (points - 1);
      vs[i] = zeta(ks[i]);
    }
    diag.grid_points += points;
    double scale = 0.0;
    for (double v : vs) scale = std::max(scale, std::abs(v));
    const double zero_tol = 1e-13 * std::max(scale, 1e-300);

    int last = -1;  // last grid index with a definite sign
    for (int i = 0; i < points; ++i) {
      if (std::abs(vs[i]) <= zero_tol) {
        // grid point sits on a root (ignore the k -> 0 artifact zone)
        const double step = (hi - lo) / (points - 1);
        if (ks[i] > 1e-8 && !near_existing(ks[i], cfg.cluster_gap))
          refine_minimum(std::max(lo, ks[i] - step),
                         std::min(hi, ks[i] + step));
        continue;
      }
      if (last >= 0 && vs[last] * vs[i] < 0.0)
        refine_bracket(ks[last], ks[i], vs[last], vs[i]);
      last = i;
    }

    if (!probe_minima) return;
    for (int i = 1; i + 1 < points; ++i) {
      const double m = std::abs(vs[i]);
      if (m >= std::abs(vs[i - 1]) || m > std::abs(vs[i + 1])) continue;
      if (m > 0.05 * scale) continue;
      if (vs[i - 1] * vs[i] < 0 || vs[i] * vs[i + 1] < 0) continue;  // bracketed
      refine_minimum(ks[i - 1], ks[i + 1]);
    }
  }
};

}  // namespace detail

/// Zero modes surviving a magnetic flux: a component keeps its constant
/// eigenfunction only if it has no Dirichlet vertex and zero flux (modulo
/// 2 pi) through each of its cycles.
inline int zero_mode_multiplicity(const MetricGraph& g, const CycleBasis& basis,
                                  const std::vector<double>& edge_theta) {
  std::vector<char> broken(g.component_count(), 0);
  const int ne = g.edge_count();
  for (int i = 0; i < basis.beta; ++i) {
    double holonomy = 0.0;
    for (int b : basis.cycles[i])
      holonomy += b < ne ? edge_theta[b % ne] : -edge_theta[b % ne];
    if (std::abs(std::remainder(holonomy, 2.0 * M_PI)) <= 1e-12) continue;
    const int v = g.bond_origin(basis.cycles[i][0]);
    broken[g.component_of(v)] = 1;
  }
  std::vector<char> has_edge(g.component_count(), 0);
  std::vector<char> has_dirichlet(g.component_count(), 0);
  for (const Edge& e : g.edges()) has_edge[g.component_of(e.u)] = 1;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (g.condition(v) == VertexCondition::Dirichlet)
      has_dirichlet[g.component_of(v)] = 1;
  int m = 0;
  for (int c = 0; c < g.component_count(); ++c)
    if (has_edge[c] && !has_dirichlet[c] && !broken[c]) ++m;
  return m;
}

/// Locates all k-roots of the secular function in (0, k_max]. Sign changes
/// on the scan grid are refined by Brent bracketing; completeness is
/// monitored against Weyl's law and persistent deficits trigger local
/// rescans at increasing resolution, which also catch even-order roots
/// through |zeta| minima. Throws WeylViolation when the final count leaves
/// the proven band [L k / pi - |E|, L k / pi + |V|].
inline Spectrum find_spectrum(const SecularEngine& eng, double k_max,
                              SolverConfig cfg = {}) {
  const MetricGraph& g = eng.graph();
  if (!(k_max > 0.0)) throw Error("find_spectrum: k_max must be positive");
  const double L = g.total_length();
  const double h = cfg.grid_step > 0 ? cfg.grid_step : M_PI / (20.0 * L);

  detail::ScanState st;
  st.eng = &eng;
  st.cfg = cfg;
  st.k_max = k_max;

  const int lambda0 =
      zero_mode_multiplicity(g, eng.cycle_basis(), eng.edge_theta());

  // Near-zero ladder: catches small first roots (e.g. the zero mode pushed
  // up by a weak flux) without tripping over the spurious root at k = 0.
  std::vector<double> pts;
  for (int j = 12; j >= 1; --j) {
    const double k = h / std::pow(2.0, j);
    if (k < k_max) pts.push_back(k);
  }
  const int nsteps = static_cast<int>(std::ceil(k_max / h));
  for (int i = 1; i <= nsteps; ++i) pts.push_back(std::min(i * h, k_max));

  {
    std::vector<double> vs(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) vs[i] = st.zeta(pts[i]);
    st.diag.grid_points += static_cast<int>(pts.size());
    double scale = 0.0;
    for (double v : vs) scale = std::max(scale, std::abs(v));
    const double zero_tol = 1e-13 * std::max(scale, 1e-300);
    int last = -1;
    for (size_t i = 0; i < pts.size(); ++i) {
      if (std::abs(vs[i]) <= zero_tol) {
        if (pts[i] > 1e-8) {
          const double lo = i > 0 ? pts[i - 1] : pts[i] * 0.5;
          const double hi = i + 1 < pts.size() ? pts[i + 1] : k_max;
          st.refine_minimum(lo, hi);
        }
        continue;
      }
      if (last >= 0 && vs[last] * vs[i] < 0.0)
        st.refine_bracket(pts[last], pts[i], vs[last], vs[i]);
      last = static_cast<int>(i);
    }
  }
  st.consolidate();

  // Weyl watchdog: a persistent drop of the counting function below its own
  // running envelope marks a window with missed roots (tangential pairs
  // produce no sign change on the grid).
  const double slope = L / M_PI;
  const double deficit_threshold = 1.25;
  int stale_passes = 0;
  for (int pass = 0; pass < cfg.max_rescans; ++pass) {
    const size_t before = st.roots.size();
    int before_count = 0;
    for (const RootInfo& r : st.roots) before_count += r.multiplicity;

    // g values after each jump, plus the endpoints of the range
    std::vector<double> gk{0.0}, gv{static_cast<double>(lambda0)};
    int n = lambda0;
    for (const RootInfo& r : st.roots) {
      n += r.multiplicity;
      gk.push_back(r.k);
      gv.push_back(n - slope * r.k);
    }
    gk.push_back(k_max);
    gv.push_back(n - slope * k_max);

    std::vector<std::pair<double, double>> windows;
    double env = gv[0];
    for (size_t i = 0; i + 1 < gk.size(); ++i) {
      env = std::max(env, gv[i]);
      double after_max = -1e300;
      for (size_t j = i + 1; j < gv.size() && j <= i + 8; ++j)
        after_max = std::max(after_max, gv[j]);
      if (env - after_max >= deficit_threshold)
        windows.emplace_back(gk[i], gk[i + 1]);
    }
    if (windows.empty()) break;

    ++st.diag.rescans;
    const int depth = std::min(pass, 2) + 1;  // h/16, h/256, h/4096
    const double fine = h / std::pow(16.0, depth);
    for (auto [lo, hi] : windows) {
      lo = std::max(lo - 0.25 * h, 1e-14);
      hi = std::min(hi + 0.25 * h, k_max);
      const int points =
          std::min(40001, static_cast<int>(std::ceil((hi - lo) / fine)) + 2);
      st.scan_window(lo, hi, points, true);
    }
    st.consolidate();

    int after_count = 0;
    for (const RootInfo& r : st.roots) after_count += r.multiplicity;
    if (st.roots.size() == before && after_count == before_count) {
      if (++stale_passes >= 3) {  // deepest resolution exhausted
        st.diag.unresolved_deficit = true;
        break;
      }
    } else {
      stale_passes = 0;
    }
  }

  Spectrum s;
  s.roots = st.roots;
  s.lambda0_multiplicity = lambda0;
  s.k_max = k_max;
  s.total_length = L;
  s.diagnostics = st.diag;

  // hard Weyl bounds
  int n = lambda0;
  auto check = [&](double k, int count) {
    if (count < slope * k - g.edge_count() - 1e-9 ||
        count > slope * k + g.vertex_count() + 1e-9)
      throw WeylViolation(
          "counting function out of Weyl bounds at k = " + std::to_string(k) +
          ": N = " + std::to_string(count));
  };
  for (const RootInfo& r : s.roots) {
    check(r.k, n);  // just before the jump
    n += r.multiplicity;
    check(r.k, n);
  }
  check(k_max, n);
  return s;
}

inline Spectrum find_spectrum(const MetricGraph& g, const FluxAssignment& flux,
                              double k_max, SolverConfig cfg = {}) {
  return find_spectrum(SecularEngine(g, flux), k_max, cfg);
}

inline Spectrum find_spectrum(const MetricGraph& g, double k_max,
                              SolverConfig cfg = {}) {
  return find_spectrum(SecularEngine(g), k_max, cfg);
}

/// Outcome of an interlacing comparison between two spectra.
struct InterlacingReport {
  bool ok = true;
  int first_violation_index = -1;  // 1-based spectral index
  double max_violation = 0.0;
  int compared = 0;
  std::vector<int> equality_indices;  // flagged, not failed
  std::string detail;

  void raise_if_failed() const {
    if (!ok)
      throw InterlacingViolation("interlacing violated at index " +
                                     std::to_string(first_violation_index) +
                                     ": " + detail,
                                 first_violation_index);
  }
};

namespace detail {

inline InterlacingReport compare_interlaced(const std::vector<double>& lower,
                                            const std::vector<double>& upper,
                                            double tol) {
  InterlacingReport rep;
  const int count = static_cast<int>(
      std::min(lower.size() > 0 ? lower.size() - 1 : 0, upper.size()));
  rep.compared = count;
  for (int i = 0; i < count; ++i) {
    const double lo_violation = lower[i] - upper[i];
    const double hi_violation = upper[i] - lower[i + 1];
    const double v = std::max(lo_violation, hi_violation);
    rep.max_violation = std::max(rep.max_violation, v);
    if (v > tol && rep.ok) {
      rep.ok = false;
      rep.first_violation_index = i + 1;
      rep.detail = "lambda_" + std::to_string(i + 1) + " interlace gap " +
                   std::to_string(v);
    }
    if (std::abs(lower[i] - upper[i]) <= tol ||
        std::abs(upper[i] - lower[i + 1]) <= tol)
      rep.equality_indices.push_back(i + 1);
  }
  return rep;
}

}  // namespace detail

/// Neumann -> Dirichlet interlacing at one vertex:
/// k_n(G0) <= k_n(Ginf) <= k_{n+1}(G0), compared as flat k lists.
inline InterlacingReport verify_interlacing_nd(const MetricGraph& g,
                                               int vertex, double k_max,
                                               SolverConfig cfg = {}) {
  if (g.condition(vertex) != VertexCondition::Neumann)
    throw NotNeumann("verify_interlacing_nd: vertex must be Neumann");
  const MetricGraph gd =
      modify_condition(g, vertex, VertexCondition::Dirichlet);
  const Spectrum s0 = find_spectrum(g, k_max, cfg);
  const Spectrum sd = find_spectrum(gd, k_max, cfg);
  return detail::compare_interlaced(s0.expanded_k(), sd.expanded_k(),
                                    2.0 * cfg.refine_tol);
}

/// Vertex-gluing interlacing: k_n(G) <= k_n(G') <= k_{n+1}(G) where G' is G
/// with the two Neumann vertices merged.
inline InterlacingReport verify_interlacing_merge(const MetricGraph& g, int v1,
                                                  int v2, double k_max,
                                                  SolverConfig cfg = {}) {
  const MetricGraph gm = merge_vertices(g, v1, v2);
  const Spectrum s0 = find_spectrum(g, k_max, cfg);
  const Spectrum sm = find_spectrum(gm, k_max, cfg);
  return detail::compare_interlaced(s0.expanded_k(), sm.expanded_k(),
                                    2.0 * cfg.refine_tol);
}

}  // namespace qgraph
