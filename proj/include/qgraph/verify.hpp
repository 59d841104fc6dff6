#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qgraph/corpus.hpp"
#include "qgraph/magnetic.hpp"
#include "qgraph/report.hpp"

namespace qgraph {
namespace verify {

/// Calibrates a single proportionality constant at the sample point with
/// the largest closed-form magnitude, then reports the worst relative
/// deviation between the engine determinant and the closed form.
inline double closed_form_deviation(const MetricGraph& g,
                                    const std::function<Complex(double)>& form,
                                    const std::vector<double>& ks,
                                    const FluxAssignment& flux = {}) {
  SecularEngine eng(g, flux.size()
                           ? flux
                           : FluxAssignment::zero(fundamental_cycles(g).beta));
  double best = -1.0;
  Complex calib(1.0, 0.0);
  for (double k : ks) {
    const Complex f = form(k);
    if (std::abs(f) > best) {
      best = std::abs(f);
      calib = eng.sigma(k) / f;
    }
  }
  double worst = 0.0;
  for (double k : ks) {
    const Complex want = calib * form(k);
    const double dev = std::abs(eng.sigma(k) - want) /
                       std::max(1.0, std::abs(want));
    worst = std::max(worst, dev);
  }
  return worst;
}

inline std::vector<double> random_k_grid(std::mt19937& rng, int n,
                                         double lo = 0.1, double hi = 20.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> ks(n);
  for (double& k : ks) k = dist(rng);
  return ks;
}

/// Largest pairwise deviation between the first `count` positive roots of
/// two graphs.
inline double isospectral_deviation(const MetricGraph& a, const MetricGraph& b,
                                    int count, SolverConfig cfg = {}) {
  const double k_est =
      M_PI * (count + a.vertex_count() + 2) / a.total_length();
  Spectrum sa = find_spectrum(a, k_est, cfg);
  Spectrum sb = find_spectrum(b, k_est, cfg);
  std::vector<double> ka, kb;
  for (const RootInfo& r : sa.roots)
    ka.insert(ka.end(), r.multiplicity, r.k);
  for (const RootInfo& r : sb.roots)
    kb.insert(kb.end(), r.multiplicity, r.k);
  if (static_cast<int>(ka.size()) < count ||
      static_cast<int>(kb.size()) < count)
    throw Error("isospectral_deviation: not enough roots collected");
  double worst = 0.0;
  for (int i = 0; i < count; ++i)
    worst = std::max(worst, std::abs(ka[i] - kb[i]));
  return worst;
}

/// Deterministic choice of a Neumann vertex for corpus interlacing checks:
/// highest degree, then lowest id.
inline int pick_neumann_vertex(const MetricGraph& g) {
  int best = -1;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.condition(v) != VertexCondition::Neumann) continue;
    if (g.outgoing_bonds(v).empty()) continue;
    if (best < 0 || g.degree(v) > g.degree(best)) best = v;
  }
  return best;
}

inline std::pair<int, int> pick_neumann_pair(const MetricGraph& g) {
  int first = -1;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (g.condition(v) != VertexCondition::Neumann) continue;
    if (g.outgoing_bonds(v).empty()) continue;
    if (first < 0) {
      first = v;
    } else {
      return {first, v};
    }
  }
  return {first, -1};
}

// ---------------------------------------------------------------------------
// suites
// ---------------------------------------------------------------------------

inline ReportDocument interlacing_suite(unsigned seed) {
  ReportDocument doc;
  doc.command = "verify interlacing";
  doc.add_config("seed", std::to_string(seed));
  SolverConfig cfg;
  const double tol = 2.0 * cfg.refine_tol;

  for (const CorpusEntry& entry : random_corpus(seed)) {
    const double k_max = 50.0 / entry.graph.total_length() + 2.0;
    const int v = pick_neumann_vertex(entry.graph);
    if (v >= 0) {
      const InterlacingReport rep =
          verify_interlacing_nd(entry.graph, v, k_max, cfg);
      doc.add_row("interlace-nd/" + entry.name, rep.ok, rep.max_violation,
                  tol, "compared=" + std::to_string(rep.compared));
    }
    const auto [v1, v2] = pick_neumann_pair(entry.graph);
    if (v1 >= 0 && v2 >= 0) {
      const InterlacingReport rep =
          verify_interlacing_merge(entry.graph, v1, v2, k_max, cfg);
      doc.add_row("interlace-merge/" + entry.name, rep.ok, rep.max_violation,
                  tol, "compared=" + std::to_string(rep.compared));
    }
  }

  // chain of two dihedral copies: doubled spectrum vs the twice
  // Dirichlet-decoupled graph
  {
    const double a = M_PI, b = 1.0, c = std::sqrt(2.0);
    const MetricGraph one = oracles::dihedral_graph(a, b, c);
    const MetricGraph two = disjoint_union(one, one);
    // Dirichlet at the first copy's left junction (vertex 1) and the second
    // copy's right junction (vertex 4 + 2)
    const MetricGraph hat = modify_condition(
        modify_condition(two, 1, VertexCondition::Dirichlet), 6,
        VertexCondition::Dirichlet);
    const double k_max = 3.2;
    const Spectrum s = find_spectrum(two, k_max, cfg);
    const Spectrum sh = find_spectrum(hat, k_max, cfg);
    const auto ks = s.expanded_k();
    const auto kh = sh.expanded_k();
    bool ok = true;
    double worst = 0.0;
    // s_{2m-1} = s_{2m} <= shat_{2m-1} <= shat_{2m} <= s_{2m+1}
    for (size_t m = 1; 2 * m < ks.size() && 2 * m - 1 < kh.size(); ++m) {
      const double s_low = ks[2 * m - 1];    // s_{2m}
      const double s_pair = ks[2 * m - 2];   // s_{2m-1}
      worst = std::max(worst, std::abs(s_low - s_pair));
      ok = ok && std::abs(s_low - s_pair) <= tol;
      const double h1 = kh[2 * m - 2];
      worst = std::max(worst, s_low - h1);
      ok = ok && s_low <= h1 + tol;
      if (2 * m - 1 < kh.size() && 2 * m < ks.size()) {
        const double h2 = kh[2 * m - 1];
        worst = std::max(worst, h1 - h2);
        ok = ok && h1 <= h2 + tol;
        const double s_next = ks[2 * m];
        worst = std::max(worst, h2 - s_next);
        ok = ok && h2 <= s_next + tol;
      }
    }
    doc.add_row("interlace-chain/dihedral", ok, worst, tol,
                "doubled dihedral vs decoupled chain");
  }
  return doc;
}

inline ReportDocument isospectral_suite(unsigned seed) {
  ReportDocument doc;
  doc.command = "verify isospectral";
  doc.add_config("seed", std::to_string(seed));
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> len(0.6, 2.2);

  std::vector<std::array<double, 3>> triples = {
      {M_PI, 1.0, std::sqrt(2.0)}};
  for (int i = 0; i < 5; ++i)
    triples.push_back({len(rng), len(rng), len(rng)});

  for (size_t i = 0; i < triples.size(); ++i) {
    const auto [a, b, c] = triples[i];
    const double dev =
        isospectral_deviation(oracles::dihedral_graph(a, b, c),
                              oracles::dihedral_tree(a, b, c), 30);
    doc.add_row("isospectral/dihedral-pair-" + std::to_string(i), dev < 1e-8,
                dev, 1e-8,
                "a=" + fmt12(a) + " b=" + fmt12(b) + " c=" + fmt12(c));
  }
  return doc;
}

inline ReportDocument magnetic_nodal_suite(unsigned seed) {
  ReportDocument doc;
  doc.command = "verify magnetic-nodal";
  doc.add_config("seed", std::to_string(seed));
  SolverConfig cfg;

  // dihedral table case
  {
    const double a = M_PI, b = 1.0, c = std::sqrt(2.0);
    const MetricGraph g = oracles::dihedral_graph(a, b, c);
    const MagneticNodalReport rep = verify_magnetic_nodal(g, 2.6, 1e-3, cfg);
    int mismatches = 0;
    for (const auto& e : rep.entries)
      if (!e.skipped && !e.match) ++mismatches;
    doc.add_row("magnetic-nodal/dihedral", rep.ok && rep.checked >= 9,
                mismatches, 0,
                "checked=" + std::to_string(rep.checked));
  }

  // mandarin saddle rule: surplus 1 for n > 1, 0 for the ground state
  {
    std::mt19937 rng(seed + 1);
    std::uniform_real_distribution<double> len(0.7, 2.0);
    const MetricGraph g =
        oracles::mandarin({len(rng), len(rng), len(rng)});
    const double k_max = 16.0 / g.total_length() * M_PI;
    const MagneticNodalReport rep = verify_magnetic_nodal(g, k_max, 1e-3, cfg);
    bool rule = rep.ok;
    for (const auto& e : rep.entries) {
      if (e.skipped) continue;
      rule = rule && (e.n == 1 ? e.surplus == 0 : e.surplus == 1);
    }
    doc.add_row("magnetic-nodal/mandarin", rule && rep.checked >= 3,
                rep.checked, 0, "surplus 0 then 1");
  }

  // a tree has no cycles: every surplus and every Morse index is zero
  {
    const MetricGraph g = oracles::dihedral_tree(1.1, 0.7, 1.7);
    const MagneticNodalReport rep = verify_magnetic_nodal(g, 6.0, 1e-3, cfg);
    bool zeros = rep.ok;
    for (const auto& e : rep.entries)
      if (!e.skipped) zeros = zeros && e.surplus == 0 && e.morse_index == 0;
    doc.add_row("magnetic-nodal/tree", zeros && rep.checked >= 4, rep.checked,
                0, "all zero");
  }
  return doc;
}

inline ReportDocument oracle_suite(unsigned seed) {
  ReportDocument doc;
  doc.command = "verify oracles";
  doc.add_config("seed", std::to_string(seed));
  std::mt19937 rng(seed);
  const double tol = 1e-10;

  // closed-form secular determinants
  {
    const double L1 = 0.9, L2 = 1.7;
    const double dev = closed_form_deviation(
        oracles::lasso(L1, L2),
        [&](double k) { return oracles::lasso_secular(L1, L2, k); },
        random_k_grid(rng, 200));
    doc.add_row("sigma/lasso", dev < tol, dev, tol);
  }
  {
    const std::vector<double> L = {0.8, 1.3, 2.1};
    const double dev = closed_form_deviation(
        oracles::mandarin(L),
        [&](double k) { return oracles::mandarin_secular(L[0], L[1], L[2], k); },
        random_k_grid(rng, 200));
    doc.add_row("sigma/mandarin", dev < tol, dev, tol);
  }
  {
    const std::vector<double> L = {0.7, 1.1, 1.6};
    const double dev = closed_form_deviation(
        oracles::neumann_star(L),
        [&](double k) { return oracles::star_secular_neumann_full(L, k); },
        random_k_grid(rng, 200));
    doc.add_row("sigma/neumann-star", dev < tol, dev, tol);
    const double devd = closed_form_deviation(
        oracles::dirichlet_star(L),
        [&](double k) { return oracles::star_secular_dirichlet_full(L, k); },
        random_k_grid(rng, 200));
    doc.add_row("sigma/dirichlet-star", devd < tol, devd, tol);
  }
  {
    const double a = M_PI, b = 1.0, c = std::sqrt(2.0);
    const double dev = closed_form_deviation(
        oracles::dihedral_graph(a, b, c),
        [&](double k) { return oracles::dihedral_secular(a, b, c, k); },
        random_k_grid(rng, 200));
    doc.add_row("sigma/dihedral", dev < tol, dev, tol);
    // magnetic variant, flux through the cycle chord
    double worst = 0.0;
    for (double alpha : {0.4, 1.1, 2.4, -0.7}) {
      const double d = closed_form_deviation(
          oracles::dihedral_graph(a, b, c),
          [&](double k) { return oracles::dihedral_secular(a, b, c, k, alpha); },
          random_k_grid(rng, 50), FluxAssignment({alpha}));
      worst = std::max(worst, d);
    }
    doc.add_row("sigma/dihedral-magnetic", worst < tol, worst, tol);
    const double devt = closed_form_deviation(
        oracles::dihedral_tree(a, b, c),
        [&](double k) { return oracles::dihedral_secular(a, b, c, k); },
        random_k_grid(rng, 200));
    doc.add_row("sigma/dihedral-tree", devt < tol, devt, tol);
  }

  // symmetry factorization smoke tests: the determinant must vanish
  // wherever a factor does, and the calibrated product must reproduce it
  {
    const double a = 0.9, b = 1.4;
    const double dev = closed_form_deviation(
        oracles::tetrahedron(a, b),
        [&](double k) { return oracles::tetrahedron_secular(a, b, k); },
        random_k_grid(rng, 200));
    doc.add_row("factorization/tetrahedron", dev < tol, dev, tol);

    SecularEngine eng(oracles::tetrahedron(a, b));
    double worst = 0.0;
    int zeros = 0;
    for (int fi = 0; fi < 3; ++fi) {
      auto factor = [&](double k) {
        return std::abs(oracles::tetrahedron_factors(a, b, k)[fi]);
      };
      for (double k = 0.15; k < 4.0; k += 1e-3) {
        if (factor(k) < factor(k - 1e-3) && factor(k) < factor(k + 1e-3) &&
            factor(k) < 5e-2) {
          const double kz = detail::brent_min(
              [&](double x) { return factor(x); }, k - 1e-3, k + 1e-3, 1e-12);
          if (factor(kz) < 1e-8) {
            worst = std::max(worst, std::abs(eng.sigma(kz)));
            ++zeros;
          }
        }
      }
    }
    doc.add_row("smoke/tetrahedron-factor-zeros", worst < 1e-6 && zeros > 3,
                worst, 1e-6, "zeros=" + std::to_string(zeros));
  }
  {
    const double a = M_PI, b = 1.0, c = std::sqrt(2.0);
    const double dev = closed_form_deviation(
        oracles::dihedral_parent(a, b, c),
        [&](double k) { return oracles::dihedral_parent_secular(a, b, c, k); },
        random_k_grid(rng, 200, 0.1, 6.0));
    doc.add_row("factorization/dihedral-parent", dev < tol, dev, tol);

    SecularEngine eng(oracles::dihedral_parent(a, b, c));
    double worst = 0.0;
    int zeros = 0;
    for (int fi = 0; fi < 5; ++fi) {
      auto factor = [&](double k) {
        return std::abs(oracles::dihedral_parent_factors(a, b, c, k)[fi]);
      };
      for (double k = 0.1; k < 2.5; k += 5e-4) {
        if (factor(k) < factor(k - 5e-4) && factor(k) < factor(k + 5e-4) &&
            factor(k) < 5e-2) {
          const double kz = detail::brent_min(
              [&](double x) { return factor(x); }, k - 5e-4, k + 5e-4, 1e-12);
          if (factor(kz) < 1e-8) {
            worst = std::max(worst, std::abs(eng.sigma(kz)));
            ++zeros;
          }
        }
      }
    }
    doc.add_row("smoke/dihedral-parent-factor-zeros",
                worst < 1e-6 && zeros > 8, worst, 1e-6,
                "zeros=" + std::to_string(zeros));
  }

  // det S sign formula across the corpus
  {
    bool ok = true;
    for (const CorpusEntry& entry : random_corpus(seed))
      ok = ok && oracles::verify_det_s(entry.graph).ok;
    doc.add_row("det-s/corpus", ok, 0, 0, "25 graphs");
  }

  // merged-progression counting against brute force
  {
    std::mt19937 prng(seed + 17);
    std::uniform_real_distribution<double> ab(0.1, 10.0);
    std::uniform_int_distribution<int> ns(1, 1000);
    int checked = 0, failures = 0;
    while (checked < 1000) {
      const double alpha = ab(prng), beta = ab(prng);
      const int n = ns(prng);
      std::vector<std::pair<double, int>> merged;
      for (int m = 1; m <= n + 1; ++m) {
        merged.push_back({m / alpha, 0});
        merged.push_back({m / beta, 1});
      }
      std::sort(merged.begin(), merged.end());
      double lambda;
      if (n == 1) {
        lambda = merged[0].first / 2.0;
      } else {
        if (merged[n - 1].first - merged[n - 2].first < 1e-12) continue;
        lambda = 0.5 * (merged[n - 2].first + merged[n - 1].first);
      }
      long long brute = 0;
      for (int i = 0; i < n - 1; ++i) brute += merged[i].second == 0;
      try {
        if (progression_split_count(alpha, beta, n) != brute) ++failures;
      } catch (const CommensurateTie&) {
        continue;  // ambiguous by construction, retry with the next draw
      }
      ++checked;
    }
    doc.add_row("progression-split/brute-force", failures == 0, failures, 0,
                "1000 triples");
  }

  // dihedral zero-count formula vs counted zeros (the count is the ground
  // truth; the rows report how often each reading of the formula agrees)
  {
    std::mt19937 trng(seed + 5);
    std::uniform_real_distribution<double> len(0.8, 2.4);
    std::vector<std::array<double, 3>> triples = {
        {M_PI, 1.0, std::sqrt(2.0)}};
    for (int i = 0; i < 4; ++i)
      triples.push_back({len(trng), len(trng), len(trng)});
    for (size_t t = 0; t < triples.size(); ++t) {
      const auto [a, b, c] = triples[t];
      const MetricGraph g = oracles::dihedral_graph(a, b, c);
      const double L = g.total_length();
      const double k_max = (42.0 + g.vertex_count()) * M_PI / L;
      const Spectrum s = find_spectrum(g, k_max);
      const auto profile = nodal_surplus_profile(g, s);
      int usable = 0, agree_published = 0, agree_side = 0;
      for (const auto& p : profile) {
        if (!p.valid || p.n > 40) continue;
        ++usable;
        if (dihedral_zero_count_formula(a, b, c, p.n) == p.phi)
          ++agree_published;
        if (dihedral_zero_count_side_parity(a, b, c, p.n) == p.phi)
          ++agree_side;
      }
      doc.add_row(
          "nodal-formula/triple-" + std::to_string(t), usable >= 30,
          agree_published, usable,
          "published=" + std::to_string(agree_published) + "/" +
              std::to_string(usable) +
              " side-parity=" + std::to_string(agree_side) + "/" +
              std::to_string(usable));
    }
  }
  return doc;
}

inline ReportDocument run_suite(const std::string& name, unsigned seed) {
  if (name == "interlacing") return interlacing_suite(seed);
  if (name == "isospectral") return isospectral_suite(seed);
  if (name == "magnetic-nodal") return magnetic_nodal_suite(seed);
  if (name == "oracles") return oracle_suite(seed);
  throw Error("unknown verification suite '" + name +
              "'; available: interlacing, isospectral, magnetic-nodal, "
              "oracles");
}

}  // namespace verify
}  // namespace qgraph
