// Acceptance suite: every criterion prints one PASS/FAIL line; the binary
// exits nonzero if any of them fail.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "qgraph/qgraph.hpp"

using namespace qgraph;

namespace {

int failures = 0;

void report(int criterion, bool pass, const std::string& detail) {
  std::printf("criterion %2d: %s  %s\n", criterion, pass ? "PASS" : "FAIL",
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

double now_seconds() {
  using clock = std::chrono::steady_clock;
  return std::chrono::duration<double>(clock::now().time_since_epoch())
      .count();
}

std::vector<double> random_ks(std::mt19937& rng, int n, double lo = 0.1,
                              double hi = 20.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> ks(n);
  for (double& k : ks) k = dist(rng);
  return ks;
}

// --------------------------------------------------------------------------

void criterion_1_interval_spectra() {
  bool pass = true;
  std::string detail;
  double worst = 0.0, worst_time = 0.0;
  const std::pair<VertexCondition, VertexCondition> kinds[] = {
      {VertexCondition::Neumann, VertexCondition::Neumann},
      {VertexCondition::Dirichlet, VertexCondition::Dirichlet},
      {VertexCondition::Neumann, VertexCondition::Dirichlet}};
  for (double L : {1.0, M_PI, std::sqrt(2.0)}) {
    for (const auto& [left, right] : kinds) {
      const MetricGraph g = oracles::interval(L, left, right);
      const bool mixed = left != right;
      const double k30 = mixed ? 29.5 * M_PI / L : 30.0 * M_PI / L;
      const double k_max = k30 + 0.4 * M_PI / L;
      const double t0 = now_seconds();
      const Spectrum s = find_spectrum(g, k_max);
      const double dt = now_seconds() - t0;
      worst_time = std::max(worst_time, dt);
      const auto want =
          oracles::interval_spectrum(L, left, right, k_max);
      if (s.roots.size() < 30) {
        pass = false;
        detail = "missing roots";
        continue;
      }
      for (int i = 0; i < 30; ++i)
        worst = std::max(worst, std::abs(s.roots[i].k - want[i]));
      if ((left == VertexCondition::Neumann &&
           right == VertexCondition::Neumann) !=
          (s.lambda0_multiplicity == 1))
        pass = false;
    }
  }
  pass = pass && worst < 1e-10 && worst_time < 1.0;
  report(1, pass,
         "interval NN/DD/ND max |dk| = " + fmt12(worst) + ", slowest " +
             fmt12(worst_time) + " s");
}

void criterion_2_unitarity_detS(const std::vector<CorpusEntry>& corpus) {
  double worst = 0.0;
  bool det_ok = true;
  for (const auto& entry : corpus) {
    const BondMatrices bm = scattering_matrix(entry.graph);
    const int m = entry.graph.bond_count();
    worst = std::max(
        worst, (bm.S.transpose() * bm.S - Eigen::MatrixXd::Identity(m, m))
                   .cwiseAbs()
                   .maxCoeff());
    det_ok = det_ok && oracles::verify_det_s(entry.graph).ok;
  }
  report(2, worst < 1e-12 && det_ok,
         "corpus ||S^T S - I|| = " + fmt12(worst) +
             (det_ok ? ", det S formula exact" : ", det S MISMATCH"));
}

void criterion_3_real_zeta(const std::vector<CorpusEntry>& corpus) {
  double worst = 0.0;
  for (const auto& entry : corpus) {
    SecularEngine eng(entry.graph);
    const double k_hi = 40.0 / entry.graph.total_length() + 5.0;
    for (int i = 1; i <= 500; ++i) {
      const SecularValue sv = eng.secular(k_hi * i / 500.0);
      worst = std::max(worst,
                       sv.residual_imag / std::max(1.0, std::abs(sv.zeta)));
    }
  }
  report(3, worst < 1e-9, "max |Im zeta| (relative) = " + fmt12(worst));
}

void criterion_4_closed_forms() {
  std::mt19937 rng(20240904u);
  double worst = 0.0;
  auto run = [&](const MetricGraph& g, auto form, const FluxAssignment& flux,
                 int nk = 200) {
    const double dev =
        verify::closed_form_deviation(g, form, random_ks(rng, nk), flux);
    worst = std::max(worst, dev);
  };
  const double a = M_PI, b = 1.0, c = std::sqrt(2.0);
  run(oracles::lasso(0.9, 1.7),
      [](double k) { return oracles::lasso_secular(0.9, 1.7, k); },
      FluxAssignment({0.0}));
  run(oracles::mandarin({0.8, 1.3, 2.1}),
      [](double k) { return oracles::mandarin_secular(0.8, 1.3, 2.1, k); },
      FluxAssignment({0.0, 0.0}));
  const std::vector<double> SL = {0.7, 1.1, 1.6};
  run(oracles::neumann_star(SL),
      [&](double k) { return oracles::star_secular_neumann_full(SL, k); },
      FluxAssignment{});
  run(oracles::dirichlet_star(SL),
      [&](double k) { return oracles::star_secular_dirichlet_full(SL, k); },
      FluxAssignment{});
  run(oracles::dihedral_graph(a, b, c),
      [&](double k) { return oracles::dihedral_secular(a, b, c, k); },
      FluxAssignment({0.0}));
  for (double alpha : {0.35, 1.4, -2.2})
    run(oracles::dihedral_graph(a, b, c),
        [&, alpha](double k) {
          return oracles::dihedral_secular(a, b, c, k, alpha);
        },
        FluxAssignment({alpha}), 70);
  report(4, worst < 1e-10,
         "engine vs closed forms, max relative deviation = " + fmt12(worst));
}

void criterion_5_multiplicity() {
  const MetricGraph g = oracles::neumann_star({M_PI / 2, M_PI / 2, M_PI / 2});
  SecularEngine eng(g);
  const int dim = eng.null_dimension(1.0);
  // root order of zeta at k = 1 by divided differences
  const double h = 1e-4;
  const double r = std::abs(eng.zeta(1.0 + 2 * h)) /
                   std::max(std::abs(eng.zeta(1.0 + h)), 1e-300);
  const double order = std::log2(r);
  const Spectrum s = find_spectrum(g, 1.5);
  const bool root_found = !s.roots.empty() &&
                          std::abs(s.roots.back().k - 1.0) < 1e-9 &&
                          s.roots.back().multiplicity == 2;
  report(5, dim == 2 && std::abs(order - 2.0) < 0.05 && root_found,
         "null dim = " + std::to_string(dim) +
             ", zeta root order = " + fmt12(order));
}

void criterion_6_weyl_completeness(const std::vector<CorpusEntry>& corpus) {
  bool pass = true;
  std::string note = "bounds hold on corpus";
  for (const auto& entry : corpus) {
    const double k_max = 50.0 / entry.graph.total_length();
    try {
      const Spectrum s = find_spectrum(entry.graph, k_max);
      for (const auto& [k, gap] : weyl_gap(s)) {
        if (gap < -entry.graph.edge_count() - 1e-9 ||
            gap > entry.graph.vertex_count() + 1e-9) {
          pass = false;
          note = "bound violated on " + entry.name;
        }
      }
    } catch (const WeylViolation& e) {
      pass = false;
      note = std::string("WeylViolation: ") + e.what();
    }
  }

  // seeded hidden-pair test: perturbed equilateral stars hide tangential
  // near-double roots between coarse grid points
  std::mt19937 rng(20240906u);
  std::uniform_real_distribution<double> eps(2e-5, 2e-4);
  int recovered = 0, expected = 0;
  for (int trial = 0; trial < 5; ++trial) {
    const double e1 = eps(rng), e2 = eps(rng);
    const MetricGraph g = oracles::neumann_star(
        {M_PI / 2, M_PI / 2 + e1, M_PI / 2 + e2});
    const double k_max = 6.3;
    const Spectrum s = find_spectrum(g, k_max);
    // ground truth from the robust closed form: count roots of the
    // three-term sine sum by fine bisection
    const std::vector<double> L = {M_PI / 2, M_PI / 2 + e1, M_PI / 2 + e2};
    int brute = 1;  // zero mode
    const int fine = 400000;
    double prev = oracles::star_secular_neumann(L, k_max / fine);
    for (int i = 2; i <= fine; ++i) {
      const double cur = oracles::star_secular_neumann(L, k_max * i / fine);
      if (prev * cur < 0) ++brute;
      if (cur != 0) prev = cur;
    }
    expected += brute;
    recovered += s.total_count();
  }
  if (recovered != expected) {
    pass = false;
    note = "hidden-pair recovery " + std::to_string(recovered) + "/" +
           std::to_string(expected);
  } else {
    note += "; hidden pairs recovered " + std::to_string(recovered) + "/" +
            std::to_string(expected);
  }
  report(6, pass, note);
}

void criterion_7_interlacing(const std::vector<CorpusEntry>& corpus) {
  bool pass = true;
  double worst = 0.0;
  SolverConfig cfg;
  const double tol = 2e-11;
  for (const auto& entry : corpus) {
    const MetricGraph& g = entry.graph;
    const double k_max = 40.0 / g.total_length();
    const int v = verify::pick_neumann_vertex(g);
    if (v >= 0) {
      const InterlacingReport rep = verify_interlacing_nd(g, v, k_max, cfg);
      worst = std::max(worst, rep.max_violation);
      pass = pass && rep.max_violation <= tol;
    }
    const auto [v1, v2] = verify::pick_neumann_pair(g);
    if (v1 >= 0 && v2 >= 0) {
      const InterlacingReport rep =
          verify_interlacing_merge(g, v1, v2, k_max, cfg);
      worst = std::max(worst, rep.max_violation);
      pass = pass && rep.max_violation <= tol;
    }
  }
  // dihedral chain with its built-in degeneracies
  const ReportDocument chain = verify::interlacing_suite(20240907u);
  bool chain_ok = false;
  for (const auto& row : chain.rows)
    if (row.name == "interlace-chain/dihedral") chain_ok = row.pass;
  report(7, pass && chain_ok,
         "max interlacing violation = " + fmt12(worst) +
             (chain_ok ? ", dihedral chain pattern holds"
                       : ", dihedral chain FAILED"));
}

void criterion_8_isospectrality() {
  const double t0 = now_seconds();
  std::mt19937 rng(20240908u);
  std::uniform_real_distribution<double> len(0.6, 2.2);
  double worst = 0.0;
  std::vector<std::array<double, 3>> triples = {{M_PI, 1.0, std::sqrt(2.0)}};
  for (int i = 0; i < 5; ++i)
    triples.push_back({len(rng), len(rng), len(rng)});
  for (const auto& [a, b, c] : triples) {
    worst = std::max(
        worst, verify::isospectral_deviation(oracles::dihedral_graph(a, b, c),
                                             oracles::dihedral_tree(a, b, c),
                                             30));
  }
  const double dt = now_seconds() - t0;
  report(8, worst < 1e-8 && dt < 30.0,
         "dihedral pair max |dk| over 30 roots = " + fmt12(worst) + " in " +
             fmt12(dt) + " s");
}

void criterion_9_dihedral_table() {
  const double a = M_PI, b = 1.0, c = std::sqrt(2.0);
  const MetricGraph g = oracles::dihedral_graph(a, b, c);
  const Spectrum s = find_spectrum(g, 2.6);
  const double table_k[] = {0.1708, 0.5359, 0.9126, 1.2294, 1.3398,
                            1.6225, 1.9877, 2.3349, 2.5680};
  const int table_zeros[] = {0, 1, 3, 4, 4, 5, 7, 8, 9};
  const int table_morse[] = {0, 0, 1, 1, 0, 0, 1, 1, 1};  // min=0, max=1
  bool pass = s.roots.size() >= 9;
  std::string note;
  for (int n = 1; n <= 9 && pass; ++n) {
    // the published eigenvalue row lists k = sqrt(lambda)
    if (std::abs(s.roots[n - 1].k - table_k[n - 1]) > 2e-3) {
      pass = false;
      note = "k value mismatch at n=" + std::to_string(n);
      break;
    }
    const Eigenfunction f = reconstruct(g, s, n);
    const NodalData nd = count_zeros(f, g);
    if (nd.phi != table_zeros[n - 1]) {
      pass = false;
      note = "zero count mismatch at n=" + std::to_string(n);
      break;
    }
    const CriticalPointReport cp = hessian_at_zero(g, n);
    if (cp.morse_index != table_morse[n - 1]) {
      pass = false;
      note = "min/max mismatch at n=" + std::to_string(n);
      break;
    }
    if (cp.morse_index != nd.surplus) {
      pass = false;
      note = "Morse != surplus at n=" + std::to_string(n);
      break;
    }
  }
  if (pass)
    note = "zero counts 0,1,3,4,4,5,7,8,9 and min/max pattern reproduced";
  report(9, pass, note);
}

void criterion_10_surplus_bounds(const std::vector<CorpusEntry>& corpus) {
  bool pass = true;
  std::string note = "0 <= surplus <= beta on corpus";
  for (const auto& entry : corpus) {
    const MetricGraph& g = entry.graph;
    const int beta = fundamental_cycles(g).beta;
    const Spectrum s = find_spectrum(g, 40.0 / g.total_length());
    for (const auto& p : nodal_surplus_profile(g, s)) {
      if (!p.valid) continue;
      if (p.surplus < 0 || p.surplus > beta) {
        pass = false;
        note = "surplus " + std::to_string(p.surplus) + " outside [0, " +
               std::to_string(beta) + "] on " + entry.name;
      }
    }
  }
  // mandarin rule with random lengths
  std::mt19937 rng(20240910u);
  std::uniform_real_distribution<double> len(0.7, 2.1);
  int checked = 0;
  for (int trial = 0; trial < 3; ++trial) {
    const MetricGraph g =
        oracles::mandarin({len(rng), len(rng), len(rng)});
    const Spectrum s = find_spectrum(g, 14.0 * M_PI / g.total_length());
    for (const auto& p : nodal_surplus_profile(g, s)) {
      if (!p.valid) continue;
      ++checked;
      const int want = p.n == 1 ? 0 : 1;
      if (p.surplus != want) {
        pass = false;
        note = "mandarin surplus " + std::to_string(p.surplus) + " at n=" +
               std::to_string(p.n);
      }
    }
  }
  report(10, pass && checked >= 30,
         note + "; mandarin levels checked: " + std::to_string(checked));
}

void criterion_11_even_zeros() {
  bool pass = true;
  int checked = 0;
  std::mt19937 rng(20240911u);
  std::uniform_real_distribution<double> len(0.7, 2.1);
  std::vector<MetricGraph> graphs = {
      oracles::lasso(len(rng), len(rng)),
      oracles::lasso(len(rng), len(rng)),
      oracles::mandarin({len(rng), len(rng), len(rng)}),
      oracles::mandarin({len(rng), len(rng), len(rng)}),
      oracles::dihedral_graph(M_PI, 1.0, std::sqrt(2.0)),
      oracles::dihedral_graph(len(rng), len(rng), len(rng))};
  for (const MetricGraph& g : graphs) {
    const CycleBasis basis = fundamental_cycles(g);
    const Spectrum s = find_spectrum(g, 30.0 / g.total_length());
    for (const auto& p : nodal_surplus_profile(g, s)) {
      if (!p.valid || p.flag == "zero-mode") continue;
      const Eigenfunction f = reconstruct(g, s, p.n);
      const NodalData nd = count_zeros(f, g);
      for (const auto& cycle : basis.cycles) {
        if (zeros_on_cycle(nd, g, cycle) % 2 != 0) pass = false;
        ++checked;
      }
      if (basis.beta == 2) {
        // symmetric difference of the two basis cycles is again a cycle
        std::vector<char> in_first(g.edge_count(), 0);
        for (int bd : basis.cycles[0]) in_first[g.bond_edge(bd)] = 1;
        int count = 0;
        for (const auto& [e, x] : nd.zero_positions) {
          std::vector<char> in_second(g.edge_count(), 0);
          for (int bd : basis.cycles[1]) in_second[g.bond_edge(bd)] = 1;
          if (in_first[e] != in_second[e]) ++count;
        }
        if (count % 2 != 0) pass = false;
        ++checked;
      }
    }
  }
  report(11, pass && checked > 40,
         "even-zero checks on cycles: " + std::to_string(checked));
}

void criterion_12_progression_split() {
  std::mt19937 rng(20240912u);
  std::uniform_real_distribution<double> ab(0.1, 10.0);
  std::uniform_int_distribution<int> ns(1, 1000);
  int checked = 0, bad = 0;
  while (checked < 1000) {
    const double alpha = ab(rng), beta = ab(rng);
    const int n = ns(rng);
    std::vector<std::pair<double, int>> merged;
    for (int m = 1; m <= n + 1; ++m) {
      merged.push_back({m / alpha, 0});
      merged.push_back({m / beta, 1});
    }
    std::sort(merged.begin(), merged.end());
    if (n > 1 && merged[n - 1].first - merged[n - 2].first < 1e-12) continue;
    long long brute = 0;
    for (int i = 0; i < n - 1; ++i) brute += merged[i].second == 0;
    try {
      if (progression_split_count(alpha, beta, n) != brute) ++bad;
      ++checked;
    } catch (const CommensurateTie&) {
    }
  }
  report(12, bad == 0,
         "merged-progression counting: " + std::to_string(checked - bad) +
             "/" + std::to_string(checked) + " agree with brute force");
}

void criterion_13_nodal_formula_report() {
  std::mt19937 rng(20240913u);
  std::uniform_real_distribution<double> len(0.8, 2.4);
  std::vector<std::array<double, 3>> triples = {{M_PI, 1.0, std::sqrt(2.0)}};
  for (int i = 0; i < 4; ++i)
    triples.push_back({len(rng), len(rng), len(rng)});
  bool pass = true;
  std::string lines;
  for (size_t t = 0; t < triples.size(); ++t) {
    const auto [a, b, c] = triples[t];
    const MetricGraph g = oracles::dihedral_graph(a, b, c);
    const CycleBasis basis = fundamental_cycles(g);
    const double k_max = (42.0 + g.vertex_count()) * M_PI / g.total_length();
    const Spectrum s = find_spectrum(g, k_max);
    const auto profile = nodal_surplus_profile(g, s);
    int usable = 0, agree = 0, agree_side = 0;
    for (const auto& p : profile) {
      if (!p.valid || p.n > 40) continue;
      ++usable;
      // the numerically counted zeros are the ground truth; re-derive and
      // revalidate them against the surplus and even-cycle requirements
      const Eigenfunction f = reconstruct(g, s, p.n);
      const NodalData nd = count_zeros(f, g);
      if (nd.surplus < 0 || nd.surplus > basis.beta) pass = false;
      if (zeros_on_cycle(nd, g, basis.cycles[0]) % 2 != 0) pass = false;
      if (dihedral_zero_count_formula(a, b, c, p.n) == nd.phi) ++agree;
      if (dihedral_zero_count_side_parity(a, b, c, p.n) == nd.phi)
        ++agree_side;
    }
    if (usable < 30) pass = false;
    lines += "\n    triple " + std::to_string(t) + ": published formula " +
             std::to_string(agree) + "/" + std::to_string(usable) +
             ", side-parity reading " + std::to_string(agree_side) + "/" +
             std::to_string(usable);
  }
  report(13, pass, "agreement report for n = 1..40:" + lines);
}

}  // namespace

int main() {
  const double t0 = now_seconds();
  const auto corpus = random_corpus(20240902u);

  criterion_1_interval_spectra();
  criterion_2_unitarity_detS(corpus);
  criterion_3_real_zeta(corpus);
  criterion_4_closed_forms();
  criterion_5_multiplicity();
  criterion_6_weyl_completeness(corpus);
  criterion_7_interlacing(corpus);
  criterion_8_isospectrality();
  criterion_9_dihedral_table();
  criterion_10_surplus_bounds(corpus);
  criterion_11_even_zeros();
  criterion_12_progression_split();
  criterion_13_nodal_formula_report();

  std::printf("acceptance: %s (%d failed) in %.1f s\n",
              failures == 0 ? "PASS" : "FAIL", failures,
              now_seconds() - t0);
  return failures == 0 ? 0 : 1;
}
