// Command-line front end: spectra, secular-function scans, Weyl gap plots,
// nodal counts, flux sweeps and the built-in verification suites.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "qgraph/qgraph.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw qgraph::Error("cannot open graph file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const std::string& out_path, const std::string& content) {
  if (out_path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw qgraph::Error("cannot write output file: " + out_path);
  out << content;
}

std::vector<double> parse_flux_flag(const std::string& flag) {
  std::vector<double> values;
  if (flag.empty()) return values;
  std::stringstream ss(flag);
  std::string tok;
  while (std::getline(ss, tok, ',')) values.push_back(std::stod(tok));
  return values;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"spectra of compact quantum graphs via the secular determinant"};
  app.require_subcommand(1);

  std::string graph_path, out_path, flux_flag, suite = "oracles";
  double k_max = 30.0, grid_step = 0.0, tol = 1e-11;
  int bands = 4, points = 41;
  unsigned seed = 20240901u;

  auto add_common = [&](CLI::App* cmd, bool needs_graph) {
    if (needs_graph)
      cmd->add_option("graph", graph_path, "graph description file")
          ->required();
    cmd->add_option("--out", out_path, "write output to a file");
    return cmd;
  };

  auto* c_spectrum = add_common(
      app.add_subcommand("spectrum", "eigenvalues up to --kmax as CSV"), true);
  c_spectrum->add_option("--kmax", k_max, "scan ceiling in k");
  c_spectrum->add_option("--grid-step", grid_step, "scan grid step");
  c_spectrum->add_option("--tol", tol, "root refinement tolerance");
  c_spectrum->add_option("--flux", flux_flag, "comma-separated cycle fluxes");

  auto* c_zeta = add_common(
      app.add_subcommand("zeta", "secular function on a k grid as CSV"), true);
  c_zeta->add_option("--kmax", k_max, "scan ceiling in k");
  c_zeta->add_option("--grid-step", grid_step, "sample spacing");
  c_zeta->add_option("--flux", flux_flag, "comma-separated cycle fluxes");

  auto* c_weylgap = add_common(
      app.add_subcommand("weylgap",
                         "counting function minus the Weyl term as CSV"),
      true);
  c_weylgap->add_option("--kmax", k_max, "scan ceiling in k");
  c_weylgap->add_option("--grid-step", grid_step, "scan grid step");
  c_weylgap->add_option("--tol", tol, "root refinement tolerance");
  c_weylgap->add_option("--flux", flux_flag, "comma-separated cycle fluxes");

  auto* c_nodal = add_common(
      app.add_subcommand("nodal", "zero counts and nodal surpluses as CSV"),
      true);
  c_nodal->add_option("--kmax", k_max, "scan ceiling in k");
  c_nodal->add_option("--tol", tol, "root refinement tolerance");

  auto* c_sweep = add_common(
      app.add_subcommand("sweep", "eigenvalue bands over the flux torus"),
      true);
  c_sweep->add_option("--bands", bands, "number of bands");
  c_sweep->add_option("--points", points, "grid points per flux direction");
  c_sweep->add_option("--tol", tol, "root refinement tolerance");

  auto* c_verify = add_common(
      app.add_subcommand("verify", "run a named verification suite"), false);
  c_verify->add_option("--suite", suite,
                       "interlacing | isospectral | magnetic-nodal | oracles");
  c_verify->add_option("--seed", seed, "seed for the randomized corpus");

  CLI11_PARSE(app, argc, argv);

  try {
    qgraph::SolverConfig cfg;
    cfg.grid_step = grid_step;
    cfg.refine_tol = tol;

    if (c_spectrum->parsed() || c_zeta->parsed() || c_weylgap->parsed() ||
        c_nodal->parsed() || c_sweep->parsed()) {
      const qgraph::ParsedGraph parsed = qgraph::parse_graph_file(
          read_file(graph_path));
      const qgraph::FluxAssignment flux = qgraph::commands::resolve_flux(
          parsed.graph, parsed.flux, parse_flux_flag(flux_flag));

      std::string csv;
      if (c_spectrum->parsed())
        csv = qgraph::commands::cmd_spectrum(parsed.graph, flux, k_max, cfg);
      else if (c_zeta->parsed())
        csv = qgraph::commands::cmd_zeta(parsed.graph, flux, k_max, grid_step);
      else if (c_weylgap->parsed())
        csv = qgraph::commands::cmd_weylgap(parsed.graph, flux, k_max, cfg);
      else if (c_nodal->parsed())
        csv = qgraph::commands::cmd_nodal(parsed.graph, k_max, cfg);
      else
        csv = qgraph::commands::cmd_sweep(parsed.graph, bands, points, cfg);
      write_output(out_path, csv);
      return 0;
    }

    const qgraph::ReportDocument doc = qgraph::commands::cmd_verify(suite,
                                                                    seed);
    write_output(out_path, doc.to_text());
    return doc.all_passed() ? 0 : 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
