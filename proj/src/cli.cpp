#include "qgs/cli.hpp"

#include "qgs/errors.hpp"
#include "qgs/graph.hpp"
#include "qgs/highcontrast.hpp"
#include "qgs/inverse.hpp"
#include "qgs/io.hpp"
#include "qgs/log.hpp"
#include "qgs/numerics.hpp"
#include "qgs/scattering.hpp"
#include "qgs/selfcheck.hpp"
#include "qgs/spectrum.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>
#include <ostream>

namespace qgs {

namespace {

using nlohmann::ordered_json;

struct Io {
  std::ostream& out;
  std::ostream& err;

  void emit(const std::string& path, const std::string& text) const {
    if (path.empty() || path == "-")
      out << text;
    else
      write_output(path, text);
  }
};

void add_warnings(CsvTable& table, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) {
    table.add_meta("warning", w);
    log::warn(w);
  }
}

// ---------------------------------------------------------------------------
// spectrum

struct SpectrumArgs {
  std::string graph;
  std::optional<double> zmax;
  std::size_t count = 0;
  std::string mode = "weyl";
  double merge_tol = 1e-8;
  double kernel_tol = 1e-8;
  std::string out;
};

int run_spectrum(const SpectrumArgs& a, const Io& io) {
  const MetricGraph graph = load_graph(a.graph);
  require_valid(graph);
  if (!a.zmax && a.count == 0) throw InputError("spectrum needs --zmax or --count");
  const CouplingMatrix kappa = CouplingMatrix::from_graph(graph);
  SpectrumOptions opt;
  opt.merge_tol = a.merge_tol;
  opt.kernel_tol = a.kernel_tol;
  opt.max_count = a.count;

  auto compute = [&](SpectrumMode mode) {
    return a.zmax ? compact_spectrum(graph, kappa, *a.zmax, mode, opt)
                  : first_eigenvalues(graph, kappa, a.count, mode, opt);
  };

  CsvTable table;
  table.add_meta("graph", a.graph);
  if (a.zmax) table.add_meta("zmax", format_double(*a.zmax));
  if (a.count) table.add_meta("count", std::to_string(a.count));
  table.add_meta("mode", a.mode);
  table.add_meta("merge_tol", format_double(a.merge_tol));
  table.add_meta("kernel_tol", format_double(a.kernel_tol));

  if (a.mode == "both") {
    const SpectrumResult w = compute(SpectrumMode::weyl);
    const SpectrumResult m = compute(SpectrumMode::matching);
    add_warnings(table, w.warnings);
    add_warnings(table, m.warnings);
    const auto ew = w.expanded(), em = m.expanded();
    table.header = {"index", "eigenvalue_weyl", "eigenvalue_matching", "abs_difference"};
    for (std::size_t i = 0; i < std::max(ew.size(), em.size()); ++i) {
      const std::string sw = i < ew.size() ? format_double(ew[i]) : "";
      const std::string sm = i < em.size() ? format_double(em[i]) : "";
      const std::string diff =
          i < ew.size() && i < em.size() ? format_double(std::abs(ew[i] - em[i])) : "";
      table.add_row({std::to_string(i + 1), sw, sm, diff});
    }
  } else {
    const SpectrumMode mode = parse_spectrum_mode(a.mode);
    const SpectrumResult r = compute(mode);
    add_warnings(table, r.warnings);
    table.header = {"index", "eigenvalue", "multiplicity", "mode"};
    std::size_t index = 1;
    for (const auto& e : r.eigenvalues)
      table.add_row({std::to_string(index++), format_double(e.value),
                     std::to_string(e.multiplicity), std::string(to_string(mode))});
  }
  io.emit(a.out, table.str());
  return 0;
}

// ---------------------------------------------------------------------------
// smatrix

struct SmatrixArgs {
  std::string graph;
  std::string s;
  double tol = 1e-10;
  std::string out;
  std::string json;
  unsigned jobs = 1;
};

int run_smatrix(const SmatrixArgs& a, const Io& io) {
  const MetricGraph graph = load_graph(a.graph);
  require_valid(graph);
  if (graph.lead_count() == 0) throw InvalidGraph("smatrix needs at least one lead");
  const CouplingMatrix kappa = CouplingMatrix::from_graph(graph);
  const bool single = a.s.find(':') == std::string::npos;
  const std::vector<double> grid = single ? parse_real_list(a.s) : parse_range(a.s);
  if (grid.size() != 1 && !a.json.empty())
    throw InputError("--json needs a single --s value");

  std::vector<std::string> ext_ids;
  for (const auto i : graph.external_indices()) ext_ids.push_back(graph.vertices()[i].id);

  if (!a.json.empty()) {
    const ScatteringMatrix sm = sigma_external(graph, kappa, grid.front(), a.tol);
    ordered_json j;
    j["s"] = grid.front();
    j["external_vertices"] = ext_ids;
    ordered_json re = ordered_json::array(), im = ordered_json::array();
    for (Eigen::Index r = 0; r < sm.entries.rows(); ++r) {
      ordered_json rr = ordered_json::array(), ri = ordered_json::array();
      for (Eigen::Index c = 0; c < sm.entries.cols(); ++c) {
        rr.push_back(sm.entries(r, c).real());
        ri.push_back(sm.entries(r, c).imag());
      }
      re.push_back(rr);
      im.push_back(ri);
    }
    j["re"] = re;
    j["im"] = im;
    j["unitarity_defect"] = unitarity_defect(sm.entries);
    j["factorisation_gap"] = sm.factorisation_gap;
    io.emit(a.json, j.dump(2) + "\n");
    return 0;
  }

  struct Point {
    std::optional<ScatteringMatrix> value;
    std::string error;
    bool numerical = false;
  };
  std::vector<Point> points(grid.size());
  parallel_for(grid.size(), a.jobs, [&](std::size_t i) {
    try {
      points[i].value = sigma_external(graph, kappa, grid[i], a.tol);
    } catch (const NumericalError& e) {
      points[i].error = e.what();
      points[i].numerical = true;
    } catch (const std::exception& e) {
      points[i].error = e.what();
    }
  });

  CsvTable table;
  table.add_meta("graph", a.graph);
  table.add_meta("s", a.s);
  table.add_meta("factorisation_tol", format_double(a.tol));
  std::string ext;
  for (const auto& id : ext_ids) ext += (ext.empty() ? "" : " ") + id;
  table.add_meta("external_vertices", ext);
  table.header = {"s"};
  const auto n = static_cast<Eigen::Index>(ext_ids.size());
  for (Eigen::Index r = 0; r < n; ++r)
    for (Eigen::Index c = 0; c < n; ++c) {
      const std::string idx = std::to_string(r + 1) + std::to_string(c + 1);
      table.header.push_back("re_" + idx);
      table.header.push_back("im_" + idx);
    }
  table.header.push_back("unitarity_defect");
  table.header.push_back("factorisation_gap");

  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!points[i].value) {
      if (!points[i].numerical) throw InputError(points[i].error);
      if (single) throw SingularBracket(points[i].error);
      table.add_meta("skipped", "s=" + format_double(grid[i]) + ": " + points[i].error);
      log::warn("skipped s=" + format_double(grid[i]) + ": " + points[i].error);
      continue;
    }
    const CMatrix& e = points[i].value->entries;
    std::vector<std::string> row{format_double(grid[i])};
    for (Eigen::Index r = 0; r < n; ++r)
      for (Eigen::Index c = 0; c < n; ++c) {
        row.push_back(format_double(e(r, c).real()));
        row.push_back(format_double(e(r, c).imag()));
      }
    row.push_back(format_double(unitarity_defect(e)));
    row.push_back(format_double(points[i].value->factorisation_gap));
    table.add_row(std::move(row));
  }
  io.emit(a.out, table.str());
  return 0;
}

// ---------------------------------------------------------------------------
// invert

struct InvertArgs {
  std::string topology;
  std::string oracle = "forward";
  std::string true_couplings;
  std::string rtd_samples;
  std::string route = "scattering";
  LadderOptions ladder;
  std::string out;
  std::string diagnostics;
};

int run_invert(const InvertArgs& a, const Io& io) {
  MetricGraph topology = load_graph(a.topology);
  require_valid(topology);
  topology = topology.with_couplings(std::vector<Complex>(topology.vertex_count(), Complex{}));

  PathOracle oracle;
  const bool samples = !a.rtd_samples.empty() || a.oracle == "samples";
  if (samples) {
    if (a.rtd_samples.empty()) throw InputError("--oracle samples needs --rtd-samples");
    oracle = make_sample_path_oracle(parse_rtd_samples(read_text_file(a.rtd_samples)));
  } else if (a.oracle == "forward") {
    if (a.true_couplings.empty()) throw InputError("--oracle forward needs --true-couplings");
    const auto values = parse_complex_list(a.true_couplings);
    if (values.size() != topology.vertex_count())
      throw InputError("--true-couplings has " + std::to_string(values.size()) +
                       " values for " + std::to_string(topology.vertex_count()) + " vertices");
    const ForwardRoute route = a.route == "direct" ? ForwardRoute::direct : ForwardRoute::scattering;
    oracle = make_forward_path_oracle(topology.with_couplings(values), route);
  } else {
    throw InputError("unknown oracle '" + a.oracle + "'");
  }

  const InversionResult r = invert(topology, oracle, a.ladder);
  for (const auto& w : r.warnings) log::warn(w);

  ordered_json j;
  ordered_json couplings = ordered_json::object();
  for (std::size_t i = 0; i < r.couplings.size(); ++i)
    couplings[r.couplings.vertex_ids[i]] = {r.couplings.diagonal[i].real(),
                                            r.couplings.diagonal[i].imag()};
  j["couplings"] = couplings;
  j["root"] = inversion_root(topology);
  j["settings"] = {{"oracle", samples ? "samples" : a.oracle},
                   {"route", a.route},
                   {"tau0", a.ladder.tau0},
                   {"levels", a.ladder.levels},
                   {"fit_degree", a.ladder.fit_degree},
                   {"residual_factor", a.ladder.residual_factor}};
  j["warnings"] = r.warnings;
  io.emit(a.out, j.dump(2) + "\n");

  if (!a.diagnostics.empty()) {
    CsvTable table;
    table.add_meta("graph", a.topology);
    table.header = {"target", "vertex_count", "degree_sum", "path_sum_re", "path_sum_im",
                    "residual", "ladder_points"};
    for (const auto& est : r.path_sums)
      table.add_row({est.path.target, std::to_string(est.path.vertex_count()),
                     std::to_string(est.degree_sum), format_double(est.value.real()),
                     format_double(est.value.imag()), format_double(est.residual),
                     std::to_string(est.taus.size())});
    write_output(a.diagnostics, table.str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// homog

struct HomogArgs {
  double l1 = 0.25;
  double l2 = 0.5;
  double a = 1.0;
  std::string eps_list = "0.2,0.1,0.05";
  std::string tau_grid = "0";
  int bands = 3;
  std::string out;
  std::string convergence_out;
  unsigned jobs = 1;
};

std::vector<double> parse_grid(const std::string& text) {
  return text.find(':') == std::string::npos ? parse_real_list(text) : parse_range(text);
}

int run_homog(const HomogArgs& h, const Io& io) {
  const auto eps = parse_real_list(h.eps_list);
  const auto taus = parse_grid(h.tau_grid);
  if (h.bands < 1) throw InputError("--bands must be at least 1");
  for (const double t : taus)
    if (!(std::abs(t) <= std::numbers::pi)) throw InputError("tau must lie in [-pi, pi]");
  const HighContrastCell cell = HighContrastCell::make(h.l1, h.l2, h.a, eps.empty() ? 1.0 : eps.front());
  cell.validate();

  auto meta = [&](CsvTable& t) {
    t.add_meta("l1", format_double(cell.l1));
    t.add_meta("l2", format_double(cell.l2));
    t.add_meta("l3", format_double(cell.l3));
    t.add_meta("a", format_double(cell.a));
    t.add_meta("eps_list", h.eps_list);
    t.add_meta("tau_grid", h.tau_grid);
    t.add_meta("bands", std::to_string(h.bands));
  };

  const DispersionTable d = dispersion_table(cell, eps, taus, h.bands, h.jobs);
  CsvTable table;
  meta(table);
  add_warnings(table, d.warnings);
  table.header = {"model", "tau", "band", "eigenvalue", "epsilon"};
  for (const auto& r : d.rows)
    table.add_row({to_string(r.model), format_double(r.tau), std::to_string(r.band),
                   format_double(r.eigenvalue), format_double(r.epsilon)});
  io.emit(h.out, table.str());

  if (!h.convergence_out.empty()) {
    const ConvergenceStudy study = convergence_study(cell, eps, taus, h.bands, h.jobs);
    CsvTable conv;
    meta(conv);
    add_warnings(conv, study.warnings);
    conv.header = {"tau", "band", "eps", "error", "fitted_order"};
    for (const auto& r : study.rows)
      conv.add_row({format_double(r.tau), std::to_string(r.band), format_double(r.epsilon),
                    format_double(r.error), r.exact ? "exact" : format_double(r.fitted_order)});
    io.emit(h.convergence_out, conv.str());
  }
  return 0;
}

// ---------------------------------------------------------------------------
// check

int run_check(const SelfCheckOptions& options, const Io& io) {
  const auto results = run_selfcheck(options);
  int passed = 0;
  for (const auto& r : results) {
    io.out << (r.passed ? "PASS " : "FAIL ") << r.name << ": " << r.detail << "\n";
    passed += r.passed ? 1 : 0;
  }
  io.out << passed << "/" << results.size() << " checks passed\n";
  return passed == static_cast<int>(results.size()) ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  log::init();
  const Io io{out, err};

  CLI::App app{"Spectral toolkit for quantum graphs and high-contrast media", "qgs"};
  app.require_subcommand(1);

  SpectrumArgs spectrum;
  auto* sp = app.add_subcommand("spectrum", "Eigenvalues of the compact part of a graph");
  sp->add_option("--graph", spectrum.graph, "Graph JSON file")->required();
  sp->add_option("--zmax", spectrum.zmax, "Upper end of the spectral window");
  sp->add_option("--count", spectrum.count, "Number of eigenvalues (with multiplicity)");
  sp->add_option("--mode", spectrum.mode, "weyl, matching or both")
      ->check(CLI::IsMember({"weyl", "matching", "both"}));
  sp->add_option("--merge-tol", spectrum.merge_tol, "Relative merge tolerance");
  sp->add_option("--kernel-tol", spectrum.kernel_tol, "Relative kernel tolerance");
  sp->add_option("--out", spectrum.out, "Output CSV (default stdout)");

  SmatrixArgs smatrix;
  auto* sm = app.add_subcommand("smatrix", "Scattering matrix on the external vertices");
  sm->add_option("--graph", smatrix.graph, "Graph JSON file")->required();
  sm->add_option("--s", smatrix.s, "Energy a:b:step or a single value")->required();
  sm->add_option("--tol", smatrix.tol, "Projected vs factorised tolerance");
  sm->add_option("--out", smatrix.out, "Output CSV (default stdout)");
  sm->add_option("--json", smatrix.json, "Matrix JSON dump for a single s ('-' for stdout)");
  sm->add_option("--jobs", smatrix.jobs, "Worker threads");

  InvertArgs invert_args;
  auto* inv = app.add_subcommand("invert", "Recover coupling constants");
  inv->add_option("--graph-topology", invert_args.topology, "Graph JSON file")->required();
  inv->add_option("--oracle", invert_args.oracle, "forward or samples")
      ->check(CLI::IsMember({"forward", "samples"}));
  inv->add_option("--true-couplings", invert_args.true_couplings,
                  "Couplings in sorted vertex order, 're' or 're:im' entries");
  inv->add_option("--rtd-samples", invert_args.rtd_samples,
                  "CSV target,z_re,z_im,f1_re,f1_im");
  inv->add_option("--route", invert_args.route, "Forward oracle route: scattering or direct")
      ->check(CLI::IsMember({"scattering", "direct"}));
  inv->add_option("--tau0", invert_args.ladder.tau0, "First ladder point");
  inv->add_option("--levels", invert_args.ladder.levels, "Ladder levels J");
  inv->add_option("--fit-degree", invert_args.ladder.fit_degree, "Degree in 1/tau");
  inv->add_option("--residual-factor", invert_args.ladder.residual_factor,
                  "Accept fits with residual <= factor (1 + |c0|)");
  inv->add_option("--jobs", invert_args.ladder.jobs, "Worker threads");
  inv->add_option("--out", invert_args.out, "Output JSON (default stdout)");
  inv->add_option("--diagnostics", invert_args.diagnostics, "Per-path CSV");

  HomogArgs homog;
  auto* hg = app.add_subcommand("homog", "Bloch spectra of the high-contrast cell and its limits");
  hg->add_option("--l1", homog.l1, "Length of the first stiff layer");
  hg->add_option("--l2", homog.l2, "Length of the soft layer");
  hg->add_option("--a", homog.a, "Contrast coefficient");
  hg->add_option("--eps-list", homog.eps_list, "Comma-separated eps values");
  hg->add_option("--tau-grid", homog.tau_grid, "Quasimomenta a:b:step or list");
  hg->add_option("--bands", homog.bands, "Bands per quasimomentum");
  hg->add_option("--out", homog.out, "Dispersion CSV (default stdout)");
  hg->add_option("--convergence-out", homog.convergence_out, "Convergence table CSV");
  hg->add_option("--jobs", homog.jobs, "Worker threads");

  SelfCheckOptions check;
  auto* ck = app.add_subcommand("check", "Run the invariant suite");
  ck->add_option("--seed", check.seed, "Random graph seed");
  ck->add_option("--jobs", check.jobs, "Worker threads");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (sp->parsed()) return run_spectrum(spectrum, io);
    if (sm->parsed()) return run_smatrix(smatrix, io);
    if (inv->parsed()) return run_invert(invert_args, io);
    if (hg->parsed()) return run_homog(homog, io);
    if (ck->parsed()) return run_check(check, io);
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  }
  return 2;
}

}  // namespace qgs
