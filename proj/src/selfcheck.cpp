#include "qgs/selfcheck.hpp"

#include "qgs/errors.hpp"
#include "qgs/highcontrast.hpp"
#include "qgs/inverse.hpp"
#include "qgs/io.hpp"
#include "qgs/numerics.hpp"
#include "qgs/random_graph.hpp"
#include "qgs/scattering.hpp"
#include "qgs/spectrum.hpp"
#include "qgs/weyl.hpp"

#include <Eigen/Eigenvalues>

#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

namespace qgs {

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool passed = true;
  std::ostringstream detail;

  void fail(const std::string& what) {
    if (!passed) detail << "; ";
    else detail.str("");
    passed = false;
    detail << what;
  }
};

CheckResult timed(const std::string& name, const std::function<void(Outcome&)>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    body(out);
  } catch (const std::exception& e) {
    out.fail(std::string("exception: ") + e.what());
  }
  const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - start;
  return {name, out.passed, out.detail.str(), dt.count()};
}

std::string sci(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", x);
  return buf;
}

MetricGraph two_vertex_graph() {
  return MetricGraph({{"V1", 0.3}, {"V2", -0.7}}, {{"e1", "V1", "V2", 1.0}}, {"V1"});
}

MetricGraph four_vertex_graph() {
  return MetricGraph({{"V1", 0.5}, {"V2", -0.25}, {"V3", 1.0}, {"V4", 0.75}},
                     {{"e1", "V1", "V2", 1.0},
                      {"e2", "V2", "V3", std::sqrt(2.0)},
                      {"e3", "V3", "V4", std::sqrt(3.0)}},
                     {"V1"});
}

MetricGraph triangle_graph() {
  return MetricGraph({{"V1", 0.4}, {"V2", -1.1}, {"V3", 0.9}},
                     {{"e1", "V1", "V2", 1.0},
                      {"e2", "V2", "V3", std::sqrt(2.0)},
                      {"e3", "V1", "V3", std::sqrt(3.0) - 0.5}},
                     {"V1", "V3"});
}

MetricGraph neumann_interval(double length) {
  return MetricGraph({{"V1", 0.0}, {"V2", 0.0}}, {{"e1", "V1", "V2", length}}, {});
}

double hermitian_min_eigenvalue(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m);
  return es.eigenvalues().minCoeff();
}

double scale_of(const CMatrix& m) { return std::max(1.0, m.cwiseAbs().maxCoeff()); }

}  // namespace

CheckResult check_weyl_structure(const SelfCheckOptions& options) {
  return timed("Weyl-matrix structure", [&](Outcome& out) {
    std::mt19937_64 rng(options.seed);
    const Complex zs[] = {{1.0, 0.5}, {-2.0, 0.1}, {7.3, 2.0}, {30.0, 0.01}};
    double worst_sym = 0.0, worst_herglotz = 0.0, worst_real = 0.0;
    for (int g = 0; g < 20; ++g) {
      const MetricGraph graph = random_graph(rng);
      for (const Complex z : zs) {
        const CMatrix m = weyl_full(graph, sqrt_upper(z)).entries;
        const CMatrix mc = weyl_full(graph, sqrt_upper(std::conj(z))).entries;
        worst_sym = std::max(worst_sym, (mc - m.adjoint()).cwiseAbs().maxCoeff() / scale_of(m));
        const CMatrix im = (m - m.adjoint()) / Complex(0.0, 2.0);
        worst_herglotz = std::max(worst_herglotz, -hermitian_min_eigenvalue(im));
      }
      std::uniform_real_distribution<double> sd(0.1, 60.0);
      for (int i = 0; i < 4; ++i) {
        double s = sd(rng);
        SpectralPoint p = sqrt_upper(Complex(s, 0.0));
        if (pole_distance(graph, p).value < 1e-3) continue;
        const CMatrix m = weyl_full(graph, p).entries;
        const CMatrix expected = Complex(0.0, 2.0) * p.sqrt_z * external_projection(graph);
        worst_real = std::max(worst_real, (m - m.adjoint() - expected).cwiseAbs().maxCoeff());
      }
    }
    if (worst_sym > 1e-12) out.fail("M(conj z) != M(z)*: " + sci(worst_sym));
    if (worst_herglotz > 1e-10) out.fail("Im M below -1e-10: " + sci(-worst_herglotz));
    if (worst_real > 1e-12) out.fail("M(s)-M(s)* mismatch " + sci(worst_real));
    if (out.passed)
      out.detail << "20 graphs; symmetry " << sci(worst_sym) << ", Im M >= " << sci(-worst_herglotz)
                 << ", boundary " << sci(worst_real);
  });
}

CheckResult check_spectrum_oracle(const SelfCheckOptions& options) {
  return timed("Spectrum oracle equivalence", [&](Outcome& out) {
    std::mt19937_64 rng(options.seed + 1);
    std::vector<MetricGraph> graphs{neumann_interval(1.3)};
    RandomGraphOptions ro;
    ro.min_leads = 0;
    while (graphs.size() < 10) graphs.push_back(random_graph(rng, ro));
    double worst = 0.0, worst_exact = 0.0;
    for (std::size_t g = 0; g < graphs.size(); ++g) {
      const CouplingMatrix kappa = CouplingMatrix::from_graph(graphs[g]);
      const auto a = first_eigenvalues(graphs[g], kappa, 10, SpectrumMode::weyl).expanded();
      const auto b = first_eigenvalues(graphs[g], kappa, 10, SpectrumMode::matching).expanded();
      if (a.size() < 10 || b.size() < 10) {
        out.fail("graph " + std::to_string(g) + ": fewer than 10 eigenvalues");
        continue;
      }
      for (std::size_t i = 0; i < 10; ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
      if (g == 0)
        for (std::size_t i = 0; i < 10; ++i) {
          const double n = static_cast<double>(i);
          worst_exact = std::max(worst_exact, std::abs(a[i] - (n * kPi / 1.3) * (n * kPi / 1.3)));
        }
    }
    if (worst > 1e-8) out.fail("secular vs matching differ by " + sci(worst));
    if (worst_exact > 1e-8) out.fail("Neumann interval off by " + sci(worst_exact));
    if (out.passed)
      out.detail << "10 graphs; max diff " << sci(worst) << ", Neumann " << sci(worst_exact);
  });
}

CheckResult check_scattering(const SelfCheckOptions& options) {
  return timed("Scattering unitarity and factorisation", [&](Outcome& out) {
    std::mt19937_64 rng(options.seed + 2);
    std::vector<MetricGraph> graphs{two_vertex_graph(), triangle_graph(), random_graph(rng)};
    double worst_unit = 0.0, worst_gap = 0.0, worst_identity = 0.0;
    for (const auto& graph : graphs) {
      const CouplingMatrix kappa = CouplingMatrix::from_graph(graph);
      const CouplingMatrix zero = CouplingMatrix::zero(graph);
      for (int i = 0; i < 200; ++i) {
        const double s = 0.1 + 0.25 * i;
        const ScatteringMatrix sm = sigma_external(graph, kappa, s, 1e-10);
        worst_unit = std::max(worst_unit, unitarity_defect(sm.entries));
        worst_gap = std::max(worst_gap, sm.factorisation_gap / scale_of(sm.entries));
        const CMatrix id = sigma_external(graph, zero, s).entries;
        worst_identity = std::max(
            worst_identity, (id - CMatrix::Identity(id.rows(), id.cols())).cwiseAbs().maxCoeff());
      }
    }
    if (worst_unit > 1e-8) out.fail("unitarity defect " + sci(worst_unit));
    if (worst_gap > 1e-10) out.fail("projected vs factorised " + sci(worst_gap));
    if (worst_identity > 1e-12) out.fail("kappa = 0 not identity: " + sci(worst_identity));
    if (out.passed)
      out.detail << "3 graphs x 200 s; unitarity " << sci(worst_unit) << ", gap " << sci(worst_gap)
                 << ", identity " << sci(worst_identity);
  });
}

CheckResult check_rtd_extraction(const SelfCheckOptions& options) {
  return timed("RtD extraction identity", [&](Outcome& out) {
    std::mt19937_64 rng(options.seed + 3);
    std::vector<MetricGraph> graphs{two_vertex_graph(), triangle_graph(), four_vertex_graph(),
                                    random_graph(rng)};
    std::vector<Complex> grid;
    for (int i = 0; i < 40; ++i) grid.emplace_back(0.2 + 0.5 * i, 0.0);
    grid.emplace_back(1.0, 1.0);
    grid.emplace_back(-4.0, 0.5);
    grid.emplace_back(-100.0, 0.0);
    double worst = 0.0;
    std::size_t used = 0, dropped = 0;
    for (const auto& graph : graphs) {
      const CouplingMatrix kappa = CouplingMatrix::from_graph(graph);
      const SigmaOracle oracle = [&](const SpectralPoint& p) {
        return sigma_external(graph, kappa, p).entries;
      };
      const RtDSamples samples = extract_rtd(oracle, graph, grid);
      dropped += grid.size() - samples.grid.size();
      for (std::size_t i = 0; i < samples.grid.size(); ++i) {
        const CMatrix ref = robin_to_dirichlet(graph, kappa, sqrt_upper(samples.grid[i]));
        worst = std::max(worst, (samples.values[i] - ref).cwiseAbs().maxCoeff() / scale_of(ref));
        ++used;
      }
    }
    if (worst > 1e-9) out.fail("RtD mismatch " + sci(worst));
    if (out.passed)
      out.detail << used << " points (" << dropped << " singular dropped); max rel err "
                 << sci(worst);
  });
}

CheckResult check_contraction(const SelfCheckOptions& /*options*/) {
  return timed("Contraction limit", [&](Outcome& out) {
    const double deltas[] = {1e-2, 1e-3, 1e-4};
    double worst_slope = 1e300;
    int checked = 0;
    for (const auto& graph : {triangle_graph(), four_vertex_graph()}) {
      const CouplingMatrix kappa = CouplingMatrix::from_graph(graph);
      const auto paths = spanning_tree(graph, inversion_root(graph));
      for (const auto& path : paths) {
        if (path.edge_ids.empty()) continue;
        const ContractionCheck c =
            validate_contraction(graph, kappa, path, sqrt_upper(Complex(1.0, 1.0)), deltas);
        worst_slope = std::min(worst_slope, c.slope);
        ++checked;
        if (!(c.slope >= 0.9))
          out.fail("path to " + path.target + ": slope " + std::to_string(c.slope));
      }
    }
    if (out.passed) out.detail << checked << " paths; min slope " << worst_slope;
  });
}

CheckResult check_inverse_round_trip(const SelfCheckOptions& options) {
  return timed("End-to-end inverse round trip", [&](Outcome& out) {
    std::mt19937_64 rng(options.seed + 4);
    std::vector<MetricGraph> graphs{two_vertex_graph(), four_vertex_graph(), triangle_graph()};
    RandomGraphOptions ro;
    ro.loops = true;
    while (graphs.size() < 6) graphs.push_back(random_graph(rng, ro));
    LadderOptions ladder;
    ladder.jobs = options.jobs;
    double worst = 0.0;
    for (std::size_t g = 0; g < graphs.size(); ++g) {
      const MetricGraph& truth = graphs[g];
      std::vector<Complex> zeros(truth.vertex_count(), Complex{});
      const MetricGraph topology = truth.with_couplings(zeros);
      const InversionResult r =
          invert(topology, make_forward_path_oracle(truth, ForwardRoute::scattering), ladder);
      const auto expected = truth.couplings();
      for (std::size_t i = 0; i < expected.size(); ++i) {
        const double err = std::abs(r.couplings.diagonal[i] - expected[i]);
        worst = std::max(worst, err);
        if (err > 1e-4)
          out.fail("graph " + std::to_string(g) + " vertex " + r.couplings.vertex_ids[i] +
                   ": error " + sci(err));
      }
    }
    if (out.passed) out.detail << graphs.size() << " graphs; max error " << sci(worst);
  });
}

CheckResult check_homogenisation(const SelfCheckOptions& options) {
  return timed("Homogenisation order", [&](Outcome& out) {
    const HighContrastCell cell = HighContrastCell::make(0.25, 0.5, 1.0, 0.1);
    const double eps[] = {0.2, 0.1, 0.05};
    const double taus[] = {0.0, kPi / 2, -kPi / 2};
    // Three bands so that two non-trivial ones remain where the lowest is exact.
    const ConvergenceStudy study = convergence_study(cell, eps, taus, 3, options.jobs);
    double lo = 1e300, hi = -1e300;
    for (const double tau : taus) {
      int tested = 0;
      for (int band = 1; band <= 3 && tested < 2; ++band) {
        const ConvergenceRow* row = nullptr;
        for (const auto& r : study.rows)
          if (r.tau == tau && r.band == band) row = &r;
        if (!row) {
          out.fail("missing band " + std::to_string(band));
          break;
        }
        if (row->exact) continue;
        ++tested;
        lo = std::min(lo, row->fitted_order);
        hi = std::max(hi, row->fitted_order);
        if (!(row->fitted_order >= 1.8 && row->fitted_order <= 2.3))
          out.fail("tau=" + std::to_string(tau) + " band " + std::to_string(band) + ": order " +
                   std::to_string(row->fitted_order));
      }
      if (tested < 2) out.fail("fewer than two non-trivial bands at tau=" + std::to_string(tau));
    }

    // Band unions over a tau grid: limit model at tau vs delta-prime model at tau + pi.
    double worst_union = 0.0, worst_point = 0.0;
    const int n_tau = 64, bands = 3;
    std::vector<double> lo_a(bands, 1e300), hi_a(bands, -1e300), lo_b(bands, 1e300),
        hi_b(bands, -1e300);
    for (int i = 0; i < n_tau; ++i) {
      const double tau = -kPi + 2.0 * kPi * i / n_tau;
      const auto a = hom_tau_spectrum(cell, tau, bands).eigenvalues;
      const auto b = hom_dprime_spectrum(cell, shifted_quasimomentum(tau), bands).eigenvalues;
      worst_point = std::max(worst_point, max_band_gap(a, b));
      for (int n = 0; n < bands && n < static_cast<int>(std::min(a.size(), b.size())); ++n) {
        lo_a[n] = std::min(lo_a[n], a[n]);
        hi_a[n] = std::max(hi_a[n], a[n]);
        lo_b[n] = std::min(lo_b[n], b[n]);
        hi_b[n] = std::max(hi_b[n], b[n]);
      }
    }
    for (int n = 0; n < bands; ++n)
      worst_union = std::max({worst_union, std::abs(lo_a[n] - lo_b[n]), std::abs(hi_a[n] - hi_b[n])});
    if (worst_union > 1e-8) out.fail("band unions differ by " + sci(worst_union));
    if (out.passed)
      out.detail << "orders in [" << lo << ", " << hi << "]; band-union gap " << sci(worst_union)
                 << ", pointwise " << sci(worst_point);
  });
}

CheckResult check_analytic_anchor(const SelfCheckOptions& /*options*/) {
  return timed("Analytic anchor", [&](Outcome& out) {
    const HighContrastCell cell = HighContrastCell::make(0.25, 0.5, 1.0, 0.1);
    const auto z = hom_tau_spectrum(cell, 0.0, 2).eigenvalues;
    // tan x = -x on (pi/2, pi), written without the poles of tan.
    const double x = refine_sign_change([](double t) { return std::sin(t) + t * std::cos(t); },
                                        kPi / 2 + 1e-3, kPi, 1e-15);
    const double expected = 16.0 * x * x;
    if (z.size() < 2) {
      out.fail("fewer than two eigenvalues");
      return;
    }
    if (std::abs(z[0]) > 1e-6) out.fail("lowest eigenvalue " + format_double(z[0]) + " != 0");
    if (std::abs(z[1] - expected) > 1e-6)
      out.fail("second eigenvalue " + format_double(z[1]) + " vs " + format_double(expected));
    if (out.passed)
      out.detail << "z = 0 and z = " << format_double(z[1]) << " (x = " << format_double(x) << ")";
  });
}

CheckResult check_graph_core(const SelfCheckOptions& options) {
  return timed("Graph core", [&](Outcome& out) {
    std::mt19937_64 rng(options.seed + 5);
    for (int i = 0; i < 10; ++i) {
      const MetricGraph g = random_graph(rng);
      if (!(parse_graph(serialize_graph(g)) == g)) out.fail("serialise/parse round trip");
      if (!validate(g).valid()) out.fail("random graph failed validation");
      const auto paths = spanning_tree(g, g.vertices().front().id);
      if (paths.size() != g.vertex_count()) out.fail("spanning tree misses vertices");
      for (std::size_t p = 1; p < paths.size(); ++p)
        if (paths[p].vertex_count() < paths[p - 1].vertex_count()) out.fail("path order");
    }
    const MetricGraph path3({{"V1", 0.3}, {"V2", -0.4}, {"V3", 0.7}},
                            {{"e1", "V1", "V2", 1.0}, {"e2", "V2", "V3", 1.5}}, {"V1"});
    const MetricGraph c = contract(path3, "e1");
    if (c.vertex_count() != 2 || std::abs(c.vertices()[0].coupling - Complex(-0.1)) > 1e-15)
      out.fail("contraction coupling sum");
    for (const double coef : {0.01, 1.0, 100.0})
      for (const Complex z : {Complex(3.0, 0.0), Complex(-2.0, 1.0), Complex(40.0, 0.5)}) {
        const Matrix2c t = transfer_matrix(coef, 0.37, z);
        // Relative to the size of the products entering the determinant.
        const double scale = std::max(1.0, std::abs(t(0, 0) * t(1, 1)));
        const double d = std::abs(t.determinant() - 1.0) / scale;
        if (d > 1e-12) out.fail("transfer determinant off by " + sci(d));
      }
    if (out.passed) out.detail << "round trip, validation, tree order, contraction, transfer det";
  });
}

std::vector<CheckResult> run_selfcheck(const SelfCheckOptions& options) {
  return {check_graph_core(options),         check_weyl_structure(options),
          check_spectrum_oracle(options),    check_scattering(options),
          check_rtd_extraction(options),     check_contraction(options),
          check_inverse_round_trip(options), check_homogenisation(options),
          check_analytic_anchor(options)};
}

}  // namespace qgs
