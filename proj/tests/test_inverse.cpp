#include "fixtures.hpp"
#include "oracle_values.hpp"

#include "qgs/errors.hpp"
#include "qgs/inverse.hpp"
#include "qgs/random_graph.hpp"
#include "qgs/scattering.hpp"

#include <doctest.h>

#include <random>

using namespace qgs;

namespace {

SpanningTreePath path_to(const MetricGraph& g, const std::string& target) {
  for (const auto& p : spanning_tree(g, inversion_root(g)))
    if (p.target == target) return p;
  FAIL("no path");
  return {};
}

PathSumEstimate fake_estimate(std::vector<std::string> vertices, Complex value) {
  PathSumEstimate e;
  e.path.root = vertices.front();
  e.path.target = vertices.back();
  e.path.vertices_on_path = std::move(vertices);
  e.value = value;
  return e;
}

}  // namespace

TEST_CASE("extract_rtd recovers the mpmath Robin-to-Dirichlet map") {
  const auto g = fixtures::triangle();
  const auto z = sqrt_upper({1.7, 0.3});
  const CMatrix sigma = sigma_external(g, CouplingMatrix::from_graph(g), z).entries;
  const CMatrix rtd = extract_rtd(sigma, g.with_couplings(std::vector<Complex>(3)), z);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const auto* r = oracle::triangle_rtd[i * 2 + j];
      CHECK(std::abs(rtd(i, j) - Complex(r[0], r[1])) < 1e-11);
    }
}

TEST_CASE("extract_rtd over a grid drops singular points") {
  const auto g = fixtures::triangle();
  const auto kappa = CouplingMatrix::from_graph(g);
  SigmaOracle oracle = [&](const SpectralPoint& z) { return sigma_external(g, kappa, z).entries; };
  std::vector<Complex> grid{{0.8, 0.1}, {-4.0, 0.0}, {0.0, 0.0}, {3.1, 0.2}};
  const auto r = extract_rtd(oracle, g, grid);
  CHECK(r.grid.size() == 3);
  CHECK(r.warnings.size() == 1);
  for (std::size_t i = 0; i < r.grid.size(); ++i) {
    const CMatrix direct = robin_to_dirichlet(g, kappa, sqrt_upper(r.grid[i]));
    CHECK((r.values[i] - direct).cwiseAbs().maxCoeff() < 1e-10 * (1.0 + direct.cwiseAbs().maxCoeff()));
  }
}

TEST_CASE("f1 against the closed form on one edge") {
  const auto g = fixtures::two_vertex();
  const auto kappa = CouplingMatrix::from_graph(g);
  const auto z = SpectralPoint::from_sqrt({0.0, 3.0});
  const Complex ref(oracle::two_vertex_f1_tau3[0], oracle::two_vertex_f1_tau3[1]);
  CHECK(std::abs(f1_entry(g, kappa, z) - ref) < 1e-14);
  CHECK(std::abs(f1_determinant_ratio(g, kappa, z) - ref) < 1e-14);
}

TEST_CASE("cofactor ratio equals the resolvent entry on random graphs") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 10; ++i) {
    const auto g = random_graph(rng);
    const auto kappa = CouplingMatrix::from_graph(g);
    for (const Complex z : {Complex(-9.0, 0.0), Complex(2.0, 1.5)}) {
      const Complex a = f1_entry(g, kappa, sqrt_upper(z));
      const Complex b = f1_determinant_ratio(g, kappa, sqrt_upper(z));
      CHECK(std::abs(a - b) < 1e-10 * (1.0 + std::abs(a)));
    }
  }
}

TEST_CASE("contraction limit of shrinking path edges") {
  const auto g = fixtures::four_vertex();
  const auto kappa = CouplingMatrix::from_graph(g);
  const auto path = path_to(g, "V3");
  const auto c = contract_path(g, path);
  CHECK(c.graph.vertex_count() == 2);
  CHECK(c.merged_vertex == merged_vertex_id(merged_vertex_id("V1", "V2"), "V3"));
  const std::vector<double> deltas{1e-2, 1e-3, 1e-4};
  const auto check = validate_contraction(g, kappa, path, SpectralPoint::from_sqrt({0.0, 2.0}), deltas);
  CHECK(check.slope >= 0.9);
  CHECK(check.errors.back() < check.errors.front());
}

TEST_CASE("coupling recovery from path sums") {
  // Path sums along V1, V1-V2, V1-V2-V3.
  const std::vector<PathSumEstimate> sums{fake_estimate({"V1"}, 0.3),
                                          fake_estimate({"V1", "V2"}, -0.4),
                                          fake_estimate({"V1", "V2", "V3"}, 0.7)};
  const auto c = recover_couplings(sums);
  REQUIRE(c.size() == 3);
  CHECK(c.vertex_ids == std::vector<std::string>{"V1", "V2", "V3"});
  CHECK(std::abs(c.diagonal[0] - 0.3) < 1e-15);
  CHECK(std::abs(c.diagonal[1] - (-0.7)) < 1e-15);
  CHECK(std::abs(c.diagonal[2] - 1.1) < 1e-15);

  const std::vector<PathSumEstimate> orphan{fake_estimate({"V1", "V2"}, 1.0)};
  CHECK_THROWS_AS(recover_couplings(orphan), InconsistentPaths);
}

TEST_CASE("ladder points") {
  LadderOptions opt;
  opt.tau0 = 4.0;
  opt.levels = 3;
  CHECK(ladder(opt) == std::vector<double>{4.0, 8.0, 16.0, 32.0});
}

TEST_CASE("round trip through both forward routes") {
  for (const auto& truth : {fixtures::two_vertex(), fixtures::four_vertex(), fixtures::triangle()}) {
    const auto topology = truth.with_couplings(std::vector<Complex>(truth.vertex_count()));
    for (const auto route : {ForwardRoute::direct, ForwardRoute::scattering}) {
      const auto r = invert(topology, make_forward_path_oracle(truth, route));
      REQUIRE(r.couplings.size() == truth.vertex_count());
      for (std::size_t i = 0; i < truth.vertex_count(); ++i)
        CHECK(std::abs(r.couplings.diagonal[i] - truth.vertices()[i].coupling) < 1e-4);
    }
  }
}

TEST_CASE("round trip on random graphs") {
  std::mt19937_64 rng(123);
  for (int i = 0; i < 5; ++i) {
    const auto truth = random_graph(rng);
    const auto topology = truth.with_couplings(std::vector<Complex>(truth.vertex_count()));
    const auto r = invert(topology, make_forward_path_oracle(truth));
    for (std::size_t v = 0; v < truth.vertex_count(); ++v)
      CHECK(std::abs(r.couplings.diagonal[v] - truth.vertices()[v].coupling) < 1e-4);
  }
}

TEST_CASE("tabulated samples at the ladder points") {
  const auto truth = fixtures::four_vertex();
  const auto topology = truth.with_couplings(std::vector<Complex>(4));
  const auto forward = make_forward_path_oracle(truth, ForwardRoute::direct);
  const LadderOptions opt;
  std::map<std::string, std::vector<PathSample>> table;
  for (const auto& p : spanning_tree(topology, inversion_root(topology)))
    for (const double t : ladder(opt)) {
      const auto z = SpectralPoint::from_sqrt({0.0, t});
      table[p.target].push_back({z.z, forward(p, z)});
    }
  const auto r = invert(topology, make_sample_path_oracle(table), opt);
  for (std::size_t v = 0; v < 4; ++v)
    CHECK(std::abs(r.couplings.diagonal[v] - truth.vertices()[v].coupling) < 1e-4);
}

TEST_CASE("diverging extrapolation is reported") {
  const auto topology = fixtures::two_vertex().with_couplings(std::vector<Complex>(2));
  PathOracle noisy = [](const SpanningTreePath&, const SpectralPoint& z) {
    return Complex(std::sin(std::abs(z.sqrt_z) * 7.3), 0.0);
  };
  CHECK_THROWS_AS(invert(topology, noisy), ExtrapolationDiverged);
}

TEST_CASE("inversion needs a lead") {
  CHECK_THROWS_AS(inversion_root(fixtures::interval(1.0)), InvalidGraph);
}
