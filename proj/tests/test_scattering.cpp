#include "fixtures.hpp"
#include "oracle_values.hpp"

#include "qgs/errors.hpp"
#include "qgs/random_graph.hpp"
#include "qgs/scattering.hpp"

#include <doctest.h>

#include <random>

using namespace qgs;

TEST_CASE("triangle scattering matrix matches the mpmath plane-wave solve") {
  const auto g = fixtures::triangle();
  const auto s = sigma_external(g, CouplingMatrix::from_graph(g), 2.0);
  REQUIRE(s.entries.rows() == 2);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      const auto* r = oracle::triangle_sigma_s2[i * 2 + j];
      CHECK(std::abs(s.entries(i, j) - Complex(r[0], r[1])) < 1e-12);
    }
}

TEST_CASE("zero coupling gives the identity") {
  std::mt19937_64 rng(5);
  for (int g = 0; g < 5; ++g) {
    const auto graph = random_graph(rng);
    const auto kappa = CouplingMatrix::zero(graph);
    for (const double s : {0.5, 3.7, 20.0}) {
      const auto sm = sigma_external(graph, kappa, s);
      const auto n = sm.entries.rows();
      CHECK((sm.entries - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff() < 1e-12);
    }
  }
}

TEST_CASE("unitarity and factorisation on random graphs") {
  std::mt19937_64 rng(17);
  for (int g = 0; g < 6; ++g) {
    const auto graph = random_graph(rng);
    const auto kappa = CouplingMatrix::from_graph(graph);
    for (double s = 0.25; s < 30.0; s += 1.37) {
      try {
        const auto sm = sigma_external(graph, kappa, s);
        CHECK(unitarity_defect(sm.entries) < 1e-8);
        CHECK(sm.factorisation_gap < 1e-10);
      } catch (const PoleProximity&) {
      } catch (const SingularMatrix&) {
      }
    }
  }
}

TEST_CASE("projected product equals the lead-matching construction") {
  const auto g = fixtures::triangle();
  const auto kappa = CouplingMatrix::from_graph(g);
  for (const double s : {0.7, 2.0, 5.5}) {
    const CMatrix sk = lead_matching_oracle(g, kappa, s);
    const CMatrix s0 = lead_matching_oracle(g, CouplingMatrix::zero(g), s);
    const CMatrix sigma = sigma_external(g, kappa, s).entries;
    CHECK((sigma - sk * s0.inverse()).cwiseAbs().maxCoeff() < 1e-11);
  }
}

TEST_CASE("external block of the full matrix") {
  const auto g = fixtures::triangle();
  const auto kappa = CouplingMatrix::from_graph(g);
  const CMatrix full = sigma_full(g, kappa, 1.9);
  const CMatrix ext = sigma_external(g, kappa, 1.9).entries;
  const auto idx = g.external_indices();
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = 0; j < idx.size(); ++j)
      CHECK(std::abs(full(idx[i], idx[j]) - ext(i, j)) < 1e-12);
}

TEST_CASE("factors are consistent with the kappa-independent factor") {
  const auto g = fixtures::triangle();
  const auto z = sqrt_upper({2.5, 0.0});
  const auto f = scattering_factors(g, CouplingMatrix::from_graph(g), z);
  const CMatrix q = kappa_independent_factor(g, z);
  const auto ext = g.external_indices();
  for (std::size_t i = 0; i < ext.size(); ++i)
    for (std::size_t j = 0; j < ext.size(); ++j)
      CHECK(std::abs(q(i, j) - f.right(ext[i], ext[j])) < 1e-13);
}

TEST_CASE("energy must be positive") {
  const auto g = fixtures::triangle();
  CHECK_THROWS_AS(sigma_external(g, CouplingMatrix::from_graph(g), -1.0), InputError);
}
