#include "fixtures.hpp"
#include "oracle_values.hpp"

#include "qgs/errors.hpp"
#include "qgs/random_graph.hpp"
#include "qgs/spectrum.hpp"

#include <doctest.h>

#include <numbers>
#include <random>

using namespace qgs;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> first(const MetricGraph& g, std::size_t n, SpectrumMode mode) {
  return first_eigenvalues(g, CouplingMatrix::from_graph(g), n, mode).expanded();
}

}  // namespace

TEST_CASE("Neumann interval") {
  const double l = 1.3;
  for (const auto mode : {SpectrumMode::weyl, SpectrumMode::matching}) {
    const auto ev = first(fixtures::interval(l), 10, mode);
    REQUIRE(ev.size() == 10);
    for (int n = 0; n < 10; ++n)
      CHECK(ev[n] == doctest::Approx(std::pow(n * kPi / l, 2)).epsilon(1e-10));
  }
}

TEST_CASE("equilateral star: double eigenvalues at half-integer k") {
  const auto r = first_eigenvalues(fixtures::star3(), CouplingMatrix::zero(fixtures::star3()), 8,
                                   SpectrumMode::weyl);
  const auto ev = r.expanded();
  const std::vector<double> k{0.0, 0.5, 0.5, 1.0, 1.5, 1.5, 2.0, 2.5};
  REQUIRE(ev.size() == 8);
  for (std::size_t i = 0; i < ev.size(); ++i)
    CHECK(ev[i] == doctest::Approx(std::pow(k[i] * kPi, 2)).epsilon(1e-9));
  CHECK(r.eigenvalues[1].multiplicity == 2);
  const auto m = first(fixtures::star3(), 8, SpectrumMode::matching);
  for (std::size_t i = 0; i < ev.size(); ++i) CHECK(m[i] == doctest::Approx(ev[i]).epsilon(1e-9));
}

TEST_CASE("four-vertex path against the mpmath secular scan") {
  for (const auto mode : {SpectrumMode::weyl, SpectrumMode::matching}) {
    const auto ev = first(fixtures::four_vertex(), 6, mode);
    REQUIRE(ev.size() == 6);
    for (std::size_t i = 0; i < 6; ++i)
      CHECK(std::abs(ev[i] - oracle::four_vertex_spectrum[i]) < 1e-10);
  }
}

TEST_CASE("large couplings approach the Dirichlet interval") {
  const double a = 1e6;
  const auto ev = first(fixtures::interval(1.0, a, a), 4, SpectrumMode::weyl);
  REQUIRE(ev.size() == 4);
  for (int n = 1; n <= 4; ++n) {
    const double dirichlet = std::pow(n * kPi, 2);
    CHECK(ev[n - 1] < dirichlet);
    CHECK(ev[n - 1] == doctest::Approx(dirichlet).epsilon(1e-5));
  }
}

TEST_CASE("negative couplings give negative eigenvalues") {
  // Robin interval with a = -1 at both ends: -k tanh... lowest z = -t^2 with t tanh(t/2) = 1.
  const auto ev = first(fixtures::interval(1.0, -1.0, -1.0), 2, SpectrumMode::weyl);
  REQUIRE(ev.size() == 2);
  CHECK(ev[0] < 0.0);
  const double t = std::sqrt(-ev[0]);
  CHECK(t * std::tanh(t / 2.0) == doctest::Approx(1.0).epsilon(1e-10));
  const double bound = negative_eigenvalue_bound(fixtures::interval(1.0, -1.0, -1.0),
                                                 CouplingMatrix::from_graph(fixtures::interval(1.0, -1.0, -1.0)));
  CHECK(bound >= t);
}

TEST_CASE("secular and matching modes agree on random graphs") {
  std::mt19937_64 rng(2024);
  for (int g = 0; g < 8; ++g) {
    const auto graph = random_graph(rng);
    const auto w = first(graph, 10, SpectrumMode::weyl);
    const auto m = first(graph, 10, SpectrumMode::matching);
    REQUIRE(w.size() == 10);
    REQUIRE(m.size() == 10);
    for (std::size_t i = 0; i < 10; ++i) CHECK(std::abs(w[i] - m[i]) < 1e-8 * (1.0 + std::abs(w[i])));
  }
}

TEST_CASE("counting function is monotone and consistent with the eigenvalues") {
  const auto g = fixtures::triangle();
  const auto kappa = CouplingMatrix::from_graph(g);
  const auto ev = compact_spectrum(g, kappa, 60.0, SpectrumMode::weyl).expanded();
  int last = 0;
  for (double t = -3.0; t <= std::sqrt(60.0); t += 0.05) {
    const int n = eigenvalue_count(g, kappa, t);
    CHECK(n >= last);
    last = n;
    const double z = t * std::abs(t);
    const auto below = std::count_if(ev.begin(), ev.end(), [&](double e) { return e < z - 1e-9; });
    const auto upto = std::count_if(ev.begin(), ev.end(), [&](double e) { return e <= z + 1e-9; });
    CHECK(n >= below);
    CHECK(n <= upto);
  }
}

TEST_CASE("complex couplings are rejected") {
  auto g = fixtures::triangle();
  std::vector<Complex> c{{0.1, 0.2}, 0.0, 0.0};
  g = g.with_couplings(c);
  CHECK_THROWS_AS(compact_spectrum(g, CouplingMatrix::from_graph(g), 10.0, SpectrumMode::weyl),
                  NonSelfAdjoint);
  CHECK(parse_spectrum_mode("matching") == SpectrumMode::matching);
  CHECK_THROWS_AS(parse_spectrum_mode("secular"), InputError);
}
