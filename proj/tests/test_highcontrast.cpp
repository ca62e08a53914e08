#include "oracle_values.hpp"

#include "qgs/errors.hpp"
#include "qgs/highcontrast.hpp"

#include <doctest.h>

#include <numbers>

using namespace qgs;

namespace {

constexpr double kPi = std::numbers::pi;
const HighContrastCell kCell = HighContrastCell::make(0.25, 0.5, 1.0, 0.1);

void check_values(const BandEigenvalues& got, std::span<const double> ref, double tol) {
  REQUIRE(got.eigenvalues.size() >= ref.size());
  for (std::size_t i = 0; i < ref.size(); ++i)
    CHECK(std::abs(got.eigenvalues[i] - ref[i]) <= tol * std::max(1.0, ref[i]));
}

}  // namespace

TEST_CASE("analytic anchor: tan x = -x") {
  const auto r = hom_tau_spectrum(kCell, 0.0, 2);
  REQUIRE(r.eigenvalues.size() == 2);
  CHECK(std::abs(r.eigenvalues[0]) < 1e-10);
  CHECK(std::abs(r.eigenvalues[1] - oracle::anchor_z) < 1e-6);
  const double x = std::sqrt(r.eigenvalues[1]) / 4.0;
  CHECK(std::tan(x) == doctest::Approx(-x).epsilon(1e-12));
  CHECK(x == doctest::Approx(oracle::anchor_x).epsilon(1e-13));
}

TEST_CASE("limit model eigenvalues against mpmath") {
  check_values(hom_tau_spectrum(kCell, 0.0, 4), oracle::hom_tau_0, 1e-12);
  check_values(hom_tau_spectrum(kCell, kPi / 2, 3), oracle::hom_tau_half_pi, 1e-12);
  check_values(hom_tau_spectrum(kCell, -kPi / 2, 3), oracle::hom_tau_half_pi, 1e-12);
}

TEST_CASE("finite-contrast Bloch eigenvalues against mpmath") {
  check_values(eps_spectrum(kCell, 0.0, 3), oracle::eps_0p1_tau_0, 1e-11);
  check_values(eps_spectrum(HighContrastCell::make(0.25, 0.5, 1.0, 0.05), kPi / 2, 2),
               oracle::eps_0p05_tau_half_pi, 1e-11);
}

TEST_CASE("Kronig-Penney chain against mpmath") {
  check_values(kronig_penney_bloch_spectrum(kCell, 1.0, 3), oracle::kronig_penney_tau_1, 1e-12);
}

TEST_CASE("delta-prime model at tau + pi has the same spectrum as the limit model at tau") {
  for (double tau = -kPi; tau < kPi; tau += kPi / 7) {
    const auto a = hom_tau_spectrum(kCell, tau, 4).eigenvalues;
    const auto b = hom_dprime_spectrum(kCell, shifted_quasimomentum(tau), 4).eigenvalues;
    CHECK(max_band_gap(a, b) < 1e-8);
  }
}

TEST_CASE("determinants vanish at eigenvalues and are entire") {
  const auto r = hom_tau_spectrum(kCell, 0.7, 3);
  for (const double z : r.eigenvalues) CHECK(std::abs(hom_tau_determinant(kCell, 0.7, z)) < 1e-9);
  const auto d = hom_dprime_spectrum(kCell, 0.7, 3);
  for (const double z : d.eigenvalues) CHECK(std::abs(hom_dprime_determinant(kCell, 0.7, z)) < 1e-9);
  CHECK(std::isfinite(hom_tau_determinant(kCell, 0.3, 0.0).real()));
  CHECK(std::isfinite(hom_tau_determinant(kCell, 0.3, -50.0).real()));
}

TEST_CASE("transfer matrices are unimodular") {
  for (const Complex z : {Complex(3.0, 0.0), Complex(-7.0, 0.0), Complex(40.0, 2.0)}) {
    const Matrix2c t = transfer_matrix(2.5, 0.3, z);
    CHECK(std::abs(t.determinant() - 1.0) < 1e-12 * std::max(1.0, std::abs(t(0, 0) * t(1, 1))));
  }
  CHECK(transfer_matrix(1.0, 0.0, 5.0).isIdentity());
  CHECK_THROWS_AS(transfer_matrix(-1.0, 1.0, 1.0), InputError);
  // |D| <= 2 inside the bands.
  const auto e = eps_spectrum(kCell, 1.1, 3);
  for (const double z : e.eigenvalues) CHECK(discriminant(kCell, z).real() == doctest::Approx(2.0 * std::cos(1.1)));
}

TEST_CASE("quasimomentum wrapping") {
  CHECK(wrap_quasimomentum(kPi) == doctest::Approx(-kPi));
  CHECK(wrap_quasimomentum(3.0 * kPi / 2) == doctest::Approx(-kPi / 2));
  CHECK(shifted_quasimomentum(0.0) == doctest::Approx(-kPi));
  CHECK(shifted_quasimomentum(kPi / 2) == doctest::Approx(-kPi / 2));
}

TEST_CASE("second-order convergence in eps") {
  const std::vector<double> eps{0.2, 0.1, 0.05};
  const std::vector<double> taus{0.0, kPi / 2, -kPi / 2};
  const auto study = convergence_study(kCell, eps, taus, 2);
  int fitted = 0;
  for (const auto& row : study.rows) {
    if (row.exact) continue;
    ++fitted;
    CHECK(row.fitted_order >= 1.8);
    CHECK(row.fitted_order <= 2.3);
  }
  CHECK(fitted > 0);
  CHECK_THROWS_AS(convergence_study(kCell, std::vector<double>{0.1, 0.05}, taus, 2), InputError);
}

TEST_CASE("dispersion table layout") {
  const std::vector<double> eps{0.1};
  const std::vector<double> taus{0.0, 1.0};
  const auto t = dispersion_table(kCell, eps, taus, 2, 2);
  CHECK(t.rows.size() == 2 * 3 * 2);
  CHECK(t.rows[0].model == HomogModel::eps);
  CHECK(t.rows[2].model == HomogModel::hom_tau);
  CHECK(t.rows[4].model == HomogModel::hom_dprime);
  CHECK(t.rows[4].tau == doctest::Approx(-kPi));
  // jobs do not change the result
  const auto serial = dispersion_table(kCell, eps, taus, 2, 1);
  for (std::size_t i = 0; i < t.rows.size(); ++i) CHECK(t.rows[i].eigenvalue == serial.rows[i].eigenvalue);
}

TEST_CASE("invalid cells") {
  CHECK_THROWS_AS(HighContrastCell::make(0.6, 0.5, 1.0, 0.1).validate(), InvalidCell);
  CHECK_THROWS_AS(HighContrastCell::make(0.25, 0.5, -1.0, 0.1).validate(), InvalidCell);
  CHECK_THROWS_AS(eps_spectrum(HighContrastCell::make(0.25, 0.5, 1.0, 0.0), 0.0, 2), InvalidCell);
}
