#include "qgs/highcontrast.hpp"

#include "qgs/errors.hpp"
#include "qgs/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>

namespace qgs {

namespace {

constexpr double kPi = std::numbers::pi;

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Roots in k = sqrt(z) >= 0 of f, returned as z = k^2.
BandEigenvalues scan_in_k(const std::function<double(double)>& f, double optical_length,
                          std::size_t count) {
  BandEigenvalues out;
  if (count == 0) return out;
  const double step = kPi / (8.0 * optical_length);
  const double limit = 4.0 * (static_cast<double>(count) + 4.0) * kPi / optical_length;
  const RootScanResult scan = scan_real_roots(f, 0.0, step, count, limit);
  for (const double k : scan.expanded()) out.eigenvalues.push_back(k * k);
  out.warnings = scan.warnings;
  if (out.eigenvalues.size() < count)
    out.warnings.push_back("found " + std::to_string(out.eigenvalues.size()) + " of " +
                           std::to_string(count) + " eigenvalues below z = " +
                           fmt(limit * limit));
  return out;
}

}  // namespace

HighContrastCell HighContrastCell::make(double l1, double l2, double a, double epsilon) {
  return {l1, l2, 1.0 - l1 - l2, a, epsilon};
}

void HighContrastCell::validate() const {
  for (const auto& [name, v] : {std::pair{"l1", l1}, {"l2", l2}, {"l3", l3}, {"a", a},
                                {"epsilon", epsilon}})
    if (!(v > 0.0) || !std::isfinite(v))
      throw InvalidCell(std::string(name) + " must be positive, got " + fmt(v));
  if (std::abs(l1 + l2 + l3 - 1.0) > 1e-12)
    throw InvalidCell("l1 + l2 + l3 must equal 1, got " + fmt(l1 + l2 + l3));
}

double wrap_quasimomentum(double tau) {
  double t = std::fmod(tau + kPi, 2.0 * kPi);
  if (t < 0.0) t += 2.0 * kPi;
  t -= kPi;
  return t >= kPi ? -kPi : t;
}

double shifted_quasimomentum(double tau) { return wrap_quasimomentum(tau + kPi); }

Matrix2c transfer_matrix(double coef, double length, Complex z) {
  if (!(coef > 0.0) || !(length >= 0.0))
    throw InputError("transfer_matrix needs coef > 0 and length >= 0");
  const Complex k = std::sqrt(z / coef);
  const Complex c = std::cos(k * length);
  const Complex s = sinc_scaled(k, length);  // sin(kL)/k, L at k = 0
  Matrix2c t;
  t << c, s / coef, -z * s, c;
  return t;
}

Complex discriminant(const HighContrastCell& cell, Complex z) {
  const double stiff = cell.a / (cell.epsilon * cell.epsilon);
  const Matrix2c m = transfer_matrix(stiff, cell.l3, z) * transfer_matrix(1.0, cell.l2, z) *
                     transfer_matrix(stiff, cell.l1, z);
  return m.trace();
}

Complex hom_tau_determinant(const HighContrastCell& cell, double tau, Complex z) {
  // u = e^{-i tau x}(A cos kx + B sin(kx)/k):
  //   A = e^{-i tau}(A cos kl2 + B sin(kl2)/k)
  //   -(B - e^{-i tau}(-A k sin kl2 + B cos kl2)) = z w A
  const Complex k = std::sqrt(z);
  const Complex e = std::exp(Complex(0.0, -tau));
  const Complex c = std::cos(k * cell.l2);
  const Complex s = sinc_scaled(k, cell.l2);
  Matrix2c m;
  m << 1.0 - e * c, -e * s,
       -e * z * s - z * cell.w(), -1.0 + e * c;
  return m.determinant();
}

Complex hom_dprime_determinant(const HighContrastCell& cell, double tau_prime, Complex z) {
  // u(0) + e^{-i w tau'} u(l2) = w du|_0,  du|_0 = -e^{-i w tau'} du|_{l2},
  // du = (d/dx + i tau') u.
  const Complex k = std::sqrt(z);
  const Complex e = std::exp(Complex(0.0, -tau_prime));
  const Complex c = std::cos(k * cell.l2);
  const Complex s = sinc_scaled(k, cell.l2);
  Matrix2c m;
  m << 1.0 + e * c, e * s - cell.w(),
       -e * z * s, 1.0 + e * c;
  return m.determinant();
}

BandEigenvalues eps_spectrum(const HighContrastCell& cell, double tau, std::size_t count) {
  cell.validate();
  const double target = 2.0 * std::cos(tau);
  const double optical = cell.l2 + cell.w() * cell.epsilon / std::sqrt(cell.a);
  return scan_in_k([&](double k) { return discriminant(cell, k * k).real() - target; }, optical,
                   count);
}

BandEigenvalues hom_tau_spectrum(const HighContrastCell& cell, double tau, std::size_t count) {
  cell.validate();
  // -e^{i tau} det = 2 cos tau - 2 cos kl2 + k w sin kl2, real for real k.
  const Complex phase = -std::exp(Complex(0.0, tau));
  return scan_in_k(
      [&](double k) { return (phase * hom_tau_determinant(cell, tau, k * k)).real(); }, cell.l2,
      count);
}

BandEigenvalues hom_dprime_spectrum(const HighContrastCell& cell, double tau_prime,
                                    std::size_t count) {
  cell.validate();
  // e^{i tau'} det = 2 cos tau' + 2 cos kl2 - k w sin kl2.
  const Complex phase = std::exp(Complex(0.0, tau_prime));
  return scan_in_k(
      [&](double k) {
        return (phase * hom_dprime_determinant(cell, tau_prime, k * k)).real();
      },
      cell.l2, count);
}

BandEigenvalues kronig_penney_bloch_spectrum(const HighContrastCell& cell, double tau,
                                             std::size_t count) {
  cell.validate();
  // Period 1 in the variable of -l2^{-2} d^2/dx^2; the jump U(n+0) - U(n-0) = b U'(n)
  // acts on (U, c U') as [[1, b/c], [0, 1]].
  const double c = 1.0 / (cell.l2 * cell.l2);
  Matrix2c jump;
  jump << 1.0, cell.b() / c, 0.0, 1.0;
  const double target = 2.0 * std::cos(tau);
  return scan_in_k(
      [&](double k) {
        return (jump * transfer_matrix(c, 1.0, k * k)).trace().real() - target;
      },
      cell.l2, count);
}

std::string to_string(HomogModel model) {
  switch (model) {
    case HomogModel::eps: return "eps";
    case HomogModel::hom_tau: return "hom_tau";
    case HomogModel::hom_dprime: return "hom_dprime";
  }
  return "unknown";
}

DispersionTable dispersion_table(const HighContrastCell& cell, std::span<const double> eps_list,
                                 std::span<const double> taus, int bands, unsigned jobs) {
  cell.validate();
  for (const double eps : eps_list) HighContrastCell::make(cell.l1, cell.l2, cell.a, eps).validate();
  DispersionTable table;
  table.cell = cell;
  table.bands = bands;
  const auto count = static_cast<std::size_t>(std::max(bands, 0));

  // Tasks per tau: one per eps, then hom_tau, then hom_dprime.
  const std::size_t per_tau = eps_list.size() + 2;
  std::vector<BandEigenvalues> results(per_tau * taus.size());
  parallel_for(results.size(), jobs, [&](std::size_t i) {
    const double tau = taus[i / per_tau];
    const std::size_t j = i % per_tau;
    if (j < eps_list.size())
      results[i] = eps_spectrum(HighContrastCell::make(cell.l1, cell.l2, cell.a, eps_list[j]),
                                tau, count);
    else if (j == eps_list.size())
      results[i] = hom_tau_spectrum(cell, tau, count);
    else
      results[i] = hom_dprime_spectrum(cell, shifted_quasimomentum(tau), count);
  });

  for (std::size_t i = 0; i < results.size(); ++i) {
    const double tau = taus[i / per_tau];
    const std::size_t j = i % per_tau;
    HomogModel model = HomogModel::eps;
    double eps = 0.0, row_tau = tau;
    if (j < eps_list.size()) {
      eps = eps_list[j];
    } else if (j == eps_list.size()) {
      model = HomogModel::hom_tau;
    } else {
      model = HomogModel::hom_dprime;
      row_tau = shifted_quasimomentum(tau);
    }
    const auto& values = results[i].eigenvalues;
    for (std::size_t b = 0; b < values.size(); ++b)
      table.rows.push_back({model, eps, row_tau, static_cast<int>(b + 1), values[b]});
    for (const auto& w : results[i].warnings)
      table.warnings.push_back(to_string(model) + " tau=" + fmt(row_tau) + ": " + w);
  }
  return table;
}

ConvergenceStudy convergence_study(const HighContrastCell& cell, std::span<const double> eps_list,
                                   std::span<const double> taus, int bands, unsigned jobs) {
  if (eps_list.size() < 3) throw InputError("convergence_study needs at least three eps values");
  for (const double eps : eps_list) HighContrastCell::make(cell.l1, cell.l2, cell.a, eps).validate();
  const auto count = static_cast<std::size_t>(std::max(bands, 0));

  const std::size_t per_tau = eps_list.size() + 1;
  std::vector<BandEigenvalues> results(per_tau * taus.size());
  parallel_for(results.size(), jobs, [&](std::size_t i) {
    const double tau = taus[i / per_tau];
    const std::size_t j = i % per_tau;
    results[i] = j < eps_list.size()
                     ? eps_spectrum(HighContrastCell::make(cell.l1, cell.l2, cell.a, eps_list[j]),
                                    tau, count)
                     : hom_tau_spectrum(HighContrastCell::make(cell.l1, cell.l2, cell.a, 1.0),
                                        tau, count);
  });

  ConvergenceStudy study;
  for (std::size_t t = 0; t < taus.size(); ++t) {
    const auto& hom = results[t * per_tau + eps_list.size()];
    for (std::size_t j = 0; j < per_tau; ++j)
      for (const auto& w : results[t * per_tau + j].warnings)
        study.warnings.push_back("tau=" + fmt(taus[t]) + ": " + w);
    for (std::size_t b = 0; b < count; ++b) {
      if (b >= hom.eigenvalues.size()) break;
      const double limit = hom.eigenvalues[b];
      std::vector<double> epsilons, errors;
      std::vector<ConvergenceRow> block;
      bool exact = true;
      for (std::size_t j = 0; j < eps_list.size(); ++j) {
        const auto& e = results[t * per_tau + j].eigenvalues;
        if (b >= e.size()) continue;
        const double err = std::abs(e[b] - limit);
        exact = exact && err <= 1e-12 * std::max(1.0, std::abs(limit));
        epsilons.push_back(eps_list[j]);
        errors.push_back(err);
        block.push_back({taus[t], static_cast<int>(b + 1), eps_list[j], e[b], limit, err,
                         std::numeric_limits<double>::quiet_NaN(), false});
      }
      double order = std::numeric_limits<double>::quiet_NaN();
      const bool positive = std::all_of(errors.begin(), errors.end(), [](double e) { return e > 0.0; });
      if (!exact && positive && errors.size() >= 2) order = log_log_slope(epsilons, errors);
      for (auto& row : block) {
        row.exact = exact;
        row.fitted_order = order;
        study.rows.push_back(row);
      }
    }
  }
  return study;
}

double max_band_gap(std::span<const double> first, std::span<const double> second) {
  if (first.size() != second.size()) return std::numeric_limits<double>::infinity();
  double gap = 0.0;
  for (std::size_t i = 0; i < first.size(); ++i) gap = std::max(gap, std::abs(first[i] - second[i]));
  return gap;
}

}  // namespace qgs
