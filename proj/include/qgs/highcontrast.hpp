#ifndef QGS_HIGHCONTRAST_HPP_
#define QGS_HIGHCONTRAST_HPP_

#include "qgs/types.hpp"

#include <Eigen/Dense>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace qgs {

using Matrix2c = Eigen::Matrix2cd;

/// Unit cell of the periodic high-contrast medium: stiff coefficient a/eps^2 on
/// [0, l1) and [l1 + l2, 1), soft coefficient 1 on [l1, l1 + l2).
struct HighContrastCell {
  double l1 = 0.25;
  double l2 = 0.5;
  double l3 = 0.25;
  double a = 1.0;
  double epsilon = 0.1;

  /// Builds a cell with l3 = 1 - l1 - l2.
  static HighContrastCell make(double l1, double l2, double a, double epsilon);

  double w() const { return l1 + l3; }
  /// Jump strength (l1 + l3) / l2 of the limit model.
  double b() const { return w() / l2; }

  /// Throws InvalidCell.
  void validate() const;
};

/// Maps tau to [-pi, pi).
double wrap_quasimomentum(double tau);
/// tau + pi mapped to [-pi, pi).
double shifted_quasimomentum(double tau);

/// Propagates (u, c u') across a layer of constant coefficient c:
///   [[cos kL, sin(kL)/(k c)], [-k c sin kL, cos kL]],  k = sqrt(z/c).
Matrix2c transfer_matrix(double coef, double length, Complex z);

/// Trace of the cell monodromy T3 T2 T1.
Complex discriminant(const HighContrastCell& cell, Complex z);

/// Determinant of the 2x2 system for the limit model at quasimomentum tau,
/// in the basis e^{-i tau x}(cos kx, sin(kx)/k); entire in z.
Complex hom_tau_determinant(const HighContrastCell& cell, double tau, Complex z);

/// Determinant of the 2x2 system given by the domain conditions of the
/// delta-prime fibre operator at tau_prime, same basis.
Complex hom_dprime_determinant(const HighContrastCell& cell, double tau_prime, Complex z);

struct BandEigenvalues {
  std::vector<double> eigenvalues;  ///< ascending, with multiplicity
  std::vector<std::string> warnings;
};

/// First `count` solutions of D(z) = 2 cos tau.
BandEigenvalues eps_spectrum(const HighContrastCell& cell, double tau, std::size_t count);

/// First `count` eigenvalues of the limit operator with internal structure.
BandEigenvalues hom_tau_spectrum(const HighContrastCell& cell, double tau, std::size_t count);

/// First `count` eigenvalues of the delta-prime fibre operator at tau_prime.
BandEigenvalues hom_dprime_spectrum(const HighContrastCell& cell, double tau_prime,
                                    std::size_t count);

/// First `count` solutions of cos q - (b q / 2) sin q = cos tau, q = l2 sqrt(z),
/// from the transfer matrix of the Kronig-Penney delta-prime chain.
BandEigenvalues kronig_penney_bloch_spectrum(const HighContrastCell& cell, double tau,
                                             std::size_t count);

// ---------------------------------------------------------------------------
// Tables

enum class HomogModel { eps, hom_tau, hom_dprime };

std::string to_string(HomogModel model);

struct DispersionRow {
  HomogModel model;
  double epsilon;  ///< 0 for the limit models
  double tau;      ///< quasimomentum the row belongs to (tau' for hom_dprime)
  int band;        ///< 1-based
  double eigenvalue;
};

struct DispersionTable {
  HighContrastCell cell;
  int bands = 0;
  std::vector<DispersionRow> rows;
  std::vector<std::string> warnings;
};

/// Eigenvalues of every model on the tau grid. hom_dprime rows are computed at
/// tau' = tau + pi. Grid points are independent and run on `jobs` threads.
DispersionTable dispersion_table(const HighContrastCell& cell, std::span<const double> eps_list,
                                 std::span<const double> taus, int bands, unsigned jobs = 1);

struct ConvergenceRow {
  double tau;
  int band;
  double epsilon;
  double eigenvalue_eps;
  double eigenvalue_hom;
  double error;
  double fitted_order;  ///< NaN when the band is exact
  bool exact;           ///< limit eigenvalue reproduced to round-off for every eps
};

struct ConvergenceStudy {
  std::vector<ConvergenceRow> rows;
  std::vector<std::string> warnings;
};

/// err(eps) = |lambda_eps - lambda_hom| per (tau, band) with the log-log fitted
/// order. `cell.epsilon` is ignored. eps_list needs at least three entries.
ConvergenceStudy convergence_study(const HighContrastCell& cell, std::span<const double> eps_list,
                                   std::span<const double> taus, int bands, unsigned jobs = 1);

/// Largest gap between two ascending eigenvalue lists of equal length compared
/// entrywise; +inf when the lengths differ.
double max_band_gap(std::span<const double> first, std::span<const double> second);

}  // namespace qgs

#endif  // QGS_HIGHCONTRAST_HPP_
