#ifndef QGS_NUMERICS_HPP_
#define QGS_NUMERICS_HPP_

#include "qgs/types.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <thread>
#include <vector>

namespace qgs {

// ---------------------------------------------------------------------------
// Trigonometry that stays finite for large |Im w|.

Complex stable_cot(Complex w);
Complex stable_csc(Complex w);
Complex stable_tan(Complex w);
/// sin(k L) / k, entire in k^2; equals L at k = 0.
Complex sinc_scaled(Complex k, double length);
/// |sin(w)|, saturating instead of overflowing.
double abs_sin(Complex w);

// ---------------------------------------------------------------------------
// Linear algebra helpers.

/// 2-norm condition number via SVD; +inf for an exactly singular matrix.
double condition_number(const CMatrix& a);
/// Condition number after symmetric scaling by 1/sqrt(row max |a_ij|); graded
/// but well-posed matrices stay well conditioned.
double equilibrated_condition_number(const CMatrix& a);
/// Number of singular values below rel_tol * largest singular value.
int numerical_kernel_dimension(const RMatrix& a, double rel_tol);
int numerical_kernel_dimension(const CMatrix& a, double rel_tol);

// ---------------------------------------------------------------------------
// One-dimensional root finding and minimisation.

/// Minimises f on [lo, hi] by golden-section search until the bracket is
/// narrower than tol. f is assumed unimodal on the bracket.
double golden_section_minimise(const std::function<double(double)>& f, double lo, double hi,
                               double tol);

/// Refines a sign change of f on [lo, hi] (TOMS 748) to an interval of width tol.
double refine_sign_change(const std::function<double(double)>& f, double lo, double hi,
                          double tol);

struct RealRoot {
  double x;
  int multiplicity;
};

struct RootScanResult {
  std::vector<RealRoot> roots;
  std::vector<std::string> warnings;

  /// Roots repeated according to multiplicity.
  std::vector<double> expanded() const;
};

/// Scans a real function on the grid x0 + i*step (i = 0, 1, ...) and returns
/// the first max_roots roots counted with multiplicity, stopping at x_limit.
///
/// Sign changes give simple roots. A local extremum between grid points is
/// located by golden section: when |f| there is below touch_tol times the
/// neighbouring values it is a double root; when it has the opposite sign to
/// its neighbours the cell holds two roots and a ScanResolution warning is
/// emitted. A root at x0 counts when |f(x0)| <= touch_tol * |f(x0 + step)|.
RootScanResult scan_real_roots(const std::function<double(double)>& f, double x0, double step,
                               std::size_t max_roots, double x_limit, double touch_tol = 1e-9);

// ---------------------------------------------------------------------------
// Fitting.

/// Least-squares slope of log(y) against log(x).
double log_log_slope(std::span<const double> x, std::span<const double> y);

struct InversePowerFit {
  std::vector<Complex> coefficients;  ///< c0, c1, ... of c0 + c1/t + c2/t^2 + ...
  double max_residual = 0.0;

  Complex limit() const { return coefficients.front(); }
};

/// Least-squares fit of values(t) by a polynomial of the given degree in 1/t.
InversePowerFit fit_inverse_powers(std::span<const double> t, std::span<const Complex> values,
                                   int degree);

// ---------------------------------------------------------------------------

/// Runs fn(i) for i in [0, count) on up to `jobs` threads. fn must not throw;
/// callers store per-index results so the output order is independent of
/// scheduling.
template <typename Fn>
void parallel_for(std::size_t count, unsigned jobs, Fn&& fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  jobs = std::min<unsigned>(jobs, static_cast<unsigned>(count));
  std::vector<std::jthread> workers;
  workers.reserve(jobs);
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&fn, count, jobs, w] {
      for (std::size_t i = w; i < count; i += jobs) fn(i);
    });
  }
}

}  // namespace qgs

#endif  // QGS_NUMERICS_HPP_
