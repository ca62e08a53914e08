#include "qgs/numerics.hpp"

#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <limits>
#include <stdexcept>

namespace qgs {

namespace {

// Beyond this |Im w| the exponential forms are used; below it std::sin/cos are exact enough.
constexpr double kLargeImag = 20.0;

}  // namespace

Complex stable_cot(Complex w) {
  if (std::abs(w.imag()) < kLargeImag) return std::cos(w) / std::sin(w);
  // cot w = -i (1 + q) / (1 - q), q = e^{2iw}, |q| < 1 for Im w > 0.
  if (w.imag() > 0) {
    const Complex q = std::exp(2.0 * kI * w);
    return -kI * (1.0 + q) / (1.0 - q);
  }
  const Complex q = std::exp(-2.0 * kI * w);
  return kI * (1.0 + q) / (1.0 - q);
}

Complex stable_csc(Complex w) {
  if (std::abs(w.imag()) < kLargeImag) return 1.0 / std::sin(w);
  if (w.imag() > 0) {
    const Complex p = std::exp(kI * w);
    return -2.0 * kI * p / (1.0 - p * p);
  }
  const Complex p = std::exp(-kI * w);
  return 2.0 * kI * p / (1.0 - p * p);
}

Complex stable_tan(Complex w) {
  if (std::abs(w.imag()) < kLargeImag) return std::sin(w) / std::cos(w);
  if (w.imag() > 0) {
    const Complex q = std::exp(2.0 * kI * w);
    return kI * (1.0 - q) / (1.0 + q);
  }
  const Complex q = std::exp(-2.0 * kI * w);
  return -kI * (1.0 - q) / (1.0 + q);
}

Complex sinc_scaled(Complex k, double length) {
  const Complex w = k * length;
  if (std::abs(w) < 1e-4) {
    const Complex w2 = w * w;
    return length * (1.0 - w2 / 6.0 + w2 * w2 / 120.0);
  }
  return std::sin(w) / k;
}

double abs_sin(Complex w) {
  if (std::abs(w.imag()) > 700.0) return std::numeric_limits<double>::max();
  return std::abs(std::sin(w));
}

double condition_number(const CMatrix& a) {
  if (a.size() == 0) return 1.0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  const auto& s = svd.singularValues();
  const double smin = s(s.size() - 1);
  if (smin == 0.0 || !std::isfinite(smin)) return std::numeric_limits<double>::infinity();
  return s(0) / smin;
}

double equilibrated_condition_number(const CMatrix& a) {
  if (a.size() == 0) return 1.0;
  if (!a.allFinite()) return std::numeric_limits<double>::infinity();
  RVector scale(a.rows());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    const double m = std::max(a.row(i).cwiseAbs().maxCoeff(), a.col(i).cwiseAbs().maxCoeff());
    if (m == 0.0) return std::numeric_limits<double>::infinity();
    scale(i) = 1.0 / std::sqrt(m);
  }
  return condition_number(scale.asDiagonal() * a * scale.asDiagonal());
}

int numerical_kernel_dimension(const RMatrix& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<RMatrix> svd(a);
  const auto& s = svd.singularValues();
  int dim = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) < rel_tol * s(0)) ++dim;
  return dim;
}

int numerical_kernel_dimension(const CMatrix& a, double rel_tol) {
  if (a.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(a);
  const auto& s = svd.singularValues();
  int dim = 0;
  for (Eigen::Index i = 0; i < s.size(); ++i)
    if (s(i) < rel_tol * s(0)) ++dim;
  return dim;
}

double golden_section_minimise(const std::function<double(double)>& f, double lo, double hi,
                               double tol) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - ratio * (hi - lo);
  double d = lo + ratio * (hi - lo);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < 200 && (hi - lo) > tol; ++it) {
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - ratio * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + ratio * (hi - lo);
      fd = f(d);
    }
  }
  return fc <= fd ? c : d;
}

double refine_sign_change(const std::function<double(double)>& f, double lo, double hi,
                          double tol) {
  double flo = f(lo), fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0) throw std::invalid_argument("refine_sign_change: no sign change");
  std::uintmax_t max_iter = 200;
  auto stop = [tol](double a, double b) { return std::abs(b - a) <= tol; };
  auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, stop, max_iter);
  return 0.5 * (a + b);
}

std::vector<double> RootScanResult::expanded() const {
  std::vector<double> out;
  for (const auto& r : roots)
    for (int m = 0; m < r.multiplicity; ++m) out.push_back(r.x);
  return out;
}

RootScanResult scan_real_roots(const std::function<double(double)>& f, double x0, double step,
                               std::size_t max_roots, double x_limit, double touch_tol) {
  RootScanResult result;
  std::size_t found = 0;
  auto add = [&](double x, int multiplicity) {
    result.roots.push_back({x, multiplicity});
    found += static_cast<std::size_t>(multiplicity);
  };
  auto tol_at = [](double x) { return 1e-14 * std::max(1.0, std::abs(x)); };

  double xa = x0, fa = f(x0);
  double xb = x0 + step, fb = f(xb);
  if (std::abs(fa) <= touch_tol * std::abs(fb)) {
    add(x0, 1);
    fa = 0.0;
  }

  // Sliding window (xp, fp), (xa, fa), (xb, fb).
  double xp = x0 - step, fp = std::numeric_limits<double>::quiet_NaN();
  while (found < max_roots && xa <= x_limit) {
    if (fa == 0.0 && xa != x0) {
      add(xa, (std::isfinite(fp) && fp * fb < 0.0) ? 1 : 2);
    } else if (fa * fb < 0.0) {
      add(refine_sign_change(f, xa, xb, tol_at(xb)), 1);
    } else if (std::isfinite(fp) && fp != 0.0 && fa != 0.0 && fb != 0.0 && fp * fa > 0.0 &&
               fa * fb > 0.0 && (fa - fp) * (fb - fa) < 0.0) {
      // Interior extremum around xa without a sign change on either side.
      const double sign = fa > 0.0 ? 1.0 : -1.0;
      const double xs = golden_section_minimise([&](double x) { return sign * f(x); }, xp, xb,
                                                tol_at(xb) * 10.0);
      const double fs = f(xs);
      const double scale = std::max(std::abs(fp), std::abs(fb));
      if (std::abs(fs) <= touch_tol * scale) {
        add(xs, 2);
      } else if (fs * fa < 0.0) {
        add(refine_sign_change(f, xp, xs, tol_at(xs)), 1);
        add(refine_sign_change(f, xs, xb, tol_at(xb)), 1);
        result.warnings.push_back("ScanResolution: two roots within one scan step near x = " +
                                  std::to_string(xs));
      }
    }
    xp = xa;
    fp = fa;
    xa = xb;
    fa = fb;
    xb = xa + step;
    fb = f(xb);
  }

  for (std::size_t i = 1; i < result.roots.size(); ++i) {
    if (result.roots[i].x - result.roots[i - 1].x < step) {
      result.warnings.push_back("ScanResolution: roots " + std::to_string(result.roots[i - 1].x) +
                                " and " + std::to_string(result.roots[i].x) +
                                " fall within one scan step");
    }
  }

  // Trim to max_roots counted with multiplicity.
  std::size_t total = 0;
  std::vector<RealRoot> trimmed;
  for (const auto& r : result.roots) {
    if (total >= max_roots) break;
    const int take = static_cast<int>(std::min<std::size_t>(r.multiplicity, max_roots - total));
    trimmed.push_back({r.x, take});
    total += static_cast<std::size_t>(take);
  }
  result.roots = std::move(trimmed);
  return result;
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw std::invalid_argument("log_log_slope needs at least two matching points");
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]), ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

InversePowerFit fit_inverse_powers(std::span<const double> t, std::span<const Complex> values,
                                   int degree) {
  if (t.size() != values.size() || t.size() < static_cast<std::size_t>(degree + 1))
    throw std::invalid_argument("fit_inverse_powers: not enough samples");
  const auto rows = static_cast<Eigen::Index>(t.size());
  CMatrix design(rows, degree + 1);
  CVector rhs(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    double p = 1.0;
    for (int j = 0; j <= degree; ++j) {
      design(i, j) = p;
      p /= t[i];
    }
    rhs(i) = values[i];
  }
  const CVector c = design.colPivHouseholderQr().solve(rhs);
  InversePowerFit fit;
  fit.coefficients.assign(c.data(), c.data() + c.size());
  fit.max_residual = (design * c - rhs).cwiseAbs().maxCoeff();
  return fit;
}

}  // namespace qgs
