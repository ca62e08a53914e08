#include "qgs/continuation.hpp"

#include <cmath>
#include <stdexcept>

namespace qgs {

BarycentricRational BarycentricRational::fit(std::span<const Complex> z,
                                             std::span<const Complex> f, double rel_tol,
                                             std::size_t max_terms) {
  if (z.size() != f.size() || z.empty())
    throw std::invalid_argument("BarycentricRational::fit: mismatched or empty samples");
  const std::size_t n = z.size();
  double scale = 0.0;
  for (const auto& v : f) scale = std::max(scale, std::abs(v));

  BarycentricRational r;
  std::vector<bool> in_support(n, false);
  std::vector<Complex> approx(n, Complex{});
  Complex mean{};
  for (const auto& v : f) mean += v;
  mean /= static_cast<double>(n);
  std::fill(approx.begin(), approx.end(), mean);

  for (std::size_t step = 0; step < std::min(max_terms, n); ++step) {
    std::size_t worst = 0;
    double worst_err = -1.0;
    for (std::size_t i = 0; i < n; ++i) {
      if (in_support[i]) continue;
      const double e = std::abs(f[i] - approx[i]);
      if (e > worst_err) {
        worst_err = e;
        worst = i;
      }
    }
    if (worst_err <= rel_tol * scale) break;
    in_support[worst] = true;
    r.support_.push_back(z[worst]);
    r.values_.push_back(f[worst]);

    std::vector<std::size_t> rest;
    for (std::size_t i = 0; i < n; ++i)
      if (!in_support[i]) rest.push_back(i);
    const auto m = static_cast<Eigen::Index>(r.support_.size());
    if (rest.empty()) {
      r.weights_.assign(r.support_.size(), Complex(1.0, 0.0));
      break;
    }
    CMatrix loewner(static_cast<Eigen::Index>(rest.size()), m);
    for (std::size_t a = 0; a < rest.size(); ++a)
      for (Eigen::Index j = 0; j < m; ++j)
        loewner(static_cast<Eigen::Index>(a), j) =
            (f[rest[a]] - r.values_[static_cast<std::size_t>(j)]) /
            (z[rest[a]] - r.support_[static_cast<std::size_t>(j)]);
    Eigen::JacobiSVD<CMatrix> svd(loewner, Eigen::ComputeFullV);
    const CVector w = svd.matrixV().col(m - 1);
    r.weights_.assign(w.data(), w.data() + w.size());
    for (std::size_t i = 0; i < n; ++i) approx[i] = in_support[i] ? f[i] : r(z[i]);
  }
  if (r.support_.empty()) {
    r.support_.push_back(z[0]);
    r.values_.push_back(f[0]);
    r.weights_.push_back(1.0);
  }
  r.max_error_ = 0.0;
  for (std::size_t i = 0; i < n; ++i) r.max_error_ = std::max(r.max_error_, std::abs(f[i] - r(z[i])));
  return r;
}

Complex BarycentricRational::operator()(Complex z) const {
  Complex num{}, den{};
  for (std::size_t j = 0; j < support_.size(); ++j) {
    const Complex d = z - support_[j];
    if (d == Complex{}) return values_[j];
    num += weights_[j] * values_[j] / d;
    den += weights_[j] / d;
  }
  return num / den;
}

}  // namespace qgs
