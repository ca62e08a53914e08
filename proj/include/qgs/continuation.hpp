#ifndef QGS_CONTINUATION_HPP_
#define QGS_CONTINUATION_HPP_

#include "qgs/types.hpp"

#include <span>
#include <vector>

namespace qgs {

/// Barycentric rational interpolant built by the AAA algorithm
/// (Nakatsukasa, Sete, Trefethen 2018).
class BarycentricRational {
 public:
  static BarycentricRational fit(std::span<const Complex> z, std::span<const Complex> f,
                                 double rel_tol = 1e-13, std::size_t max_terms = 100);

  Complex operator()(Complex z) const;

  std::size_t size() const { return support_.size(); }
  double max_fit_error() const { return max_error_; }

 private:
  std::vector<Complex> support_;
  std::vector<Complex> values_;
  std::vector<Complex> weights_;
  double max_error_ = 0.0;
};

}  // namespace qgs

#endif  // QGS_CONTINUATION_HPP_
