#ifndef QGS_TYPES_HPP_
#define QGS_TYPES_HPP_

#include <Eigen/Dense>

#include <complex>

namespace qgs {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr Complex kI{0.0, 1.0};

}  // namespace qgs

#endif  // QGS_TYPES_HPP_
