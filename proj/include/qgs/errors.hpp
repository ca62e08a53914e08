#ifndef QGS_ERRORS_HPP_
#define QGS_ERRORS_HPP_

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>

namespace qgs {

/// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Input / structural errors (CLI exit code 2).

class InputError : public Error {
 public:
  using Error::Error;
};

class ParseError : public InputError {
 public:
  ParseError(const std::string& message, std::size_t line, std::string field)
      : InputError(format(message, line, field)), line_(line), field_(std::move(field)) {}

  /// 1-based line of the offending token, 0 if unknown.
  std::size_t line() const { return line_; }
  /// JSON pointer of the offending field, empty if not field-specific.
  const std::string& field() const { return field_; }

 private:
  static std::string format(const std::string& message, std::size_t line,
                            const std::string& field) {
    std::string out = "parse error";
    if (line > 0) out += " at line " + std::to_string(line);
    if (!field.empty()) out += " in field '" + field + "'";
    return out + ": " + message;
  }

  std::size_t line_;
  std::string field_;
};

class InvalidGraph : public InputError {
 public:
  using InputError::InputError;
};

class UnknownEdge : public InputError {
 public:
  explicit UnknownEdge(const std::string& id) : InputError("unknown edge '" + id + "'") {}
};

class UnknownVertex : public InputError {
 public:
  explicit UnknownVertex(const std::string& id)
      : InputError("unknown vertex '" + id + "'") {}
};

class LoopContraction : public InputError {
 public:
  explicit LoopContraction(const std::string& id)
      : InputError("edge '" + id + "' is a loop and cannot be contracted") {}
};

class Disconnected : public InputError {
 public:
  using InputError::InputError;
};

class InconsistentPaths : public InputError {
 public:
  using InputError::InputError;
};

class NonSelfAdjoint : public InputError {
 public:
  using InputError::InputError;
};

class InvalidCell : public InputError {
 public:
  using InputError::InputError;
};

// ---------------------------------------------------------------------------
// Numerical failures (CLI exit code 3).

class NumericalError : public Error {
 public:
  using Error::Error;
};

/// An edge sits within tolerance of a Dirichlet pole of the Weyl matrix.
class PoleProximity : public NumericalError {
 public:
  PoleProximity(std::complex<double> z, std::string edge)
      : NumericalError("z = " + to_string(z) + " is at a pole of edge '" + edge + "'"),
        z_(z),
        edge_(std::move(edge)) {}

  std::complex<double> z() const { return z_; }
  const std::string& edge() const { return edge_; }

  static std::string to_string(std::complex<double> z) {
    return "(" + std::to_string(z.real()) + "," + std::to_string(z.imag()) + ")";
  }

 private:
  std::complex<double> z_;
  std::string edge_;
};

class SingularMatrix : public NumericalError {
 public:
  SingularMatrix(std::complex<double> z, const std::string& what)
      : NumericalError(what + " is singular at z = " + PoleProximity::to_string(z)), z_(z) {}

  std::complex<double> z() const { return z_; }

 private:
  std::complex<double> z_;
};

class FactorisationMismatch : public NumericalError {
 public:
  FactorisationMismatch(double s, double gap)
      : NumericalError("projected and factorised scattering matrices differ by " +
                       std::to_string(gap) + " at s = " + std::to_string(s)),
        gap_(gap) {}

  double gap() const { return gap_; }

 private:
  double gap_;
};

class SingularBracket : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class ExtrapolationDiverged : public NumericalError {
 public:
  ExtrapolationDiverged(const std::string& target, double residual, double limit)
      : NumericalError("tau-extrapolation for path to '" + target + "' has residual " +
                       std::to_string(residual) + " > " + std::to_string(limit)),
        residual_(residual) {}

  double residual() const { return residual_; }

 private:
  double residual_;
};

}  // namespace qgs

#endif  // QGS_ERRORS_HPP_
