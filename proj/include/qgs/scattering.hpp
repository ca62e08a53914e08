#ifndef QGS_SCATTERING_HPP_
#define QGS_SCATTERING_HPP_

#include "qgs/graph.hpp"
#include "qgs/weyl.hpp"

namespace qgs {

enum class ScatteringForm { projected, full_factorised };

/// Sigma_e on the external-vertex subspace (sorted external order).
struct ScatteringMatrix {
  SpectralPoint at;
  CMatrix entries;
  ScatteringForm form = ScatteringForm::projected;
  /// max |projected - factorised| observed when the matrix was built.
  double factorisation_gap = 0.0;
};

/// The two brackets of the scattering matrix as N x N matrices:
/// left = (M - kappa)^{-1} (M* - kappa), right = (M*)^{-1} M, with
/// M = M^(i) + i sqrt(z) P_e and M* = M^(i) - i sqrt(z) P_e. On the real axis
/// M* is the adjoint of M; elsewhere it is its analytic continuation.
struct ScatteringFactors {
  CMatrix left;
  CMatrix right;
};
ScatteringFactors scattering_factors(const MetricGraph& graph, const CouplingMatrix& kappa,
                                     const SpectralPoint& z);

/// Sigma = (M - kappa)^{-1} (M* - kappa) (M*)^{-1} M at real s > 0.
CMatrix sigma_full(const MetricGraph& graph, const CouplingMatrix& kappa, double s);

/// P_e Sigma P_e computed both as a projected product and as the product of
/// the kappa-dependent and kappa-independent compressed factors; throws
/// FactorisationMismatch when they differ by more than tol (relative to the
/// size of the entries, floor 1).
ScatteringMatrix sigma_external(const MetricGraph& graph, const CouplingMatrix& kappa, double s,
                                double tol = 1e-10);
/// Continuation to complex energies.
ScatteringMatrix sigma_external(const MetricGraph& graph, const CouplingMatrix& kappa,
                                const SpectralPoint& z, double tol = 1e-10);

/// P_e (M*)^{-1} M P_e restricted to external vertices; depends on the graph
/// geometry only.
CMatrix kappa_independent_factor(const MetricGraph& graph, const SpectralPoint& z);

/// Stationary scattering by plane waves on the leads: lead j carries
/// e^{-i sqrt(s) x} + R e^{i sqrt(s) x}, the other leads T e^{i sqrt(s) x};
/// column j of the result holds the outgoing amplitudes.
CMatrix lead_matching_oracle(const MetricGraph& graph, const CouplingMatrix& kappa, double s);

/// ||S* S - I||_F.
double unitarity_defect(const CMatrix& s);

}  // namespace qgs

#endif  // QGS_SCATTERING_HPP_
