#ifndef QGS_WEYL_HPP_
#define QGS_WEYL_HPP_

#include "qgs/graph.hpp"
#include "qgs/types.hpp"

namespace qgs {

/// Complex energy with the Im sqrt(z) >= 0 branch attached.
struct SpectralPoint {
  Complex z;
  Complex sqrt_z;

  /// Point with the given square root; k must satisfy Im k >= 0.
  static SpectralPoint from_sqrt(Complex k) { return {k * k, k}; }
  /// Real coordinate t with z = t|t|: k = t for t >= 0, k = i|t| below zero.
  static SpectralPoint from_signed_root(double t);
};

/// Branch of sqrt with Im >= 0; on (0, inf) the boundary value from above.
SpectralPoint sqrt_upper(Complex z);

enum class WeylKind { compact, full };

struct WeylMatrix {
  SpectralPoint at;
  CMatrix entries;
  WeylKind kind = WeylKind::compact;
};

/// M^(i)(z) of the compact part; leads are ignored.
/// Throws PoleProximity when |sin(sqrt(z) l)| < 1e-12 on a non-loop edge or
/// |cos(sqrt(z) l / 2)| < 1e-12 on a loop.
WeylMatrix weyl_compact(const MetricGraph& graph, const SpectralPoint& z);

/// M(z) = M^(i)(z) + i sqrt(z) P_e.
WeylMatrix weyl_full(const MetricGraph& graph, const SpectralPoint& z);

/// M^(i)(z) + lead_sign * i sqrt(z) P_e. For large Im sqrt(z) every edge end
/// contributes i sqrt(z) times an integer plus an exponentially small tail; the
/// integer parts are summed first, so M^(i) - i sqrt(z) P_e keeps full relative
/// accuracy at a degree-one external vertex.
CMatrix weyl_with_leads(const MetricGraph& graph, const SpectralPoint& z, double lead_sign);

/// Diagonal 0/1 projection onto external vertices.
CMatrix external_projection(const MetricGraph& graph);

/// Distance to the nearest Weyl pole, measured as the smallest |sin(kl)|
/// (non-loop edges) or |cos(kl/2)| (loops). Returns the offending edge index.
struct PoleDistance {
  double value;
  std::size_t edge;
};
PoleDistance pole_distance(const MetricGraph& graph, const SpectralPoint& z);

/// Pole-free (N+n)x(N+n) matrix whose top-left Schur complement is
/// M^(i)(z) - kappa. Per edge the half-angle branch is picked from the sign of
/// Re cos(kl) unless `branches` is given (1 = even, 0 = odd).
/// det B = d(z) * prod(-sigma_p), where d is secular_determinant.
struct BorderedMatrix {
  CMatrix matrix;
  std::vector<int> branches;
  /// prod over edges of -sigma_p (+1 or -1).
  double sign = 1.0;
};
BorderedMatrix bordered_matrix(const MetricGraph& graph, const CouplingMatrix& kappa,
                               const SpectralPoint& z,
                               const std::vector<int>* branches = nullptr);

/// d(z) = det(M^(i)(z) - kappa) * prod_p sin(sqrt(z) l_p)/sqrt(z); entire in z.
Complex secular_determinant(const MetricGraph& graph, const CouplingMatrix& kappa,
                            const SpectralPoint& z);

/// (M^(i)(z) - kappa)^{-1} as an N x N matrix. Near an edge pole the inverse is
/// read off the bordered matrix. Throws SingularMatrix when the condition
/// number of the row/column equilibrated matrix exceeds cond_limit.
CMatrix compact_resolvent(const MetricGraph& graph, const CouplingMatrix& kappa,
                          const SpectralPoint& z, double cond_limit = 1e12);

/// (M^(i)(z) + lead_sign * i sqrt(z) P_e - kappa)^{-1}; lead_sign = 0 is
/// compact_resolvent. Singularity is judged on the equilibrated matrix.
CMatrix lead_shifted_resolvent(const MetricGraph& graph, const CouplingMatrix& kappa,
                               const SpectralPoint& z, double lead_sign,
                               double cond_limit = 1e12);

/// P_e (M^(i)(z) - kappa)^{-1} P_e restricted to external rows and columns.
CMatrix robin_to_dirichlet(const MetricGraph& graph, const CouplingMatrix& kappa,
                           const SpectralPoint& z, double cond_limit = 1e12);

/// Throws InvalidGraph if kappa does not match the vertex list of graph.
void check_coupling_shape(const MetricGraph& graph, const CouplingMatrix& kappa);

}  // namespace qgs

#endif  // QGS_WEYL_HPP_
