#ifndef QGS_SELFCHECK_HPP_
#define QGS_SELFCHECK_HPP_

#include <cstdint>
#include <string>
#include <vector>

namespace qgs {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

struct SelfCheckOptions {
  std::uint64_t seed = 20240611;
  unsigned jobs = 1;
};

// Each check catches library exceptions and reports them as failures.

/// Conjugation symmetry, Herglotz property and M(s) - M(s)* = 2i sqrt(s) P_e on
/// 20 random graphs.
CheckResult check_weyl_structure(const SelfCheckOptions& options = {});
/// First 10 eigenvalues, secular method vs vertex matching, on 10 graphs
/// including the Neumann interval.
CheckResult check_spectrum_oracle(const SelfCheckOptions& options = {});
/// Unitarity and agreement of the projected and factorised forms on a 200
/// point grid; kappa = 0 gives the identity.
CheckResult check_scattering(const SelfCheckOptions& options = {});
/// Robin-to-Dirichlet map recovered from the scattering matrix.
CheckResult check_rtd_extraction(const SelfCheckOptions& options = {});
/// Edge-length scaling approaches the contracted graph at order >= 0.9.
CheckResult check_contraction(const SelfCheckOptions& options = {});
/// Couplings recovered through the path-sum pipeline to 1e-4.
CheckResult check_inverse_round_trip(const SelfCheckOptions& options = {});
/// O(eps^2) Bloch eigenvalue convergence and agreement of the two limit models.
CheckResult check_homogenisation(const SelfCheckOptions& options = {});
/// Lowest eigenvalues of the limit model at tau = 0 against tan x = -x.
CheckResult check_analytic_anchor(const SelfCheckOptions& options = {});

/// Graph-core invariants: serialisation round trip, contraction bookkeeping,
/// spanning-tree ordering.
CheckResult check_graph_core(const SelfCheckOptions& options = {});

/// Every check above, graph-core first.
std::vector<CheckResult> run_selfcheck(const SelfCheckOptions& options = {});

}  // namespace qgs

#endif  // QGS_SELFCHECK_HPP_
