#ifndef QGS_SPECTRUM_HPP_
#define QGS_SPECTRUM_HPP_

#include "qgs/graph.hpp"
#include "qgs/weyl.hpp"

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace qgs {

enum class SpectrumMode { weyl, matching };

std::string_view to_string(SpectrumMode mode);
SpectrumMode parse_spectrum_mode(std::string_view text);

struct Eigenvalue {
  double value;
  int multiplicity;
};

struct SpectrumOptions {
  /// Stop after this many eigenvalues counted with multiplicity (0 = no limit).
  std::size_t max_count = 0;
  double merge_tol = 1e-8;
  /// Relative singular-value threshold for multiplicities.
  double kernel_tol = 1e-8;
};

struct SpectrumResult {
  std::vector<Eigenvalue> eigenvalues;
  std::vector<std::string> warnings;

  /// Eigenvalues repeated according to multiplicity.
  std::vector<double> expanded() const;
};

/// Eigenvalues of the compact-graph operator with couplings kappa in
/// (-inf, z_max]. Leads are ignored. Throws NonSelfAdjoint for complex kappa.
///
/// weyl: eigenvalue counting function N(z) = N_D(z) + n_+(M^(i)(z) - kappa)
/// brackets the eigenvalues, which are then located on the pole-free bordered
/// matrix. matching: minima of the relative smallest singular value of the
/// per-edge coefficient system.
SpectrumResult compact_spectrum(const MetricGraph& graph, const CouplingMatrix& kappa,
                                double z_max, SpectrumMode mode,
                                const SpectrumOptions& options = {});

/// The lowest `count` eigenvalues counted with multiplicity.
SpectrumResult first_eigenvalues(const MetricGraph& graph, const CouplingMatrix& kappa,
                                 std::size_t count, SpectrumMode mode,
                                 const SpectrumOptions& options = {});

/// Number of eigenvalues strictly below z = t|t| (weyl-mode counting function).
/// Evaluation points closer than 1e-9 to an edge pole are nudged upwards;
/// `used_t` receives the point actually evaluated.
int eigenvalue_count(const MetricGraph& graph, const CouplingMatrix& kappa, double t,
                     double* used_t = nullptr);

/// Row-normalised 2n x 2n vertex-matching system in the edge coefficients
/// (A_p, B_p) of f_p(x) = A_p cos(kx) + B_p sin(kx)/k.
CMatrix matching_matrix(const MetricGraph& graph, const CouplingMatrix& kappa,
                        const SpectralPoint& z);

/// Upper bound K on sqrt(-lambda) over negative eigenvalues lambda.
double negative_eigenvalue_bound(const MetricGraph& graph, const CouplingMatrix& kappa);

}  // namespace qgs

#endif  // QGS_SPECTRUM_HPP_
