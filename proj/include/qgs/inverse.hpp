#ifndef QGS_INVERSE_HPP_
#define QGS_INVERSE_HPP_

#include "qgs/graph.hpp"
#include "qgs/weyl.hpp"

#include <functional>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace qgs {

// ---------------------------------------------------------------------------
// Robin-to-Dirichlet map from scattering data

/// Recovers P_e (M^(i) - kappa)^{-1} P_e from Sigma_e at z:
///   X = I + Sigma_e Q^{-1},  RtD = (2 X^{-1} - I) / (i sqrt(z)),
/// where Q = P_e (M*)^{-1} M P_e is built from the known geometry of
/// `topology` (its couplings are not used). Throws SingularBracket when Q or X
/// cannot be inverted or leaves the double range.
CMatrix extract_rtd(const CMatrix& sigma_e, const MetricGraph& topology, const SpectralPoint& z);

struct RtDSamples {
  std::vector<Complex> grid;
  std::vector<CMatrix> values;
  std::vector<std::string> warnings;
};

using SigmaOracle = std::function<CMatrix(const SpectralPoint&)>;

/// Applies extract_rtd over a grid of energies; points where the oracle or the
/// bracket is singular are dropped with a warning.
RtDSamples extract_rtd(const SigmaOracle& sigma_e, const MetricGraph& topology,
                       std::span<const Complex> grid);

// ---------------------------------------------------------------------------
// f_1 and contraction

/// (1,1) entry of the Robin-to-Dirichlet map: the diagonal entry at the first
/// external vertex. Throws InvalidGraph when there is no lead.
Complex f1_entry(const MetricGraph& graph, const CouplingMatrix& kappa, const SpectralPoint& z);

/// Same entry as a cofactor ratio det(minor) / det(M^(i) - kappa).
Complex f1_determinant_ratio(const MetricGraph& graph, const CouplingMatrix& kappa,
                             const SpectralPoint& z);

struct ContractedGraph {
  MetricGraph graph;
  std::string merged_vertex;  ///< vertex holding the path's root
};

/// Contracts the path edges in order. Couplings of the graph are summed along
/// the way.
ContractedGraph contract_path(const MetricGraph& graph, const SpanningTreePath& path);

/// f_1 of the graph contracted along `path`, read at the merged vertex.
Complex f1_contracted(const MetricGraph& graph, const CouplingMatrix& kappa,
                      const SpanningTreePath& path, const SpectralPoint& z);

struct ContractionCheck {
  Complex contracted;
  std::vector<double> deltas;
  std::vector<double> errors;  ///< |f_1(path lengths * delta) - contracted|
  double slope = 0.0;          ///< log-log slope of errors against deltas
};

/// Evaluates f_1 with the path edges scaled by each delta and compares with the
/// contraction.
ContractionCheck validate_contraction(const MetricGraph& graph, const CouplingMatrix& kappa,
                                      const SpanningTreePath& path, const SpectralPoint& z,
                                      std::span<const double> deltas);

// ---------------------------------------------------------------------------
// Path sums and couplings

/// f_1^(l)(sqrt z) for a spanning-tree path.
using PathOracle = std::function<Complex(const SpanningTreePath&, const SpectralPoint&)>;

enum class ForwardRoute {
  scattering,  ///< Sigma_e of the contracted graph, then extract_rtd
  direct,      ///< Robin-to-Dirichlet entry of the contracted graph
};

/// Self-test oracle built from a graph with known couplings.
PathOracle make_forward_path_oracle(const MetricGraph& true_graph,
                                    ForwardRoute route = ForwardRoute::scattering);

struct PathSample {
  Complex z;
  Complex f1;
};

/// Oracle backed by tabulated samples keyed by target vertex. Exact energy
/// matches are returned directly; other energies are continued with AAA
/// (experimental).
PathOracle make_sample_path_oracle(std::map<std::string, std::vector<PathSample>> samples);

struct LadderOptions {
  double tau0 = 32.0;
  int levels = 6;  ///< tau_j = tau0 * 2^j, j = 0..levels
  int fit_degree = 2;
  double residual_factor = 1e-3;
  unsigned jobs = 1;
};

struct PathSumEstimate {
  SpanningTreePath path;
  Complex value;
  double residual = 0.0;
  int degree_sum = 0;  ///< sum of degrees over the path vertices
  std::vector<double> taus;
  std::vector<Complex> g_values;
  std::vector<std::string> notes;
};

/// The ladder points of a run with the given options.
std::vector<double> ladder(const LadderOptions& options);

/// Extrapolates -tau (sum deg - 2(N - 1)) - 1/f_1^(l)(i tau) to tau -> inf for
/// each path. Ladder points where the oracle fails are dropped with a note; if
/// fewer than four remain, extra points are placed geometrically below the
/// largest usable one. Throws ExtrapolationDiverged when the fit residual
/// exceeds residual_factor * (1 + |c0|).
std::vector<PathSumEstimate> recover_path_sums(const MetricGraph& topology,
                                               const PathOracle& oracle,
                                               std::span<const SpanningTreePath> paths,
                                               const LadderOptions& options = {});

/// Solves the unipotent triangular system a(target) = sum - sum of ancestors.
CouplingMatrix recover_couplings(std::span<const PathSumEstimate> path_sums);

struct InversionResult {
  CouplingMatrix couplings;
  std::vector<PathSumEstimate> path_sums;
  std::vector<std::string> warnings;
};

/// Full reconstruction on a validated topology, rooted at its first external vertex.
InversionResult invert(const MetricGraph& topology, const PathOracle& oracle,
                       const LadderOptions& options = {});

/// Root used by the reconstruction: the first external vertex.
std::string inversion_root(const MetricGraph& topology);

}  // namespace qgs

#endif  // QGS_INVERSE_HPP_
