#include "qgs/inverse.hpp"

#include "qgs/continuation.hpp"
#include "qgs/errors.hpp"
#include "qgs/numerics.hpp"
#include "qgs/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <optional>

namespace qgs {

namespace {

constexpr double kRangeLimit = 1e250;

std::size_t external_position(const MetricGraph& graph, const std::string& vertex) {
  const std::size_t idx = graph.vertex_index(vertex);
  const auto ext = graph.external_indices();
  const auto it = std::find(ext.begin(), ext.end(), idx);
  if (it == ext.end()) throw InvalidGraph("vertex '" + vertex + "' carries no lead");
  return static_cast<std::size_t>(it - ext.begin());
}

Complex rtd_entry(const MetricGraph& graph, const CouplingMatrix& kappa, const SpectralPoint& z,
                  const std::string& vertex) {
  const auto pos = static_cast<Eigen::Index>(external_position(graph, vertex));
  return robin_to_dirichlet(graph, kappa, z)(pos, pos);
}

bool in_range(const CMatrix& m) {
  return m.allFinite() && (m.size() == 0 || m.cwiseAbs().maxCoeff() <= kRangeLimit);
}

std::string format_z(Complex z) { return PoleProximity::to_string(z); }

}  // namespace

CMatrix extract_rtd(const CMatrix& sigma_e, const MetricGraph& topology, const SpectralPoint& z) {
  const Complex ik = kI * z.sqrt_z;
  if (ik == Complex{}) throw SingularBracket("extract_rtd: i sqrt(z) vanishes at z = 0");
  CMatrix q;
  try {
    q = kappa_independent_factor(topology, z);
  } catch (const SingularMatrix&) {
    throw SingularBracket("kappa-independent factor is singular at z = " + format_z(z.z));
  }
  if (q.rows() != sigma_e.rows() || q.cols() != sigma_e.cols())
    throw InvalidGraph("scattering matrix size does not match the external vertices");
  if (!in_range(q) || !in_range(sigma_e))
    throw SingularBracket("scattering data leave the double range at z = " + format_z(z.z));
  if (equilibrated_condition_number(q) > 1e12)
    throw SingularBracket("kappa-independent factor is singular at z = " + format_z(z.z));
  const auto n = q.rows();
  const CMatrix x = CMatrix::Identity(n, n) + sigma_e * q.partialPivLu().inverse();
  if (!x.allFinite() || condition_number(x) > 1e12)
    throw SingularBracket("P_e + Sigma_e Q^{-1} is singular at z = " + format_z(z.z));
  return (2.0 * x.partialPivLu().inverse() - CMatrix::Identity(n, n)) / ik;
}

RtDSamples extract_rtd(const SigmaOracle& sigma_e, const MetricGraph& topology,
                       std::span<const Complex> grid) {
  RtDSamples out;
  for (const Complex z : grid) {
    const SpectralPoint p = sqrt_upper(z);
    try {
      CMatrix rtd = extract_rtd(sigma_e(p), topology, p);
      out.grid.push_back(z);
      out.values.push_back(std::move(rtd));
    } catch (const NumericalError& e) {
      out.warnings.push_back(std::string("dropped z = ") + format_z(z) + ": " + e.what());
    }
  }
  return out;
}

Complex f1_entry(const MetricGraph& graph, const CouplingMatrix& kappa, const SpectralPoint& z) {
  const auto ext = graph.external_indices();
  if (ext.empty()) throw InvalidGraph("f1 needs at least one external vertex");
  return robin_to_dirichlet(graph, kappa, z)(0, 0);
}

Complex f1_determinant_ratio(const MetricGraph& graph, const CouplingMatrix& kappa,
                             const SpectralPoint& z) {
  const auto ext = graph.external_indices();
  if (ext.empty()) throw InvalidGraph("f1 needs at least one external vertex");
  const CMatrix a = weyl_compact(graph, z).entries - kappa.as_matrix();
  const auto n = a.rows();
  const auto r = static_cast<Eigen::Index>(ext.front());
  CMatrix minor(n - 1, n - 1);
  for (Eigen::Index i = 0, mi = 0; i < n; ++i) {
    if (i == r) continue;
    for (Eigen::Index j = 0, mj = 0; j < n; ++j) {
      if (j == r) continue;
      minor(mi, mj++) = a(i, j);
    }
    ++mi;
  }
  const Complex num = n == 1 ? Complex(1.0, 0.0) : minor.partialPivLu().determinant();
  const Complex den = a.partialPivLu().determinant();
  if (den == Complex{}) throw SingularMatrix(z.z, "M^(i) - kappa");
  return num / den;
}

ContractedGraph contract_path(const MetricGraph& graph, const SpanningTreePath& path) {
  ContractedGraph out{graph, path.root};
  for (const auto& id : path.edge_ids) {
    const Edge e = out.graph.edge(id);
    if (e.from != out.merged_vertex && e.to != out.merged_vertex)
      throw InconsistentPaths("path edge '" + id + "' does not touch the contracted root '" +
                              out.merged_vertex + "'");
    out.merged_vertex = merged_vertex_id(e.from, e.to);
    out.graph = contract(out.graph, id);
  }
  return out;
}

Complex f1_contracted(const MetricGraph& graph, const CouplingMatrix& kappa,
                      const SpanningTreePath& path, const SpectralPoint& z) {
  check_coupling_shape(graph, kappa);
  const ContractedGraph c = contract_path(graph.with_couplings(kappa.diagonal), path);
  return rtd_entry(c.graph, CouplingMatrix::from_graph(c.graph), z, c.merged_vertex);
}

ContractionCheck validate_contraction(const MetricGraph& graph, const CouplingMatrix& kappa,
                                      const SpanningTreePath& path, const SpectralPoint& z,
                                      std::span<const double> deltas) {
  ContractionCheck out;
  out.contracted = f1_contracted(graph, kappa, path, z);
  for (const double d : deltas) {
    const MetricGraph scaled = graph.with_scaled_edges(path.edge_ids, d);
    out.deltas.push_back(d);
    out.errors.push_back(std::abs(rtd_entry(scaled, kappa, z, path.root) - out.contracted));
  }
  if (out.deltas.size() >= 2) out.slope = log_log_slope(out.deltas, out.errors);
  return out;
}

PathOracle make_forward_path_oracle(const MetricGraph& true_graph, ForwardRoute route) {
  return [graph = true_graph, route](const SpanningTreePath& path, const SpectralPoint& z) {
    const ContractedGraph c = contract_path(graph, path);
    const CouplingMatrix kappa = CouplingMatrix::from_graph(c.graph);
    if (route == ForwardRoute::direct) return rtd_entry(c.graph, kappa, z, c.merged_vertex);
    const ScatteringMatrix sigma = sigma_external(c.graph, kappa, z);
    const CMatrix rtd = extract_rtd(sigma.entries, c.graph, z);
    const auto pos = static_cast<Eigen::Index>(external_position(c.graph, c.merged_vertex));
    return rtd(pos, pos);
  };
}

PathOracle make_sample_path_oracle(std::map<std::string, std::vector<PathSample>> samples) {
  struct Table {
    std::vector<PathSample> points;
    BarycentricRational fit;
  };
  auto tables = std::make_shared<std::map<std::string, Table>>();
  for (auto& [target, points] : samples) {
    std::vector<Complex> zs, fs;
    for (const auto& p : points) {
      zs.push_back(p.z);
      fs.push_back(p.f1);
    }
    if (zs.empty()) continue;
    (*tables)[target] = {std::move(points), BarycentricRational::fit(zs, fs)};
  }
  return [tables](const SpanningTreePath& path, const SpectralPoint& z) {
    const auto it = tables->find(path.target);
    if (it == tables->end()) throw InputError("no samples for target '" + path.target + "'");
    for (const auto& p : it->second.points)
      if (std::abs(p.z - z.z) <= 1e-9 * std::max(1.0, std::abs(z.z))) return p.f1;
    return it->second.fit(z.z);
  };
}

std::vector<double> ladder(const LadderOptions& options) {
  std::vector<double> out;
  for (int j = 0; j <= options.levels; ++j) out.push_back(options.tau0 * std::ldexp(1.0, j));
  return out;
}

namespace {

PathSumEstimate estimate_path(const MetricGraph& topology, const PathOracle& oracle,
                              const SpanningTreePath& path, const LadderOptions& options) {
  PathSumEstimate est;
  est.path = path;
  for (const auto& v : path.vertices_on_path) est.degree_sum += topology.degree(topology.vertex_index(v));
  const double correction =
      est.degree_sum - 2.0 * (static_cast<double>(path.vertex_count()) - 1.0);

  std::vector<std::pair<double, Complex>> usable;
  auto evaluate = [&](double tau) {
    const SpectralPoint z = SpectralPoint::from_sqrt(Complex(0.0, tau));
    Complex f;
    try {
      f = oracle(path, z);
    } catch (const NumericalError& e) {
      est.notes.push_back("tau = " + std::to_string(tau) + " dropped: " + e.what());
      return;
    }
    if (!std::isfinite(f.real()) || !std::isfinite(f.imag()) || f == Complex{}) {
      est.notes.push_back("tau = " + std::to_string(tau) + " dropped: f1 not finite");
      return;
    }
    usable.push_back({tau, -tau * correction - 1.0 / f});
  };

  for (const double tau : ladder(options)) evaluate(tau);
  if (!usable.empty() && usable.size() < 4) {
    double hi = 0.0;
    for (const auto& [t, g] : usable) hi = std::max(hi, t);
    const double lo = options.tau0;
    const double ratio = hi > lo ? hi / lo : 2.0;
    const double top = hi > lo ? hi : 2.0 * lo;
    est.notes.push_back("ladder densified below tau = " + std::to_string(top));
    for (int i = 1; i < 6; ++i) {
      const double tau = lo * std::pow(ratio, i / 6.0);
      if (tau < top) evaluate(tau);
    }
  }
  std::sort(usable.begin(), usable.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });

  const double inf = std::numeric_limits<double>::infinity();
  if (usable.size() < static_cast<std::size_t>(options.fit_degree + 1))
    throw ExtrapolationDiverged(path.target, inf, options.residual_factor);
  for (const auto& [t, g] : usable) {
    est.taus.push_back(t);
    est.g_values.push_back(g);
  }
  const InversePowerFit fit = fit_inverse_powers(est.taus, est.g_values, options.fit_degree);
  est.value = fit.limit();
  est.residual = fit.max_residual;
  const double limit = options.residual_factor * (1.0 + std::abs(est.value));
  if (!(est.residual <= limit)) throw ExtrapolationDiverged(path.target, est.residual, limit);
  return est;
}

}  // namespace

std::vector<PathSumEstimate> recover_path_sums(const MetricGraph& topology,
                                               const PathOracle& oracle,
                                               std::span<const SpanningTreePath> paths,
                                               const LadderOptions& options) {
  std::vector<PathSumEstimate> out(paths.size());
  std::vector<std::exception_ptr> errors(paths.size());
  parallel_for(paths.size(), options.jobs, [&](std::size_t i) {
    try {
      out[i] = estimate_path(topology, oracle, paths[i], options);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  });
  for (const auto& e : errors)
    if (e) std::rethrow_exception(e);
  return out;
}

CouplingMatrix recover_couplings(std::span<const PathSumEstimate> path_sums) {
  std::map<std::string, Complex> solved;
  for (const auto& est : path_sums) {
    const auto& vs = est.path.vertices_on_path;
    if (vs.empty() || vs.back() != est.path.target)
      throw InconsistentPaths("path to '" + est.path.target + "' does not end at its target");
    if (solved.count(est.path.target))
      throw InconsistentPaths("vertex '" + est.path.target + "' has two paths");
    Complex ancestors{};
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) {
      const auto it = solved.find(vs[i]);
      if (it == solved.end())
        throw InconsistentPaths("path to '" + est.path.target + "' uses unsolved vertex '" +
                                vs[i] + "'");
      ancestors += it->second;
    }
    solved[est.path.target] = est.value - ancestors;
  }
  CouplingMatrix out;
  for (const auto& [id, a] : solved) {
    out.vertex_ids.push_back(id);
    out.diagonal.push_back(a);
  }
  return out;
}

std::string inversion_root(const MetricGraph& topology) {
  const auto ext = topology.external_indices();
  if (ext.empty()) throw InvalidGraph("inversion needs at least one lead");
  return topology.vertices()[ext.front()].id;
}

InversionResult invert(const MetricGraph& topology, const PathOracle& oracle,
                       const LadderOptions& options) {
  require_valid(topology);
  InversionResult out;
  for (const auto& w : validate(topology).warnings()) out.warnings.push_back(w.message);
  const auto paths = spanning_tree(topology, inversion_root(topology));
  out.path_sums = recover_path_sums(topology, oracle, paths, options);
  for (const auto& est : out.path_sums)
    for (const auto& note : est.notes) out.warnings.push_back(est.path.target + ": " + note);
  out.couplings = recover_couplings(out.path_sums);
  return out;
}

}  // namespace qgs
