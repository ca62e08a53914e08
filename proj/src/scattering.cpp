#include "qgs/scattering.hpp"

#include "qgs/errors.hpp"
#include "qgs/numerics.hpp"

#include <cmath>
#include <limits>

namespace qgs {

namespace {

CMatrix external_block(const MetricGraph& graph, const CMatrix& m) {
  const auto ext = graph.external_indices();
  const auto n = static_cast<Eigen::Index>(ext.size());
  CMatrix out(n, n);
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b)
      out(a, b) = m(static_cast<Eigen::Index>(ext[static_cast<std::size_t>(a)]),
                    static_cast<Eigen::Index>(ext[static_cast<std::size_t>(b)]));
  return out;
}

// M* is assembled with full relative accuracy; at degree-1 external vertices
// and z = -tau^2 it is strongly graded rather than singular, so only a
// non-finite inverse is treated as failure.
CMatrix star_resolvent(const MetricGraph& graph, const SpectralPoint& z) {
  const CMatrix r = lead_shifted_resolvent(graph, CouplingMatrix::zero(graph), z, -1.0,
                                           std::numeric_limits<double>::infinity());
  if (!r.allFinite()) throw SingularMatrix(z.z, "M*");
  return r;
}

void require_positive(double s) {
  if (!(s > 0.0) || !std::isfinite(s))
    throw InputError("scattering energy must be positive, got s = " + std::to_string(s));
}

}  // namespace

ScatteringFactors scattering_factors(const MetricGraph& graph, const CouplingMatrix& kappa,
                                     const SpectralPoint& z) {
  check_coupling_shape(graph, kappa);
  const CMatrix r = lead_shifted_resolvent(graph, kappa, z, 1.0);  // (M - kappa)^{-1}
  const CMatrix r_star = star_resolvent(graph, z);
  ScatteringFactors f;
  if (pole_distance(graph, z).value >= 1e-6) {
    const CMatrix m = weyl_with_leads(graph, z, 1.0);
    const CMatrix m_star = weyl_with_leads(graph, z, -1.0);
    f.left = r * (m_star - kappa.as_matrix());
    f.right = r_star * m;
  } else {
    // M* - kappa = (M - kappa) - 2ik P_e, M = M* + 2ik P_e; exact, and free of
    // the edge poles that M itself carries here.
    const Complex two_ik = 2.0 * kI * z.sqrt_z;
    const CMatrix pe = external_projection(graph);
    const auto n = r.rows();
    f.left = CMatrix::Identity(n, n) - two_ik * r * pe;
    f.right = CMatrix::Identity(n, n) + two_ik * r_star * pe;
  }
  return f;
}

CMatrix sigma_full(const MetricGraph& graph, const CouplingMatrix& kappa, double s) {
  require_positive(s);
  const ScatteringFactors f = scattering_factors(graph, kappa, sqrt_upper(Complex(s, 0.0)));
  return f.left * f.right;
}

ScatteringMatrix sigma_external(const MetricGraph& graph, const CouplingMatrix& kappa, double s,
                                double tol) {
  require_positive(s);
  return sigma_external(graph, kappa, sqrt_upper(Complex(s, 0.0)), tol);
}

ScatteringMatrix sigma_external(const MetricGraph& graph, const CouplingMatrix& kappa,
                                const SpectralPoint& z, double tol) {
  const ScatteringFactors f = scattering_factors(graph, kappa, z);
  const CMatrix projected = external_block(graph, f.left * f.right);
  const CMatrix factorised = external_block(graph, f.left) * external_block(graph, f.right);
  const double gap = projected.size() == 0 ? 0.0 : (projected - factorised).cwiseAbs().maxCoeff();
  const double scale = projected.size() == 0 ? 1.0 : std::max(1.0, projected.cwiseAbs().maxCoeff());
  if (!(gap <= tol * scale)) throw FactorisationMismatch(z.z.real(), gap);
  return {z, projected, ScatteringForm::projected, gap};
}

CMatrix kappa_independent_factor(const MetricGraph& graph, const SpectralPoint& z) {
  const CMatrix r_star = star_resolvent(graph, z);
  if (pole_distance(graph, z).value >= 1e-6)
    return external_block(graph, r_star * weyl_with_leads(graph, z, 1.0));
  const auto n = r_star.rows();
  return external_block(graph, CMatrix::Identity(n, n) +
                                   2.0 * kI * z.sqrt_z * r_star * external_projection(graph));
}

CMatrix lead_matching_oracle(const MetricGraph& graph, const CouplingMatrix& kappa, double s) {
  require_positive(s);
  check_coupling_shape(graph, kappa);
  const Complex k(std::sqrt(s), 0.0);
  const auto& edges = graph.edges();
  const auto ext = graph.external_indices();
  const auto n_edge = static_cast<Eigen::Index>(2 * edges.size());
  const auto n_lead = static_cast<Eigen::Index>(ext.size());
  const Eigen::Index n = n_edge + n_lead;

  std::vector<Eigen::Index> lead_of(graph.vertex_count(), -1);
  for (std::size_t a = 0; a < ext.size(); ++a) lead_of[ext[a]] = static_cast<Eigen::Index>(a);

  // End descriptors: value and inward derivative as linear forms in the unknowns.
  struct End {
    Eigen::Index col_a, col_b;
    Complex va, vb, da, db;
  };
  std::vector<std::vector<End>> ends(graph.vertex_count());
  for (std::size_t p = 0; p < edges.size(); ++p) {
    const auto c = static_cast<Eigen::Index>(2 * p);
    const double len = edges[p].length;
    const Complex cs = std::cos(k * len);
    const Complex sk = sinc_scaled(k, len);
    ends[graph.vertex_index(edges[p].from)].push_back({c, c + 1, 1.0, 0.0, 0.0, 1.0});
    ends[graph.vertex_index(edges[p].to)].push_back({c, c + 1, cs, sk, s * sk, -cs});
  }

  CMatrix a = CMatrix::Zero(n, n);
  CMatrix rhs = CMatrix::Zero(n, n_lead);
  Eigen::Index row = 0;
  for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
    const Eigen::Index lead = lead_of[v];
    const auto& list = ends[v];
    // Reference value: first compact end, else the lead.
    auto put_value = [&](Eigen::Index r, Complex sign, std::size_t which) {
      if (which < list.size()) {
        a(r, list[which].col_a) += sign * list[which].va;
        a(r, list[which].col_b) += sign * list[which].vb;
      } else {
        // Lead value 1 (incoming, moved to rhs) + b.
        a(r, n_edge + lead) += sign;
        rhs(r, lead) -= sign;
      }
    };
    const std::size_t count = list.size() + (lead >= 0 ? 1 : 0);
    if (count == 0) continue;
    for (std::size_t e = 1; e < count; ++e) {
      put_value(row, 1.0, e);
      put_value(row, -1.0, 0);
      ++row;
    }
    for (const auto& end : list) {
      a(row, end.col_a) += end.da;
      a(row, end.col_b) += end.db;
    }
    if (lead >= 0) {
      // u = e^{-ikx} + b e^{ikx}: u'(0) = -ik + ik b.
      a(row, n_edge + lead) += kI * k;
      rhs(row, lead) += kI * k;
    }
    put_value(row, -kappa.diagonal[v], 0);
    ++row;
  }
  if (equilibrated_condition_number(a) > 1e12)
    throw SingularMatrix(Complex(s, 0.0), "lead matching system");
  const CMatrix sol = a.partialPivLu().solve(rhs);
  return sol.bottomRows(n_lead);
}

double unitarity_defect(const CMatrix& s) {
  return (s.adjoint() * s - CMatrix::Identity(s.rows(), s.cols())).norm();
}

}  // namespace qgs
