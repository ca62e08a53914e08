#include "qgs/weyl.hpp"

#include "qgs/errors.hpp"
#include "qgs/numerics.hpp"

#include <cmath>
#include <limits>

namespace qgs {

namespace {

constexpr double kSeries = 1e-4;
constexpr double kPoleTol = 1e-12;

// k cot(kl), k csc(kl) and 2k tan(kl/2) with their z -> 0 limits.
Complex k_cot(Complex k, double l) {
  const Complex w = k * l;
  if (std::abs(w) < kSeries) {
    const Complex w2 = w * w;
    return (1.0 - w2 / 3.0 - w2 * w2 / 45.0) / l;
  }
  return k * stable_cot(w);
}

Complex k_csc(Complex k, double l) {
  const Complex w = k * l;
  if (std::abs(w) < kSeries) {
    const Complex w2 = w * w;
    return (1.0 + w2 / 6.0 + 7.0 * w2 * w2 / 360.0) / l;
  }
  return k * stable_csc(w);
}

Complex two_k_tan_half(Complex k, double l) {
  const Complex w = k * l;
  if (std::abs(w) < kSeries) {
    const Complex w2 = w * w;
    return k * k * l * (1.0 + w2 / 12.0 + w2 * w2 / 120.0);
  }
  return 2.0 * k * stable_tan(0.5 * w);
}

}  // namespace

SpectralPoint SpectralPoint::from_signed_root(double t) {
  if (t >= 0.0) return {Complex(t * t, 0.0), Complex(t, 0.0)};
  return {Complex(-t * t, 0.0), Complex(0.0, -t)};
}

SpectralPoint sqrt_upper(Complex z) {
  // Treat -0.0 as +0.0 so that negative reals land on the upper branch.
  const Complex zz(z.real(), z.imag() == 0.0 ? 0.0 : z.imag());
  Complex k = std::sqrt(zz);
  if (k.imag() < 0.0) k = -k;
  return {z, k};
}

void check_coupling_shape(const MetricGraph& graph, const CouplingMatrix& kappa) {
  if (kappa.size() != graph.vertex_count())
    throw InvalidGraph("coupling matrix has " + std::to_string(kappa.size()) +
                       " entries, graph has " + std::to_string(graph.vertex_count()) +
                       " vertices");
}

PoleDistance pole_distance(const MetricGraph& graph, const SpectralPoint& z) {
  PoleDistance best{std::numeric_limits<double>::infinity(), 0};
  const auto& edges = graph.edges();
  for (std::size_t p = 0; p < edges.size(); ++p) {
    const Complex w = z.sqrt_z * edges[p].length;
    double d;
    if (edges[p].is_loop()) {
      d = std::abs(w.imag()) > 700.0 ? std::numeric_limits<double>::max()
                                     : std::abs(std::cos(0.5 * w));
    } else {
      d = std::abs(w) < kSeries ? 1.0 : abs_sin(w);
    }
    if (d < best.value) best = {d, p};
  }
  return best;
}

namespace {

// M^(i)(z) + lead_sign * i k P_e. Ends with |Im w| above kLargeImag are split
// into i k * (1 or 2) plus an exponentially small tail.
CMatrix assemble(const MetricGraph& graph, const SpectralPoint& z, double lead_sign) {
  constexpr double kLargeImag = 20.0;
  const auto n = static_cast<Eigen::Index>(graph.vertex_count());
  CMatrix m = CMatrix::Zero(n, n);
  RVector ik_count = RVector::Zero(n);
  CVector tail = CVector::Zero(n);
  const Complex k = z.sqrt_z;
  const Complex ik = kI * k;
  for (const auto& e : graph.edges()) {
    const auto i = static_cast<Eigen::Index>(graph.vertex_index(e.from));
    const Complex w = k * e.length;
    const bool large = w.imag() > kLargeImag;
    if (e.is_loop()) {
      if (!large && std::abs(std::cos(0.5 * w)) < kPoleTol) throw PoleProximity(z.z, e.id);
      if (large) {
        // 2k tan(w/2) = 2ik - 4ik p / (1 + p), p = e^{iw}.
        const Complex p = std::exp(kI * w);
        ik_count(i) += 2.0;
        tail(i) -= 4.0 * ik * p / (1.0 + p);
      } else {
        tail(i) += two_k_tan_half(k, e.length);
      }
      continue;
    }
    if (!large && std::abs(w) >= kSeries && abs_sin(w) < kPoleTol) throw PoleProximity(z.z, e.id);
    const auto j = static_cast<Eigen::Index>(graph.vertex_index(e.to));
    if (large) {
      // -k cot w = ik + 2ik q / (1 - q), q = e^{2iw}.
      const Complex q = std::exp(2.0 * kI * w);
      const Complex t = 2.0 * ik * q / (1.0 - q);
      ik_count(i) += 1.0;
      ik_count(j) += 1.0;
      tail(i) += t;
      tail(j) += t;
    } else {
      const Complex c = k_cot(k, e.length);
      tail(i) -= c;
      tail(j) -= c;
    }
    const Complex s = k_csc(k, e.length);
    m(i, j) += s;
    m(j, i) += s;
  }
  for (Eigen::Index i = 0; i < n; ++i) {
    double count = ik_count(i);
    if (graph.is_external(static_cast<std::size_t>(i))) count += lead_sign;
    m(i, i) = count == 0.0 ? tail(i) : ik * count + tail(i);
  }
  return m;
}

}  // namespace

WeylMatrix weyl_compact(const MetricGraph& graph, const SpectralPoint& z) {
  return {z, assemble(graph, z, 0.0), WeylKind::compact};
}

CMatrix weyl_with_leads(const MetricGraph& graph, const SpectralPoint& z, double lead_sign) {
  return assemble(graph, z, lead_sign);
}

CMatrix external_projection(const MetricGraph& graph) {
  const auto n = static_cast<Eigen::Index>(graph.vertex_count());
  CMatrix p = CMatrix::Zero(n, n);
  for (std::size_t i = 0; i < graph.vertex_count(); ++i)
    if (graph.is_external(i)) p(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)) = 1.0;
  return p;
}

WeylMatrix weyl_full(const MetricGraph& graph, const SpectralPoint& z) {
  return {z, assemble(graph, z, 1.0), WeylKind::full};
}

BorderedMatrix bordered_matrix(const MetricGraph& graph, const CouplingMatrix& kappa,
                               const SpectralPoint& z, const std::vector<int>* branches) {
  check_coupling_shape(graph, kappa);
  const auto nv = static_cast<Eigen::Index>(graph.vertex_count());
  const auto ne = static_cast<Eigen::Index>(graph.edge_count());
  BorderedMatrix out;
  out.matrix = CMatrix::Zero(nv + ne, nv + ne);
  out.branches.resize(graph.edge_count());
  CMatrix& b = out.matrix;
  const Complex k = z.sqrt_z;

  for (Eigen::Index i = 0; i < nv; ++i) b(i, i) = -kappa.diagonal[static_cast<std::size_t>(i)];

  for (Eigen::Index p = 0; p < ne; ++p) {
    const auto& e = graph.edges()[static_cast<std::size_t>(p)];
    const Eigen::Index r = nv + p;
    const Complex w = k * e.length;
    const Complex d = sinc_scaled(k, e.length);
    bool even;
    if (branches) {
      even = (*branches)[static_cast<std::size_t>(p)] != 0;
    } else {
      even = std::abs(w.imag()) > 20.0 || std::cos(w).real() >= 0.0;
    }
    out.branches[static_cast<std::size_t>(p)] = even ? 1 : 0;
    const double sigma = even ? -1.0 : 1.0;
    const auto i = static_cast<Eigen::Index>(graph.vertex_index(e.from));
    if (e.is_loop()) {
      if (even) {
        b(i, i) += 2.0 * k * stable_tan(0.5 * w);
      } else {
        b(i, i) += -2.0 * k * stable_cot(0.5 * w);
        b(i, r) = b(r, i) = 2.0;
      }
    } else {
      const auto j = static_cast<Eigen::Index>(graph.vertex_index(e.to));
      const Complex g = even ? k * stable_tan(0.5 * w) : -k * stable_cot(0.5 * w);
      b(i, i) += g;
      b(j, j) += g;
      b(i, r) = b(r, i) = 1.0;
      b(j, r) = b(r, j) = even ? -1.0 : 1.0;
    }
    b(r, r) = -sigma * d;
    out.sign *= -sigma;
  }
  return out;
}

Complex secular_determinant(const MetricGraph& graph, const CouplingMatrix& kappa,
                            const SpectralPoint& z) {
  const BorderedMatrix b = bordered_matrix(graph, kappa, z);
  return b.matrix.partialPivLu().determinant() * b.sign;
}

CMatrix lead_shifted_resolvent(const MetricGraph& graph, const CouplingMatrix& kappa,
                               const SpectralPoint& z, double lead_sign, double cond_limit) {
  check_coupling_shape(graph, kappa);
  const auto nv = static_cast<Eigen::Index>(graph.vertex_count());
  if (pole_distance(graph, z).value < 1e-6) {
    CouplingMatrix shifted = kappa;
    for (std::size_t i = 0; i < graph.vertex_count(); ++i)
      if (graph.is_external(i)) shifted.diagonal[i] -= lead_sign * kI * z.sqrt_z;
    const BorderedMatrix b = bordered_matrix(graph, shifted, z);
    if (equilibrated_condition_number(b.matrix) > cond_limit)
      throw SingularMatrix(z.z, "M - kappa");
    return b.matrix.partialPivLu().inverse().topLeftCorner(nv, nv);
  }
  const CMatrix a = weyl_with_leads(graph, z, lead_sign) - kappa.as_matrix();
  if (equilibrated_condition_number(a) > cond_limit) throw SingularMatrix(z.z, "M - kappa");
  return a.partialPivLu().inverse();
}

CMatrix compact_resolvent(const MetricGraph& graph, const CouplingMatrix& kappa,
                          const SpectralPoint& z, double cond_limit) {
  return lead_shifted_resolvent(graph, kappa, z, 0.0, cond_limit);
}

CMatrix robin_to_dirichlet(const MetricGraph& graph, const CouplingMatrix& kappa,
                           const SpectralPoint& z, double cond_limit) {
  const CMatrix r = compact_resolvent(graph, kappa, z, cond_limit);
  const auto ext = graph.external_indices();
  const auto ne = static_cast<Eigen::Index>(ext.size());
  CMatrix out(ne, ne);
  for (Eigen::Index a = 0; a < ne; ++a)
    for (Eigen::Index b = 0; b < ne; ++b)
      out(a, b) = r(static_cast<Eigen::Index>(ext[static_cast<std::size_t>(a)]),
                    static_cast<Eigen::Index>(ext[static_cast<std::size_t>(b)]));
  return out;
}

}  // namespace qgs
