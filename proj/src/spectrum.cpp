#include "qgs/spectrum.hpp"

#include "qgs/errors.hpp"
#include "qgs/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace qgs {

namespace {

double z_of(double t) { return t * std::abs(t); }

double scan_step(const MetricGraph& graph) {
  return std::numbers::pi / (8.0 * graph.total_length());
}

double signed_root(double z) { return z >= 0.0 ? std::sqrt(z) : -std::sqrt(-z); }

// Number of Dirichlet eigenvalues (n pi / l)^2 strictly below t^2 summed over edges.
int dirichlet_count(const MetricGraph& graph, double t) {
  if (t <= 0.0) return 0;
  int count = 0;
  for (const auto& e : graph.edges())
    count += static_cast<int>(std::ceil(t * e.length / std::numbers::pi)) - 1;
  return count;
}

struct CountSample {
  double t;
  int count;
};

class WeylScanner {
 public:
  WeylScanner(const MetricGraph& graph, const CouplingMatrix& kappa, const SpectrumOptions& opt)
      : graph_(graph), kappa_(kappa), opt_(opt) {}

  CountSample sample(double t) const {
    double used = t;
    const int c = eigenvalue_count(graph_, kappa_, t, &used);
    return {used, c};
  }

  // Splits [a, b] until each count jump sits in a bracket of relative width 1e-7.
  void isolate(const CountSample& a, const CountSample& b) {
    if (b.count <= a.count) return;
    if (b.t - a.t < 1e-7 * std::max(1.0, std::abs(a.t))) {
      locate(a, b);
      return;
    }
    const CountSample mid = sample(0.5 * (a.t + b.t));
    if (mid.t >= b.t) {
      locate(a, b);
      return;
    }
    isolate(a, mid);
    isolate(mid, b);
  }

  SpectrumResult result;

 private:
  void locate(const CountSample& a, const CountSample& b) {
    const int m = b.count - a.count;
    const double tm = 0.5 * (a.t + b.t);
    const auto branches = bordered_matrix(graph_, kappa_, SpectralPoint::from_signed_root(tm)).branches;
    auto objective = [&](double t) {
      const CMatrix bm =
          bordered_matrix(graph_, kappa_, SpectralPoint::from_signed_root(t), &branches).matrix;
      const RMatrix br = bm.real();
      Eigen::JacobiSVD<RMatrix> svd(br);
      const auto& s = svd.singularValues();
      double sum = 0.0;
      for (int i = 0; i < m && i < s.size(); ++i) sum += s(s.size() - 1 - i);
      return sum / s(0);
    };
    const double ts =
        golden_section_minimise(objective, a.t, b.t, 1e-15 * std::max(1.0, std::abs(tm)));
    const RMatrix bs =
        bordered_matrix(graph_, kappa_, SpectralPoint::from_signed_root(ts), &branches)
            .matrix.real();
    const int kernel = numerical_kernel_dimension(bs, opt_.kernel_tol);
    if (kernel != m) {
      result.warnings.push_back("multiplicity cross-check: count jump " + std::to_string(m) +
                                " vs kernel dimension " + std::to_string(kernel) + " at z = " +
                                std::to_string(z_of(ts)));
    }
    result.eigenvalues.push_back({z_of(ts), m});
  }

  const MetricGraph& graph_;
  const CouplingMatrix& kappa_;
  const SpectrumOptions& opt_;
};

double ratio_at(const MetricGraph& graph, const CouplingMatrix& kappa, double t,
                Eigen::VectorXd* sv = nullptr) {
  const RMatrix l = matching_matrix(graph, kappa, SpectralPoint::from_signed_root(t)).real();
  Eigen::JacobiSVD<RMatrix> svd(l);
  const auto& s = svd.singularValues();
  if (sv) *sv = s;
  return s(s.size() - 1) / s(0);
}

void merge(std::vector<Eigenvalue>& values, double tol, bool sum_multiplicities) {
  std::sort(values.begin(), values.end(),
            [](const Eigenvalue& a, const Eigenvalue& b) { return a.value < b.value; });
  std::vector<Eigenvalue> out;
  for (const auto& v : values) {
    if (!out.empty() && std::abs(v.value - out.back().value) <=
                            tol * std::max(1.0, std::abs(v.value))) {
      // The matching scan can reach one root from two neighbouring minima; the
      // kernel dimension is then the multiplicity, not the sum.
      out.back().multiplicity = sum_multiplicities
                                    ? out.back().multiplicity + v.multiplicity
                                    : std::max(out.back().multiplicity, v.multiplicity);
      continue;
    }
    out.push_back(v);
  }
  values = std::move(out);
}

void trim(SpectrumResult& r, std::size_t max_count) {
  if (max_count == 0) return;
  std::size_t total = 0;
  std::vector<Eigenvalue> out;
  for (const auto& v : r.eigenvalues) {
    if (total >= max_count) break;
    const int take =
        static_cast<int>(std::min<std::size_t>(static_cast<std::size_t>(v.multiplicity),
                                               max_count - total));
    out.push_back({v.value, take});
    total += static_cast<std::size_t>(take);
  }
  r.eigenvalues = std::move(out);
}

void flag_close_roots(SpectrumResult& r, double step) {
  for (std::size_t i = 1; i < r.eigenvalues.size(); ++i) {
    const double ta = signed_root(r.eigenvalues[i - 1].value);
    const double tb = signed_root(r.eigenvalues[i].value);
    if (tb - ta < step)
      r.warnings.push_back("ScanResolution: eigenvalues " +
                           std::to_string(r.eigenvalues[i - 1].value) + " and " +
                           std::to_string(r.eigenvalues[i].value) + " within one scan step");
  }
}

SpectrumResult weyl_mode(const MetricGraph& graph, const CouplingMatrix& kappa, double t_lo,
                         double t_hi, const SpectrumOptions& opt) {
  WeylScanner scanner(graph, kappa, opt);
  const double step = scan_step(graph);
  CountSample prev = scanner.sample(t_lo);
  std::size_t found = 0;
  for (double t = t_lo + step;; t += step) {
    const bool last = t >= t_hi;
    const CountSample cur = scanner.sample(last ? t_hi : t);
    if (cur.count > prev.count) {
      scanner.isolate(prev, cur);
      found += static_cast<std::size_t>(cur.count - prev.count);
    }
    prev = cur;
    if (last || (opt.max_count > 0 && found >= opt.max_count)) break;
  }
  merge(scanner.result.eigenvalues, opt.merge_tol, true);
  flag_close_roots(scanner.result, step);
  return std::move(scanner.result);
}

SpectrumResult matching_mode(const MetricGraph& graph, const CouplingMatrix& kappa,
                             double t_lo, double t_hi, const SpectrumOptions& opt) {
  SpectrumResult result;
  const double step = scan_step(graph) / 4.0;
  std::vector<double> ts, rs;
  for (double t = t_lo; t <= t_hi + step; t += step) {
    ts.push_back(t);
    rs.push_back(ratio_at(graph, kappa, t));
  }
  auto ratio = [&](double t) { return ratio_at(graph, kappa, t); };
  auto accept = [&](double tm) {
    Eigen::VectorXd sv;
    if (tm > t_hi || ratio_at(graph, kappa, tm, &sv) >= opt.kernel_tol) return 0;
    int mult = 0;
    for (Eigen::Index j = 0; j < sv.size(); ++j)
      if (sv(j) < opt.kernel_tol * sv(0)) ++mult;
    result.eigenvalues.push_back({z_of(tm), mult});
    return mult;
  };
  std::size_t found = 0;
  for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
    if (!(rs[i] <= rs[i - 1] && rs[i] < rs[i + 1])) continue;
    // Resample the two cells around the minimum so that close pairs, which
    // share one coarse minimum, are separated.
    constexpr int kSub = 32;
    const double h = (ts[i + 1] - ts[i - 1]) / kSub;
    std::vector<double> sub(kSub + 1);
    for (int j = 0; j <= kSub; ++j) sub[j] = ratio(ts[i - 1] + j * h);
    for (int j = 1; j < kSub; ++j) {
      if (!(sub[j] <= sub[j - 1] && sub[j] < sub[j + 1])) continue;
      const double lo = ts[i - 1] + (j - 1) * h, hi = ts[i - 1] + (j + 1) * h;
      const double tm =
          golden_section_minimise(ratio, lo, hi, 1e-15 * std::max(1.0, std::abs(ts[i])));
      found += static_cast<std::size_t>(accept(tm));
    }
    if (opt.max_count > 0 && found >= opt.max_count) break;
  }
  merge(result.eigenvalues, opt.merge_tol, false);
  flag_close_roots(result, step);
  return result;
}

}  // namespace

std::string_view to_string(SpectrumMode mode) {
  return mode == SpectrumMode::weyl ? "weyl" : "matching";
}

SpectrumMode parse_spectrum_mode(std::string_view text) {
  if (text == "weyl") return SpectrumMode::weyl;
  if (text == "matching") return SpectrumMode::matching;
  throw InputError("unknown spectrum mode '" + std::string(text) + "'");
}

std::vector<double> SpectrumResult::expanded() const {
  std::vector<double> out;
  for (const auto& e : eigenvalues)
    for (int m = 0; m < e.multiplicity; ++m) out.push_back(e.value);
  return out;
}

double negative_eigenvalue_bound(const MetricGraph& graph, const CouplingMatrix& kappa) {
  double min_a = 0.0;
  for (const auto& a : kappa.diagonal) min_a = std::min(min_a, a.real());
  return 2.0 * (-min_a) + 2.0 / graph.min_length() + 1.0;
}

int eigenvalue_count(const MetricGraph& graph, const CouplingMatrix& kappa, double t,
                     double* used_t) {
  for (int attempt = 0; attempt < 50; ++attempt) {
    const SpectralPoint z = SpectralPoint::from_signed_root(t);
    if (pole_distance(graph, z).value < 1e-9) {
      t += 1e-9 * std::max(1.0, std::abs(t)) * (attempt + 1);
      continue;
    }
    const RMatrix m = (weyl_compact(graph, z).entries - kappa.as_matrix()).real();
    Eigen::SelfAdjointEigenSolver<RMatrix> eig(m, Eigen::EigenvaluesOnly);
    int positive = 0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
      if (eig.eigenvalues()(i) > 0.0) ++positive;
    if (used_t) *used_t = t;
    return dirichlet_count(graph, t) + positive;
  }
  throw NumericalError("could not move the counting point off the Weyl poles");
}

CMatrix matching_matrix(const MetricGraph& graph, const CouplingMatrix& kappa,
                        const SpectralPoint& z) {
  check_coupling_shape(graph, kappa);
  const auto& edges = graph.edges();
  const auto n2 = static_cast<Eigen::Index>(2 * edges.size());
  CMatrix l = CMatrix::Zero(n2, n2);
  // Row scale from the individual terms, so rows that cancel stay small.
  RVector scale = RVector::Zero(n2);
  const Complex k = z.sqrt_z;
  auto put = [&](Eigen::Index r, Eigen::Index c, Complex v) {
    l(r, c) += v;
    scale(r) = std::max(scale(r), std::abs(v));
  };

  // Edge ends incident to each vertex: (edge index, at_far_end).
  std::vector<std::vector<std::pair<Eigen::Index, bool>>> ends(graph.vertex_count());
  for (std::size_t p = 0; p < edges.size(); ++p) {
    ends[graph.vertex_index(edges[p].from)].push_back({static_cast<Eigen::Index>(p), false});
    ends[graph.vertex_index(edges[p].to)].push_back({static_cast<Eigen::Index>(p), true});
  }

  struct EndData {
    Complex value_a, value_b;  // f at the end
    Complex deriv_a, deriv_b;  // inward derivative at the end
  };
  auto end_data = [&](Eigen::Index p, bool far) -> EndData {
    if (!far) return {1.0, 0.0, 0.0, 1.0};
    const double len = edges[static_cast<std::size_t>(p)].length;
    const Complex c = std::cos(k * len);
    const Complex s_over_k = sinc_scaled(k, len);
    return {c, s_over_k, z.z * s_over_k, -c};
  };

  Eigen::Index row = 0;
  for (std::size_t v = 0; v < ends.size(); ++v) {
    const auto& list = ends[v];
    if (list.empty()) continue;
    const EndData first = end_data(list[0].first, list[0].second);
    for (std::size_t e = 1; e < list.size(); ++e) {
      const EndData d = end_data(list[e].first, list[e].second);
      put(row, 2 * list[e].first, d.value_a);
      put(row, 2 * list[e].first + 1, d.value_b);
      put(row, 2 * list[0].first, -first.value_a);
      put(row, 2 * list[0].first + 1, -first.value_b);
      ++row;
    }
    const Complex a = kappa.diagonal[v];
    for (const auto& [p, far] : list) {
      const EndData d = end_data(p, far);
      put(row, 2 * p, d.deriv_a);
      put(row, 2 * p + 1, d.deriv_b);
    }
    put(row, 2 * list[0].first, -a * first.value_a);
    put(row, 2 * list[0].first + 1, -a * first.value_b);
    ++row;
  }
  for (Eigen::Index r = 0; r < n2; ++r)
    if (scale(r) > 0.0) l.row(r) /= scale(r);
  return l;
}

SpectrumResult compact_spectrum(const MetricGraph& graph, const CouplingMatrix& kappa,
                                double z_max, SpectrumMode mode, const SpectrumOptions& options) {
  check_coupling_shape(graph, kappa);
  if (!kappa.is_real())
    throw NonSelfAdjoint("compact_spectrum needs real couplings; the operator is not self-adjoint");
  if (graph.edge_count() == 0) return {};
  const double t_lo = -negative_eigenvalue_bound(graph, kappa);
  const double t_hi = signed_root(z_max) * (1.0 + 1e-12) + 1e-12;
  SpectrumResult r = mode == SpectrumMode::weyl ? weyl_mode(graph, kappa, t_lo, t_hi, options)
                                                : matching_mode(graph, kappa, t_lo, t_hi, options);
  std::erase_if(r.eigenvalues, [z_max](const Eigenvalue& e) {
    return e.value > z_max + 1e-10 * std::max(1.0, std::abs(z_max));
  });
  trim(r, options.max_count);
  return r;
}

SpectrumResult first_eigenvalues(const MetricGraph& graph, const CouplingMatrix& kappa,
                                 std::size_t count, SpectrumMode mode,
                                 const SpectrumOptions& options) {
  SpectrumOptions opt = options;
  opt.max_count = count;
  // Weyl law estimate of the window, widened until enough eigenvalues are inside.
  double k = std::numbers::pi * static_cast<double>(count + graph.vertex_count() + 2) /
             graph.total_length();
  for (int attempt = 0; attempt < 20; ++attempt) {
    SpectrumResult r = compact_spectrum(graph, kappa, k * k, mode, opt);
    if (r.expanded().size() >= count) return r;
    k *= 1.5;
  }
  return compact_spectrum(graph, kappa, k * k, mode, opt);
}

}  // namespace qgs
