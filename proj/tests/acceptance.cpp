// One line per acceptance criterion: PASS/FAIL, measured runtime against its limit.
#include "qgs/selfcheck.hpp"

#include <cstdio>
#include <functional>

int main() {
  using qgs::CheckResult;
  struct Criterion {
    int id;
    std::function<CheckResult()> run;
    double limit_seconds;
  };
  const std::vector<Criterion> criteria{
      {1, [] { return qgs::check_weyl_structure(); }, 10.0},
      {2, [] { return qgs::check_spectrum_oracle(); }, 30.0},
      {3, [] { return qgs::check_scattering(); }, 30.0},
      {4, [] { return qgs::check_rtd_extraction(); }, 10.0},
      {5, [] { return qgs::check_contraction(); }, 10.0},
      {6, [] { return qgs::check_inverse_round_trip(); }, 120.0},
      {7, [] { return qgs::check_homogenisation(); }, 120.0},
      {8, [] { return qgs::check_analytic_anchor(); }, 1.0},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const CheckResult r = c.run();
    const bool in_time = r.seconds < c.limit_seconds;
    const bool ok = r.passed && in_time;
    failed += ok ? 0 : 1;
    std::printf("%s  %d. %s [%.3f s / %.0f s]: %s%s\n", ok ? "PASS" : "FAIL", c.id, r.name.c_str(),
                r.seconds, c.limit_seconds, r.detail.c_str(), in_time ? "" : " (over time limit)");
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
