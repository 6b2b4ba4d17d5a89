#include "sweepwidth/psi_suite.hpp"

#include "sweepwidth/birkhoff.hpp"
#include "sweepwidth/geodesic_orbit.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <iomanip>
#include <limits>
#include <ostream>

namespace sweepwidth {

PsiCurveCheck check_psi(const LoopCurve& c) {
  PsiCurveCheck r;
  const PsiResult three = psi(c);
  const PsiResult four = psi_four_step(c);
  const LoopCurve& out = three.output();
  r.length_before = c.length();
  r.length_after = out.length();
  r.energy_before = c.energy();
  r.energy_after = out.energy();
  r.orbit_distance = distance_to_geodesic_set(c);
  r.fixed_point_residual = w12_distance(c, out) / (1.0 + c.length());
  r.geodesic_residual = geodesic_residual(c);
  r.four_step_gap = w12_distance(out, four.output());
  if (!out.is_point()) {
    const Property3Bound b = property3_bound(c);
    r.dist = b.dist;
    r.bound = b.bound;
  } else {
    r.dist = w12_distance(c, out);
    r.bound = std::numeric_limits<double>::infinity();
  }
  r.bound_slack = 1e-9 * (1.0 + c.length());
  return r;
}

PsiSuiteReport run_psi_suite(const std::vector<LoopCurve>& curves, bool parallel) {
  PsiSuiteReport report;
  report.curves.resize(curves.size());
  const auto count = static_cast<long>(curves.size());
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) if (parallel)
  for (long i = 0; i < count; ++i) {
    try {
      report.curves[static_cast<std::size_t>(i)] = check_psi(curves[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical(psi_suite_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return report;
}

int PsiSuiteReport::length_increases(double rel_tol) const {
  return static_cast<int>(std::count_if(curves.begin(), curves.end(), [&](const PsiCurveCheck& c) {
    return c.length_after > c.length_before * (1.0 + rel_tol);
  }));
}

int PsiSuiteReport::bound_violations() const {
  return static_cast<int>(std::count_if(curves.begin(), curves.end(),
                                        [](const PsiCurveCheck& c) { return c.dist > c.bound + c.bound_slack; }));
}

int PsiSuiteReport::fixed_point_mismatches(double fixed_tol, double geodesic_tol) const {
  return static_cast<int>(std::count_if(curves.begin(), curves.end(), [&](const PsiCurveCheck& c) {
    return (c.fixed_point_residual <= fixed_tol) != (c.geodesic_residual <= geodesic_tol);
  }));
}

double PsiSuiteReport::max_four_step_gap() const {
  double worst = 0.0;
  for (const auto& c : curves) worst = std::max(worst, c.four_step_gap);
  return worst;
}

double PsiSuiteReport::delta(double eps) const {
  double best = std::numeric_limits<double>::quiet_NaN();
  for (const auto& c : curves) {
    if (c.orbit_distance < eps) continue;
    best = std::isnan(best) ? c.length_drop() : std::min(best, c.length_drop());
  }
  return best;
}

int PsiSuiteReport::delta_support(double eps) const {
  return static_cast<int>(
      std::count_if(curves.begin(), curves.end(), [&](const PsiCurveCheck& c) { return c.orbit_distance >= eps; }));
}

void write_psi_suite_csv(std::ostream& out, const PsiSuiteReport& report) {
  out << std::setprecision(17);
  out << "index,length_before,length_after,energy_before,energy_after,orbit_distance,dist,bound,"
         "fixed_point_residual,geodesic_residual,four_step_gap\n";
  for (std::size_t i = 0; i < report.curves.size(); ++i) {
    const auto& c = report.curves[i];
    out << i << ',' << c.length_before << ',' << c.length_after << ',' << c.energy_before << ',' << c.energy_after
        << ',' << c.orbit_distance << ',' << c.dist << ',' << c.bound << ',' << c.fixed_point_residual << ','
        << c.geodesic_residual << ',' << c.four_step_gap << '\n';
  }
}

}  // namespace sweepwidth
