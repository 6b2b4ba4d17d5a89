#pragma once

#include "sweepwidth/loop_curve.hpp"

#include <iosfwd>
#include <vector>

namespace sweepwidth {

/// Property checks of Psi on one curve.
struct PsiCurveCheck {
  double length_before = 0.0;
  double length_after = 0.0;
  double energy_before = 0.0;
  double energy_after = 0.0;
  double orbit_distance = 0.0;  // distance_to_geodesic_set of the input
  double dist = 0.0;            // w12(c, Psi(c))
  double bound = 0.0;           // assembled property-(3) bound
  double bound_slack = 0.0;
  double fixed_point_residual = 0.0;
  double geodesic_residual = 0.0;
  double four_step_gap = 0.0;  // w12(psi(c), psi_four_step(c))

  double length_drop() const { return length_before - length_after; }
};

struct PsiSuiteReport {
  std::vector<PsiCurveCheck> curves;

  /// Curves with Length(Psi c) > (1 + rel_tol) Length(c).
  int length_increases(double rel_tol = 1e-9) const;
  int bound_violations() const;
  /// Curves where "Psi fixes c" and "c is a geodesic" disagree.
  int fixed_point_mismatches(double fixed_tol = 1e-6, double geodesic_tol = 1e-3) const;
  double max_four_step_gap() const;
  /// Min length drop over curves with orbit distance >= eps (NaN if none).
  double delta(double eps = 0.1) const;
  int delta_support(double eps = 0.1) const;
};

PsiCurveCheck check_psi(const LoopCurve& c);
PsiSuiteReport run_psi_suite(const std::vector<LoopCurve>& curves, bool parallel = true);

void write_psi_suite_csv(std::ostream& out, const PsiSuiteReport& report);

}  // namespace sweepwidth
