#pragma once

#include "sweepwidth/flow.hpp"
#include "sweepwidth/sweepout.hpp"

#include <iosfwd>
#include <limits>
#include <string>
#include <vector>

namespace sweepwidth {

struct DecayConfig {
  FlowLaw law;
  std::vector<double> t_samples;
  double dt_max = 1e-3;
  WidthConfig width;
  /// Transport each tightened sweepout to the next sample time and record
  /// its max energy as an upper bound for the next width.
  bool transport_comparison = true;
};

/// Width runs inside decay experiments only need the max energy, so the
/// plateau rule engages immediately and distances are not tracked.
DecayConfig default_decay_config(FlowLaw law, std::vector<double> t_samples);

struct DecaySample {
  double t = 0.0;
  double width_original = 0.0;
  double width_scaled = 0.0;
  double scale = 1.0;
  int L = 0;
  int iterations = 0;
  double argmax_t = 0.0;
  double total_curvature_argmax = 0.0;
  double planarity_residual = 0.0;
  /// Max energy of the previous sample's sweepout pushed to this time.
  double transported_upper = std::numeric_limits<double>::quiet_NaN();
  /// V0^k dV/dt and -(2 pi)^{k+1} on the argmax slice (NaN if not geodesic).
  double power_lhs = std::numeric_limits<double>::quiet_NaN();
  double power_rhs = std::numeric_limits<double>::quiet_NaN();
};

struct DecaySeries {
  FlowLaw law;
  std::vector<DecaySample> samples;
  /// Forward difference quotients (W_{i+1} - W_i) / (t_{i+1} - t_i).
  std::vector<double> quotients;
  double extinction_time = std::numeric_limits<double>::quiet_NaN();
  /// MCF: W(0) / 4 pi. H^k: V0^{k+1} / ((k+1) (2 pi)^{k+1}), V0^2 = 2 pi W(0).
  double extinction_bound = std::numeric_limits<double>::quiet_NaN();
  bool truncated = false;
  std::string truncation_note;

  double max_quotient() const;
  /// Every quotient <= -4 pi * factor.
  bool quotients_below(double factor) const;
  /// W(t) <= W(0) - 4 pi t (relative slack).
  bool integrated_bound_holds(double rel_tol = 1e-6) const;
  bool extinction_bound_holds() const { return extinction_time <= extinction_bound; }
  /// Wherever a quotient is within 1% of -4 pi, the argmax slices at both
  /// ends have total curvature within 1% of 2 pi and planarity <= 2%.
  bool rigidity_holds() const;
  /// Each width is at most the transported upper bound from the previous time.
  bool transport_bounds_hold(double rel_tol = 1e-6) const;
};

DecaySeries width_decay_experiment(const Surface& surface0, const DecayConfig& config);

void write_decay_csv(std::ostream& out, const DecaySeries& series);

}  // namespace sweepwidth
