#pragma once

#include "sweepwidth/flow.hpp"

namespace sweepwidth {

/// Discrete curvature of a closed knot polygon: turning angle alpha_k at
/// knot k, dual length w_k = (|e_{k-1}| + |e_k|) / 2, curvature vector
/// kappa_k = (alpha_k / w_k) * unit(t_k - t_{k-1}).
/// With these, integral |H| = sum alpha_k is exactly 2 pi on a convex planar
/// polygon and (sum alpha)^2 <= (sum w) (sum alpha^2 / w) holds exactly.
struct DiscreteCurvature {
  std::vector<double> turning;
  std::vector<double> dual_length;
  std::vector<Vec3> vectors;

  double total() const;                   // integral |H_Sigma|
  double squared_integral() const;        // integral |H_Sigma|^2
  double power_integral(double p) const;  // integral |H_Sigma|^p
  double length() const;                  // polygon length
};

DiscreteCurvature discrete_curvature(const LoopCurve& c);

/// Integral of |H_Sigma|; throws for zero-length curves.
double total_curvature(const LoopCurve& c);

/// Max distance of the knots to their least-squares plane, over length.
double planarity_residual(const LoopCurve& c);

/// d/dt Length under a surface velocity |H_M|^k (inward normal).
struct FirstVariation {
  double dV_dt = 0.0;
  double length = 0.0;
  double int_H = 0.0;
  double int_H_sq = 0.0;
  /// dV/dt <= -integral |H_Sigma|^2 (relative slack).
  bool inequality_holds(double rel_tol = 1e-6) const;
};

/// Throws when c is not a closed geodesic of its surface (is_geodesic).
FirstVariation first_variation_length(const LoopCurve& geodesic, const FlowLaw& law = FlowLaw::mcf());
/// Same on the stored time-t surface of a history; the geodesic must lie on it.
FirstVariation first_variation_length(const FlowHistory& history, const LoopCurve& geodesic, double t);

/// pi dE/dt = V0 dV/dt <= -V0 integral |H|^2 <= -(integral |H|)^2 <= -4 pi^2.
struct EnergyDecay {
  double dE_dt = 0.0;
  double v0_dv = 0.0;
  double cauchy_schwarz = 0.0;  // -V0 integral |H|^2
  double fenchel = 0.0;         // -(integral |H|)^2
  double floor = 0.0;           // -4 pi^2
  bool chain_holds(double rel_tol = 1e-9) const;
};

EnergyDecay energy_decay_estimate(const LoopCurve& geodesic);
EnergyDecay energy_decay_estimate(const FlowHistory& history, const LoopCurve& geodesic, double t);

/// V0^k dV/dt under H^k flow against -(2 pi)^{k+1}, with the Hoelder terms.
struct PowerFlowCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double holder = 0.0;   // -V0^k integral |H|^{k+1}
  double fenchel = 0.0;  // -(integral |H|)^{k+1}
  bool holds(double rel_tol = 1e-9) const;
};

PowerFlowCheck power_flow_inequality_check(const LoopCurve& geodesic, double k);
PowerFlowCheck power_flow_inequality_check(const FlowHistory& history, const LoopCurve& geodesic, double t, double k);

/// |d/dt Energy(c1_t) - d/dt Energy(c2_t)| with both curves pushed through
/// the flow from the stored time-t surface; one-sided second-order
/// differences with step h.
double variation_perturbation_gap(const FlowHistory& history, const LoopCurve& c1, const LoopCurve& c2, double t,
                                  double h = 1e-4);

/// Shrinking round cylinder of radius r0 (closed forms only).
struct CylinderSharpness {
  double width0 = 0.0;            // 2 pi r0^2
  double width_slope = 0.0;       // d/dt 2 pi r^2 = -4 pi
  double extinction = 0.0;        // r0^2 / 2
  double extinction_bound = 0.0;  // W(0) / 4 pi
  double energy_decay = 0.0;      // (V0 / pi) dV/dt for the cross-section
};

CylinderSharpness cylinder_sharpness(double r0);

}  // namespace sweepwidth
