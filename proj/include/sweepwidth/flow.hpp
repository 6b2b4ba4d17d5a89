#pragma once

#include "sweepwidth/loop_curve.hpp"

#include <limits>
#include <memory>
#include <string>
#include <vector>

namespace sweepwidth {

/// Dimension n of the evolving hypersurfaces (surfaces in R^3).
inline constexpr int kSurfaceDimension = 2;

/// Normal speed |H|^k inward; k = 1 is mean curvature flow.
struct FlowLaw {
  enum class Kind { MeanCurvature, PowerMeanCurvature };
  Kind kind = Kind::MeanCurvature;
  double k = 1.0;

  static FlowLaw mcf() { return {}; }
  static FlowLaw hk(double k);
  double power() const { return kind == Kind::MeanCurvature ? 1.0 : k; }
  std::string name() const;
};

/// Flowing surface at one time, in original units. Spheres evolve in closed
/// form; axisymmetric surfaces carry their staggered profile samples.
struct FlowState {
  double time = 0.0;
  std::shared_ptr<const Surface> surface;
  std::vector<double> profile;
  bool extinct = false;
  double extinction_time = std::numeric_limits<double>::quiet_NaN();
};

/// Initial state for a sphere or a surface of revolution.
FlowState initial_flow_state(const Surface& surface);

/// Largest explicit step for the profile scheme (infinite for spheres).
double stable_step(const FlowState& state, const FlowLaw& law);

/// Sphere: r^2 -> r^2 - 2 n dt exactly. Profile: one SSP-RK3 step of
///   rho_t = -H^k sqrt(rho^2 + rho_theta^2) / rho.
/// Throws when dt exceeds stable_step or convexity is lost. A step that
/// crosses extinction returns an extinct state carrying the crossing time.
FlowState mcf_step(const FlowState& state, double dt);
/// Same for normal speed H^k; sphere r^{k+1} -> r^{k+1} - (k+1) n^k dt.
/// k = 1 reproduces mcf_step exactly.
FlowState hk_step(const FlowState& state, double dt, double k);
FlowState flow_step(const FlowState& state, double dt, const FlowLaw& law);

/// Sphere radius under the law in closed form (NaN after extinction).
double sphere_radius_at(double r0, double t, const FlowLaw& law);
/// Closed-form sphere extinction time r0^{k+1} / ((k+1) n^k).
double sphere_extinction_time(double r0, const FlowLaw& law);

/// Accepted flow states from time 0, with point transport.
class FlowHistory {
 public:
  FlowHistory(const Surface& initial, FlowLaw law, double dt_max);

  const FlowLaw& law() const { return law_; }
  double dt_max() const { return dt_max_; }
  const std::vector<FlowState>& states() const { return states_; }
  const FlowState& current() const { return states_.back(); }

  /// Step forward so that a state lands exactly on t. Throws if t lies at
  /// or beyond extinction, or before the current time.
  const FlowState& advance_to(double t);
  /// Stored state at time t (t must be a time reached by advance_to).
  const FlowState& state_at(double t) const;

  /// Extinction time: closed form for spheres; for profiles the flow is run
  /// until the mean radius has dropped below 5% of its initial value and
  /// the remainder is the round-point time of a sphere of that radius.
  double extinction_time();

  /// Flow trajectory of one point from t0 to t1 (both stored times).
  Vec3 flow_point(const Vec3& p, double t0, double t1) const;
  /// Push every knot of c along its trajectory; parameters are kept.
  LoopCurve transport_curve(const LoopCurve& c, double t0, double t1) const;

 private:
  std::size_t index_of(double t) const;

  FlowLaw law_;
  double dt_max_;
  std::vector<FlowState> states_;
  double extinction_ = std::numeric_limits<double>::quiet_NaN();
};

}  // namespace sweepwidth
