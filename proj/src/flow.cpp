#include "sweepwidth/flow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace sweepwidth {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kProfileSamples = 64;
constexpr double kCourant = 0.2;

double theta_at(std::size_t j, std::size_t n) { return (static_cast<double>(j) + 0.5) * kPi / static_cast<double>(n); }

struct ProfileTerms {
  double rho, d1, speed, H;
};

// Finite differences on the staggered grid; the poles reflect evenly.
ProfileTerms profile_terms(const std::vector<double>& r, std::size_t j) {
  const std::size_t n = r.size();
  const double h = kPi / static_cast<double>(n);
  const double rm = j == 0 ? r[0] : r[j - 1];
  const double rp = j + 1 == n ? r[n - 1] : r[j + 1];
  const double rho = r[j];
  const double d1 = (rp - rm) / (2.0 * h);
  const double d2 = (rp - 2.0 * rho + rm) / (h * h);
  const double th = theta_at(j, n);
  const double s = std::hypot(rho, d1);
  const double k_meridian = (rho * rho + 2.0 * d1 * d1 - rho * d2) / (s * s * s);
  const double k_parallel = (rho * std::sin(th) - d1 * std::cos(th)) / (rho * std::sin(th) * s);
  return {rho, d1, s, k_meridian + k_parallel};
}

std::vector<double> profile_rhs(const std::vector<double>& r, double power) {
  std::vector<double> out(r.size());
  for (std::size_t j = 0; j < r.size(); ++j) {
    const auto t = profile_terms(r, j);
    out[j] = -std::pow(t.H, power) * t.speed / t.rho;
  }
  return out;
}

double profile_stable_step(const std::vector<double>& r, double power) {
  const double h = kPi / static_cast<double>(r.size());
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < r.size(); ++j) {
    const auto t = profile_terms(r, j);
    const double diffusion = power * std::pow(std::max(t.H, 1e-300), power - 1.0) / (t.speed * t.speed);
    best = std::min(best, kCourant * h * h / diffusion);
  }
  return best;
}

bool positive(const std::vector<double>& r) {
  return std::all_of(r.begin(), r.end(), [](double x) { return x > 0.0 && std::isfinite(x); });
}

// SSP-RK3; returns false when a stage leaves the positive cone.
bool rk3(std::vector<double>& r, double dt, double power) {
  const std::size_t n = r.size();
  std::vector<double> u1(n), u2(n);
  auto f = profile_rhs(r, power);
  for (std::size_t j = 0; j < n; ++j) u1[j] = r[j] + dt * f[j];
  if (!positive(u1)) return false;
  f = profile_rhs(u1, power);
  for (std::size_t j = 0; j < n; ++j) u2[j] = 0.75 * r[j] + 0.25 * (u1[j] + dt * f[j]);
  if (!positive(u2)) return false;
  f = profile_rhs(u2, power);
  for (std::size_t j = 0; j < n; ++j) r[j] = r[j] / 3.0 + 2.0 / 3.0 * (u2[j] + dt * f[j]);
  return positive(r);
}

double mean(const std::vector<double>& r) {
  double acc = 0.0;
  for (double x : r) acc += x;
  return acc / static_cast<double>(r.size());
}

double round_point_time(double radius, double power) {
  return std::pow(radius, power + 1.0) / ((power + 1.0) * std::pow(kSurfaceDimension, power));
}

FlowState sphere_step(const FlowState& state, double dt, double power, bool mean_curvature) {
  FlowState next = state;
  const double r = state.surface->sphere_radius();
  const double n = kSurfaceDimension;
  if (mean_curvature) {
    const double r2 = r * r - 2.0 * n * dt;
    if (r2 <= 0.0) {
      next.extinct = true;
      next.extinction_time = state.time + r * r / (2.0 * n);
      return next;
    }
    next.surface = std::make_shared<const Surface>(Surface::sphere(std::sqrt(r2)));
  } else {
    const double q = std::pow(r, power + 1.0) - (power + 1.0) * std::pow(n, power) * dt;
    if (q <= 0.0) {
      next.extinct = true;
      next.extinction_time = state.time + round_point_time(r, power);
      return next;
    }
    next.surface = std::make_shared<const Surface>(Surface::sphere(std::pow(q, 1.0 / (power + 1.0))));
  }
  next.time = state.time + dt;
  return next;
}

FlowState profile_step(const FlowState& state, double dt, double power) {
  const double limit = profile_stable_step(state.profile, power);
  if (dt > limit * (1.0 + 1e-12)) {
    std::ostringstream msg;
    msg << "time step " << dt << " exceeds the stability bound " << limit;
    throw GeometryError(msg.str());
  }
  FlowState next = state;
  if (!rk3(next.profile, dt, power)) {
    next.extinct = true;
    next.extinction_time = state.time + round_point_time(mean(state.profile), power);
    return next;
  }
  next.surface = std::make_shared<const Surface>(Surface::axisymmetric(next.profile));
  if (!(next.surface->curvature_bounds().min_principal_curvature > 0.0)) {
    throw GeometryError("profile lost strict convexity at t = " + std::to_string(state.time + dt));
  }
  next.time = state.time + dt;
  return next;
}

FlowState step(const FlowState& state, double dt, double power, bool mean_curvature) {
  if (!(dt >= 0.0)) throw GeometryError("time step must be non-negative");
  if (state.extinct) throw GeometryError("flow already extinct");
  if (dt == 0.0) return state;
  if (state.surface->kind() == SurfaceKind::Sphere) return sphere_step(state, dt, power, mean_curvature);
  return profile_step(state, dt, power);
}

}  // namespace

FlowLaw FlowLaw::hk(double k) {
  if (!(k > 0.0)) throw GeometryError("H^k flow needs k > 0");
  return {Kind::PowerMeanCurvature, k};
}

std::string FlowLaw::name() const { return kind == Kind::MeanCurvature ? "mcf" : "hk"; }

FlowState initial_flow_state(const Surface& surface) {
  FlowState s;
  switch (surface.kind()) {
    case SurfaceKind::Sphere:
      s.surface = std::make_shared<const Surface>(surface);
      return s;
    case SurfaceKind::Ellipsoid: {
      const Vec3 a = surface.ellipsoid_axes();
      if (a.x() == a.y() && a.y() == a.z()) return initial_flow_state(Surface::sphere(a.x()));
      if (a.x() == a.y()) return initial_flow_state(Surface::axisymmetric_from_ellipsoid(a.z(), a.x(), kProfileSamples));
      if (a.y() == a.z()) return initial_flow_state(Surface::axisymmetric_from_ellipsoid(a.x(), a.y(), kProfileSamples));
      if (a.x() == a.z()) return initial_flow_state(Surface::axisymmetric_from_ellipsoid(a.y(), a.x(), kProfileSamples));
      throw GeometryError("flows support spheres and surfaces of revolution only");
    }
    case SurfaceKind::Axisymmetric:
      break;
  }
  s.profile.resize(kProfileSamples);
  for (std::size_t j = 0; j < s.profile.size(); ++j) s.profile[j] = surface.profile(theta_at(j, s.profile.size())).rho;
  s.surface = std::make_shared<const Surface>(Surface::axisymmetric(s.profile));
  return s;
}

double stable_step(const FlowState& state, const FlowLaw& law) {
  if (state.surface->kind() == SurfaceKind::Sphere) return std::numeric_limits<double>::infinity();
  return profile_stable_step(state.profile, law.power());
}

FlowState mcf_step(const FlowState& state, double dt) { return step(state, dt, 1.0, true); }

FlowState hk_step(const FlowState& state, double dt, double k) {
  if (!(k > 0.0)) throw GeometryError("H^k flow needs k > 0");
  if (k == 1.0) return mcf_step(state, dt);
  return step(state, dt, k, false);
}

FlowState flow_step(const FlowState& state, double dt, const FlowLaw& law) {
  return law.kind == FlowLaw::Kind::MeanCurvature ? mcf_step(state, dt) : hk_step(state, dt, law.k);
}

double sphere_radius_at(double r0, double t, const FlowLaw& law) {
  const double k = law.power();
  const double q = std::pow(r0, k + 1.0) - (k + 1.0) * std::pow(kSurfaceDimension, k) * t;
  if (q <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  return std::pow(q, 1.0 / (k + 1.0));
}

double sphere_extinction_time(double r0, const FlowLaw& law) { return round_point_time(r0, law.power()); }

FlowHistory::FlowHistory(const Surface& initial, FlowLaw law, double dt_max) : law_(law), dt_max_(dt_max) {
  if (!(dt_max > 0.0)) throw GeometryError("dt_max must be positive");
  states_.push_back(initial_flow_state(initial));
}

const FlowState& FlowHistory::advance_to(double t) {
  if (t < current().time) throw GeometryError("flow history only advances forward");
  while (current().time < t) {
    const FlowState& cur = current();
    const double remaining = t - cur.time;
    double dt = std::min({dt_max_, 0.999 * stable_step(cur, law_), remaining});
    if (remaining - dt < 1e-12 * std::max(1.0, t)) dt = remaining;
    FlowState next = flow_step(cur, dt, law_);
    if (next.extinct) {
      extinction_ = next.extinction_time;
      std::ostringstream msg;
      msg << "time " << t << " is at or beyond extinction (about " << next.extinction_time << ")";
      throw GeometryError(msg.str());
    }
    if (dt == remaining) next.time = t;
    states_.push_back(std::move(next));
  }
  return current();
}

std::size_t FlowHistory::index_of(double t) const {
  for (std::size_t i = 0; i < states_.size(); ++i) {
    if (std::abs(states_[i].time - t) <= 1e-12 * std::max(1.0, std::abs(t))) return i;
  }
  std::ostringstream msg;
  msg << "time " << t << " is not a stored flow time";
  throw GeometryError(msg.str());
}

const FlowState& FlowHistory::state_at(double t) const { return states_[index_of(t)]; }

double FlowHistory::extinction_time() {
  const FlowState& first = states_.front();
  const double power = law_.power();
  if (first.surface->kind() == SurfaceKind::Sphere) return round_point_time(first.surface->sphere_radius(), power);
  std::vector<double> r = current().profile;
  double t = current().time;
  const double target = 0.05 * mean(first.profile);
  while (mean(r) > target) {
    const double dt = 0.999 * profile_stable_step(r, power);
    std::vector<double> trial = r;
    if (!rk3(trial, dt, power)) break;
    r = std::move(trial);
    t += dt;
  }
  extinction_ = t + round_point_time(mean(r), power);
  return extinction_;
}

Vec3 FlowHistory::flow_point(const Vec3& p, double t0, double t1) const {
  if (t1 < t0) throw GeometryError("transport runs forward in time only");
  const std::size_t i0 = index_of(t0);
  const std::size_t i1 = index_of(t1);
  const double power = law_.power();
  Vec3 x = p;
  for (std::size_t i = i0; i < i1; ++i) {
    const Surface& s = *states_[i].surface;
    const double dt = states_[i + 1].time - states_[i].time;
    const double H = s.curvatures(x).mean();
    x = states_[i + 1].surface->project(x - dt * std::pow(H, power) * s.unit_normal(x));
  }
  return x;
}

LoopCurve FlowHistory::transport_curve(const LoopCurve& c, double t0, double t1) const {
  std::vector<Vec3> pts;
  pts.reserve(c.knot_count());
  for (const auto& p : c.points()) pts.push_back(flow_point(p, t0, t1));
  return LoopCurve(states_[index_of(t1)].surface, c.L(), c.params(), std::move(pts), c.breaks());
}

}  // namespace sweepwidth
