#include "sweepwidth/first_variation.hpp"

#include "sweepwidth/birkhoff.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sweepwidth {

namespace {

constexpr double kPi = std::numbers::pi;

void require_geodesic(const LoopCurve& c) {
  if (c.is_point()) throw GeometryError("first variation needs a non-constant curve");
  if (!is_geodesic(c)) {
    throw GeometryError("curve is not a closed geodesic (fixed-point residual " +
                        std::to_string(fixed_point_residual(c)) + ")");
  }
}

// dV/dt = - sum w_k <kappa_k, |H_M|^k (-n)>.
double length_rate(const LoopCurve& c, const DiscreteCurvature& dc, double power) {
  const Surface& s = c.surface();
  double rate = 0.0;
  for (std::size_t k = 0; k < dc.vectors.size(); ++k) {
    const Vec3& p = c.points()[k];
    const Vec3 velocity = -std::pow(s.curvatures(p).mean(), power) * s.unit_normal(p);
    rate -= dc.dual_length[k] * dc.vectors[k].dot(velocity);
  }
  return rate;
}

LoopCurve on_surface(const FlowHistory& history, const LoopCurve& c, double t) {
  const auto& surface = history.state_at(t).surface;
  if (c.surface_ptr() == surface) return c;
  return LoopCurve(surface, c.L(), c.params(), c.points(), c.breaks());
}

}  // namespace

double DiscreteCurvature::total() const {
  double acc = 0.0;
  for (double a : turning) acc += a;
  return acc;
}

double DiscreteCurvature::squared_integral() const { return power_integral(2.0); }

double DiscreteCurvature::power_integral(double p) const {
  double acc = 0.0;
  for (std::size_t k = 0; k < turning.size(); ++k) {
    if (dual_length[k] > 0.0) acc += dual_length[k] * std::pow(turning[k] / dual_length[k], p);
  }
  return acc;
}

double DiscreteCurvature::length() const {
  double acc = 0.0;
  for (double w : dual_length) acc += w;
  return acc;
}

DiscreteCurvature discrete_curvature(const LoopCurve& c) {
  const auto& pts = c.points();
  const std::size_t n = pts.size();
  DiscreteCurvature dc;
  dc.turning.resize(n);
  dc.dual_length.resize(n);
  dc.vectors.resize(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Vec3 e0 = pts[k] - pts[(k + n - 1) % n];
    const Vec3 e1 = pts[(k + 1) % n] - pts[k];
    const double l0 = e0.norm(), l1 = e1.norm();
    dc.dual_length[k] = 0.5 * (l0 + l1);
    if (l0 == 0.0 || l1 == 0.0) {
      dc.turning[k] = 0.0;
      dc.vectors[k].setZero();
      continue;
    }
    dc.turning[k] = std::atan2(e0.cross(e1).norm(), e0.dot(e1));
    const Vec3 bend = e1 / l1 - e0 / l0;
    const double b = bend.norm();
    dc.vectors[k] = b > 0.0 ? Vec3(bend / b * (dc.turning[k] / dc.dual_length[k])) : Vec3::Zero();
  }
  return dc;
}

double total_curvature(const LoopCurve& c) {
  if (c.is_point()) throw GeometryError("total curvature of a zero-length curve is undefined");
  return discrete_curvature(c).total();
}

double planarity_residual(const LoopCurve& c) {
  if (c.is_point()) return 0.0;
  const auto& pts = c.points();
  Vec3 centroid = Vec3::Zero();
  for (const auto& p : pts) centroid += p;
  centroid /= static_cast<double>(pts.size());
  Mat3 cov = Mat3::Zero();
  for (const auto& p : pts) cov += (p - centroid) * (p - centroid).transpose();
  const Eigen::SelfAdjointEigenSolver<Mat3> eig(cov);
  const Vec3 normal = eig.eigenvectors().col(0);
  double worst = 0.0;
  for (const auto& p : pts) worst = std::max(worst, std::abs((p - centroid).dot(normal)));
  return worst / c.length();
}

bool FirstVariation::inequality_holds(double rel_tol) const {
  return dV_dt <= -int_H_sq + rel_tol * std::abs(int_H_sq);
}

FirstVariation first_variation_length(const LoopCurve& geodesic, const FlowLaw& law) {
  require_geodesic(geodesic);
  const DiscreteCurvature dc = discrete_curvature(geodesic);
  FirstVariation fv;
  fv.dV_dt = length_rate(geodesic, dc, law.power());
  fv.length = dc.length();
  fv.int_H = dc.total();
  fv.int_H_sq = dc.squared_integral();
  return fv;
}

FirstVariation first_variation_length(const FlowHistory& history, const LoopCurve& geodesic, double t) {
  return first_variation_length(on_surface(history, geodesic, t), history.law());
}

bool EnergyDecay::chain_holds(double rel_tol) const {
  auto le = [&](double a, double b) { return a <= b + rel_tol * std::max(std::abs(a), std::abs(b)); };
  return le(v0_dv, cauchy_schwarz) && le(cauchy_schwarz, fenchel) && le(fenchel, floor);
}

EnergyDecay energy_decay_estimate(const LoopCurve& geodesic) {
  const FirstVariation fv = first_variation_length(geodesic);
  EnergyDecay e;
  e.v0_dv = fv.length * fv.dV_dt;
  e.dE_dt = e.v0_dv / kPi;
  e.cauchy_schwarz = -fv.length * fv.int_H_sq;
  e.fenchel = -fv.int_H * fv.int_H;
  e.floor = -4.0 * kPi * kPi;
  return e;
}

EnergyDecay energy_decay_estimate(const FlowHistory& history, const LoopCurve& geodesic, double t) {
  return energy_decay_estimate(on_surface(history, geodesic, t));
}

bool PowerFlowCheck::holds(double rel_tol) const {
  auto le = [&](double a, double b) { return a <= b + rel_tol * std::max(std::abs(a), std::abs(b)); };
  return le(lhs, holder) && le(holder, fenchel) && le(fenchel, rhs);
}

PowerFlowCheck power_flow_inequality_check(const LoopCurve& geodesic, double k) {
  if (!(k > 0.0)) throw GeometryError("H^k flow needs k > 0");
  require_geodesic(geodesic);
  const DiscreteCurvature dc = discrete_curvature(geodesic);
  const double v0 = dc.length();
  PowerFlowCheck r;
  r.lhs = std::pow(v0, k) * length_rate(geodesic, dc, k);
  r.holder = -std::pow(v0, k) * dc.power_integral(k + 1.0);
  r.fenchel = -std::pow(dc.total(), k + 1.0);
  r.rhs = -std::pow(2.0 * kPi, k + 1.0);
  return r;
}

PowerFlowCheck power_flow_inequality_check(const FlowHistory& history, const LoopCurve& geodesic, double t,
                                           double k) {
  return power_flow_inequality_check(on_surface(history, geodesic, t), k);
}

double variation_perturbation_gap(const FlowHistory& history, const LoopCurve& c1, const LoopCurve& c2, double t,
                                  double h) {
  FlowHistory local(*history.state_at(t).surface, history.law(), history.dt_max());
  local.advance_to(h);
  local.advance_to(2.0 * h);
  auto rate = [&](const LoopCurve& c) {
    const LoopCurve c0 = on_surface(local, c, 0.0);
    const double e0 = c0.energy();
    const double e1 = local.transport_curve(c0, 0.0, h).energy();
    const double e2 = local.transport_curve(c0, 0.0, 2.0 * h).energy();
    return (-3.0 * e0 + 4.0 * e1 - e2) / (2.0 * h);
  };
  return std::abs(rate(c1) - rate(c2));
}

CylinderSharpness cylinder_sharpness(double r0) {
  if (!(r0 > 0.0)) throw GeometryError("cylinder radius must be positive");
  CylinderSharpness c;
  c.width0 = 2.0 * kPi * r0 * r0;
  // r(t)^2 = r0^2 - 2 t, so d/dt 2 pi r^2 = -4 pi.
  c.width_slope = 2.0 * kPi * -2.0;
  c.extinction = r0 * r0 / 2.0;
  c.extinction_bound = c.width0 / (4.0 * kPi);
  // Cross-section: |H_Sigma| = |H_M| = 1/r, so dV/dt = -2 pi r / r^2.
  const double v0 = 2.0 * kPi * r0;
  const double dV = -v0 * (1.0 / r0) * (1.0 / r0);
  c.energy_decay = v0 / kPi * dV;
  return c;
}

}  // namespace sweepwidth
