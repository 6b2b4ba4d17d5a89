#include "sweepwidth/geodesic_orbit.hpp"

#include "sweepwidth/birkhoff.hpp"

#include <Eigen/Geometry>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>

namespace sweepwidth {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Residuals whose squared norm is the discrete w12 distance squared.
struct CircleResidual {
  using Scalar = double;
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

  const std::vector<Vec3>* target;
  Mat3 frame;  // columns e1, e2, normal
  double radius;

  int inputs() const { return 3; }
  int values() const { return static_cast<int>(6 * target->size()); }

  std::vector<Vec3> circle(const Eigen::VectorXd& w) const {
    const double angle = w.norm();
    Mat3 rot = Mat3::Identity();
    if (angle > 0.0) rot = Eigen::AngleAxisd(angle, w / angle).toRotationMatrix();
    const Mat3 f = rot * frame;
    const std::size_t n = target->size();
    std::vector<Vec3> g(n);
    for (std::size_t k = 0; k < n; ++k) {
      const double x = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
      g[k] = radius * (std::cos(x) * f.col(0) + std::sin(x) * f.col(1));
    }
    return g;
  }

  int operator()(const Eigen::VectorXd& w, Eigen::VectorXd& out) const {
    const auto g = circle(w);
    const std::size_t n = g.size();
    const double h = kTwoPi / static_cast<double>(n);
    const double sh = std::sqrt(h);
    for (std::size_t k = 0; k < n; ++k) {
      const std::size_t j = (k + 1) % n;
      const Vec3 f = (*target)[k] - g[k];
      const Vec3 df = ((*target)[j] - g[j]) - f;
      out.segment<3>(static_cast<Eigen::Index>(6 * k)) = sh * f;
      out.segment<3>(static_cast<Eigen::Index>(6 * k + 3)) = df / sh;
    }
    return 0;
  }
};

// Constant-speed parametrization of the ellipse a cos(phi) u + b sin(phi) v.
class EllipseTable {
 public:
  EllipseTable(double a, double b) : a_(a), b_(b) {
    constexpr int kFine = 1 << 14;
    std::vector<double> phi(kFine + 1), s(kFine + 1, 0.0);
    for (int i = 0; i <= kFine; ++i) phi[static_cast<std::size_t>(i)] = kTwoPi * i / kFine;
    for (int i = 0; i < kFine; ++i) {
      // Midpoint rule on the speed sqrt(a^2 sin^2 + b^2 cos^2).
      const double m = 0.5 * (phi[static_cast<std::size_t>(i)] + phi[static_cast<std::size_t>(i) + 1]);
      const double speed = std::hypot(a * std::sin(m), b * std::cos(m));
      s[static_cast<std::size_t>(i) + 1] = s[static_cast<std::size_t>(i)] + speed * kTwoPi / kFine;
    }
    total_ = s.back();
    inverse_.resize(kFine + 1);
    std::size_t j = 0;
    for (int i = 0; i <= kFine; ++i) {
      const double target = total_ * i / kFine;
      while (j + 1 < s.size() - 1 && s[j + 1] < target) ++j;
      const double f = (target - s[j]) / (s[j + 1] - s[j]);
      inverse_[static_cast<std::size_t>(i)] = phi[j] + f * (phi[j + 1] - phi[j]);
    }
  }

  // Eccentric angle at normalized arclength parameter x in [0, 2 pi).
  double angle(double x) const {
    double u = std::fmod(x, kTwoPi);
    if (u < 0.0) u += kTwoPi;
    const double pos = u / kTwoPi * static_cast<double>(inverse_.size() - 1);
    const auto i = std::min(static_cast<std::size_t>(pos), inverse_.size() - 2);
    const double f = pos - static_cast<double>(i);
    return inverse_[i] + f * (inverse_[i + 1] - inverse_[i]);
  }
  double a() const { return a_; }
  double b() const { return b_; }

 private:
  double a_, b_, total_ = 0.0;
  std::vector<double> inverse_;
};

}  // namespace

OrbitFit great_circle_orbit(const LoopCurve& c) {
  if (c.surface().kind() != SurfaceKind::Sphere) throw GeometryError("great-circle orbit needs a round sphere");
  const auto target = c.sample();
  const std::size_t n = target.size();
  Vec3 a = Vec3::Zero(), b = Vec3::Zero();
  for (std::size_t k = 0; k < n; ++k) {
    const double x = kTwoPi * static_cast<double>(k) / static_cast<double>(n);
    a += std::cos(x) * target[k];
    b += std::sin(x) * target[k];
  }
  Vec3 e1 = a.norm() > 0.0 ? Vec3(a.normalized()) : Vec3::UnitX();
  Vec3 e2 = b - b.dot(e1) * e1;
  if (e2.norm() < 1e-12 * (1.0 + b.norm())) e2 = e1.unitOrthogonal();
  e2.normalize();
  CircleResidual residual{&target, Mat3::Zero(), c.surface().sphere_radius()};
  residual.frame.col(0) = e1;
  residual.frame.col(1) = e2;
  residual.frame.col(2) = e1.cross(e2);

  Eigen::NumericalDiff<CircleResidual> diff(residual);
  Eigen::LevenbergMarquardt<Eigen::NumericalDiff<CircleResidual>> lm(diff);
  Eigen::VectorXd w = Eigen::VectorXd::Zero(3);
  lm.parameters.xtol = 1e-12;
  lm.parameters.ftol = 1e-14;
  lm.minimize(w);

  OrbitFit fit;
  fit.nearest = residual.circle(w);
  fit.distance = w12_distance(target, fit.nearest);
  return fit;
}

OrbitFit principal_ellipse_orbit(const LoopCurve& c) {
  if (c.surface().kind() != SurfaceKind::Ellipsoid) throw GeometryError("principal-ellipse orbit needs an ellipsoid");
  const Vec3 axes = c.surface().ellipsoid_axes();
  const auto target = c.sample();
  const std::size_t n = target.size();
  const double h = kTwoPi / static_cast<double>(n);

  OrbitFit best;
  best.distance = std::numeric_limits<double>::infinity();
  const std::array<std::pair<int, int>, 3> planes{{{0, 1}, {0, 2}, {1, 2}}};
  for (const auto& [i, j] : planes) {
    const EllipseTable table(axes(i), axes(j));
    for (const double orient : {1.0, -1.0}) {
      auto curve = [&](double shift) {
        std::vector<Vec3> g(n);
        for (std::size_t k = 0; k < n; ++k) {
          const double phi = table.angle(orient * static_cast<double>(k) * h + shift);
          Vec3 p = Vec3::Zero();
          p(i) = table.a() * std::cos(phi);
          p(j) = table.b() * std::sin(phi);
          g[k] = p;
        }
        return g;
      };
      auto dist = [&](double shift) { return w12_distance(target, curve(shift)); };
      constexpr int kCoarse = 256;
      double best_shift = 0.0, best_d = std::numeric_limits<double>::infinity();
      for (int s = 0; s < kCoarse; ++s) {
        const double shift = kTwoPi * s / kCoarse;
        const double d = dist(shift);
        if (d < best_d) {
          best_d = d;
          best_shift = shift;
        }
      }
      // Golden-section refinement inside the winning coarse bracket.
      const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
      double lo = best_shift - kTwoPi / kCoarse, hi = best_shift + kTwoPi / kCoarse;
      double x1 = hi - gr * (hi - lo), x2 = lo + gr * (hi - lo);
      double f1 = dist(x1), f2 = dist(x2);
      for (int it = 0; it < 60; ++it) {
        if (f1 < f2) {
          hi = x2;
          x2 = x1;
          f2 = f1;
          x1 = hi - gr * (hi - lo);
          f1 = dist(x1);
        } else {
          lo = x1;
          x1 = x2;
          f1 = f2;
          x2 = lo + gr * (hi - lo);
          f2 = dist(x2);
        }
      }
      const double shift = f1 < f2 ? x1 : x2;
      const double d = std::min({f1, f2, best_d});
      if (d < best.distance) {
        best.distance = d;
        best.nearest = curve(d == best_d ? best_shift : shift);
      }
    }
  }
  return best;
}

double distance_to_geodesic_set(const LoopCurve& c) {
  switch (c.surface().kind()) {
    case SurfaceKind::Sphere:
      return great_circle_orbit(c).distance;
    case SurfaceKind::Ellipsoid:
      return principal_ellipse_orbit(c).distance;
    case SurfaceKind::Axisymmetric:
      break;
  }
  return w12_distance(c, psi_curve(c));
}

}  // namespace sweepwidth
