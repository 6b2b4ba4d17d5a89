#include "sweepwidth/geodesic.hpp"

#include <Eigen/StdVector>

#include <cmath>
#include <sstream>

namespace sweepwidth {

namespace {

using Mat4 = Eigen::Matrix4d;
using Vec4 = Eigen::Vector4d;

std::vector<Vec3> newton_geodesic(const Surface& surface, const Vec3& p, const Vec3& q, int cells, double tolerance,
                                  int max_iterations) {
  const int m = cells - 1;  // interior unknowns
  std::vector<Vec3> x(static_cast<std::size_t>(cells + 1));
  x.front() = p;
  x.back() = q;
  for (int i = 1; i < cells; ++i) {
    const double f = static_cast<double>(i) / cells;
    x[static_cast<std::size_t>(i)] = surface.project((1.0 - f) * p + f * q);
  }
  if (m <= 0) return x;

  std::vector<double> lambda(static_cast<std::size_t>(m));
  std::vector<Vec3> grads(static_cast<std::size_t>(m));
  for (int i = 0; i < m; ++i) {
    const auto k = static_cast<std::size_t>(i + 1);
    const Vec3 g = surface.gradient(x[k]);
    const Vec3 lap = 2.0 * (2.0 * x[k] - x[k - 1] - x[k + 1]);
    lambda[static_cast<std::size_t>(i)] = -lap.dot(g) / g.squaredNorm();
  }

  const double length_scale = (q - p).norm() + 1e-300;
  std::vector<Mat4, Eigen::aligned_allocator<Mat4>> dinv(static_cast<std::size_t>(m));
  std::vector<Vec4, Eigen::aligned_allocator<Vec4>> rhs(static_cast<std::size_t>(m));
  Mat4 coupling = Mat4::Zero();
  coupling.topLeftCorner<3, 3>() = -2.0 * Mat3::Identity();

  double last_step = 0.0;
  double residual = 0.0;
  for (int iter = 0; iter < max_iterations; ++iter) {
    residual = 0.0;
    for (int i = 0; i < m; ++i) {
      const auto k = static_cast<std::size_t>(i + 1);
      const auto u = static_cast<std::size_t>(i);
      const Vec3 g = surface.gradient(x[k]);
      const Mat3 h = surface.hessian(x[k]);
      Vec4 r;
      r.head<3>() = 2.0 * (2.0 * x[k] - x[k - 1] - x[k + 1]) + lambda[u] * g;
      r(3) = surface.implicit(x[k]);
      residual = std::max(residual, r.head<3>().norm() / length_scale + std::abs(r(3)));
      Mat4 d = Mat4::Zero();
      d.topLeftCorner<3, 3>() = 4.0 * Mat3::Identity() + lambda[u] * h;
      d.block<3, 1>(0, 3) = g;
      d.block<1, 3>(3, 0) = g.transpose();
      // Forward elimination of the block tridiagonal system J dx = -r.
      Vec4 b = -r;
      if (i > 0) {
        d -= coupling * dinv[u - 1] * coupling;
        b -= coupling * dinv[u - 1] * rhs[u - 1];
      }
      dinv[u] = d.inverse();
      rhs[u] = b;
    }
    std::vector<Vec4, Eigen::aligned_allocator<Vec4>> delta(static_cast<std::size_t>(m));
    delta[static_cast<std::size_t>(m - 1)] = dinv[static_cast<std::size_t>(m - 1)] * rhs[static_cast<std::size_t>(m - 1)];
    for (int i = m - 2; i >= 0; --i) {
      const auto u = static_cast<std::size_t>(i);
      delta[u] = dinv[u] * (rhs[u] - coupling * delta[u + 1]);
    }
    last_step = 0.0;
    for (int i = 0; i < m; ++i) {
      const auto u = static_cast<std::size_t>(i);
      x[u + 1] += delta[u].head<3>();
      lambda[u] += delta[u](3);
      last_step = std::max(last_step, delta[u].head<3>().norm());
    }
    if (!std::isfinite(last_step)) break;
    if (last_step <= 1e-13 * length_scale + 1e-15) {
      return x;
    }
  }
  if (std::isfinite(last_step) && last_step <= tolerance * length_scale) return x;
  std::ostringstream msg;
  msg << "geodesic solver did not converge (residual " << residual << ", last step " << last_step << ")";
  throw GeometryError(msg.str());
}

}  // namespace

std::vector<Vec3> geodesic_points(const Surface& surface, const Vec3& p, const Vec3& q, int cells, double tolerance) {
  if (cells < 1) throw GeometryError("geodesic needs at least one cell");
  std::vector<Vec3> pts(static_cast<std::size_t>(cells + 1));
  if ((p - q).norm() == 0.0) {
    for (auto& x : pts) x = p;
    return pts;
  }
  const double d = surface.short_distance(p, q);
  if (d > surface.convexity_radius()) {
    std::ostringstream msg;
    msg << "geodesic endpoints " << d << " apart exceed the convexity radius " << surface.convexity_radius();
    throw GeometryError(msg.str());
  }
  if (surface.kind() == SurfaceKind::Sphere) {
    for (int i = 0; i <= cells; ++i) {
      pts[static_cast<std::size_t>(i)] = surface.interpolate(p, q, static_cast<double>(i) / cells);
    }
    pts.front() = p;
    pts.back() = q;
    return pts;
  }
  return newton_geodesic(surface, p, q, cells, tolerance, 50);
}

GeodesicSegment minimizing_geodesic(const Surface& surface, const Vec3& p, const Vec3& q,
                                    const GeodesicOptions& options) {
  GeodesicSegment seg;
  seg.start = p;
  seg.end = q;
  seg.samples = geodesic_points(surface, p, q, options.cells, options.tolerance);
  for (std::size_t i = 0; i + 1 < seg.samples.size(); ++i) {
    seg.length += surface.short_distance(seg.samples[i], seg.samples[i + 1]);
  }
  return seg;
}

double tangential_residual(const Surface& surface, const std::vector<Vec3>& samples) {
  if (samples.size() < 3) return 0.0;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) total += (samples[i + 1] - samples[i]).norm();
  const double h = total / static_cast<double>(samples.size() - 1);
  if (h == 0.0) return 0.0;
  double worst = 0.0;
  for (std::size_t i = 1; i + 1 < samples.size(); ++i) {
    const Vec3 acc = samples[i - 1] - 2.0 * samples[i] + samples[i + 1];
    const Vec3 n = surface.unit_normal(samples[i]);
    worst = std::max(worst, (acc - acc.dot(n) * n).norm());
  }
  return worst / (h * h);
}

}  // namespace sweepwidth
