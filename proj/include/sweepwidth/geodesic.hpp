#pragma once

#include "sweepwidth/surface.hpp"

#include <vector>

namespace sweepwidth {

/// Constant-speed geodesic between two surface points, densely sampled.
struct GeodesicSegment {
  Vec3 start;
  Vec3 end;
  std::vector<Vec3> samples;  // cells + 1 points, samples.front() == start
  double length = 0.0;
  double param_begin = 0.0;
  double param_end = 1.0;

  int cells() const { return static_cast<int>(samples.size()) - 1; }
  double speed() const { return length / (param_end - param_begin); }
};

struct GeodesicOptions {
  int cells = 32;
  double tolerance = 1e-8;
  int max_newton_iterations = 50;
};

/// Shortest constant-speed geodesic from p to q.
///
/// On the sphere this is the exact great-circle arc. Elsewhere it is the
/// minimizer of the discrete energy sum |p_{i+1} - p_i|^2 over on-surface
/// samples, found by Newton's method on the constrained stationarity system
/// (block tridiagonal, 4x4 blocks) seeded by the projected chord.
///
/// Throws GeometryError when the endpoints are farther apart than the
/// surface's convexity radius or when Newton fails to converge. p == q gives
/// a constant segment.
GeodesicSegment minimizing_geodesic(const Surface& surface, const Vec3& p, const Vec3& q,
                                    const GeodesicOptions& options = {});

/// Sample points only; the hot path used by curve replacement.
std::vector<Vec3> geodesic_points(const Surface& surface, const Vec3& p, const Vec3& q, int cells,
                                  double tolerance = 1e-8);

/// Largest tangential component of the discrete second difference along a
/// sample array, relative to the squared mean cell length. Zero for an exact
/// discrete geodesic.
double tangential_residual(const Surface& surface, const std::vector<Vec3>& samples);

}  // namespace sweepwidth
