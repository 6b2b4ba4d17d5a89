#pragma once

#include "sweepwidth/loop_curve.hpp"

namespace sweepwidth {

/// Nearest element of a known family of closed geodesics.
struct OrbitFit {
  double distance = 0.0;
  std::vector<Vec3> nearest;  // samples of the fitted geodesic on the grid
};

/// W12 distance to the set of constant-speed great circles (any plane,
/// phase and orientation) of a round sphere. Levenberg-Marquardt over the
/// rotation group, started from the first Fourier mode of the curve.
OrbitFit great_circle_orbit(const LoopCurve& c);

/// W12 distance to the three principal ellipses of an ellipsoid, each at
/// constant speed, minimized over phase and orientation.
OrbitFit principal_ellipse_orbit(const LoopCurve& c);

/// dist(c, G) surrogate: orbit distance on spheres and ellipsoids, Psi
/// fixed-point residual w12(c, Psi(c)) elsewhere.
double distance_to_geodesic_set(const LoopCurve& c);

}  // namespace sweepwidth
