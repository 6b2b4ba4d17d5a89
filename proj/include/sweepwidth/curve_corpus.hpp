#pragma once

#include "sweepwidth/loop_curve.hpp"

#include <cstdint>
#include <memory>
#include <vector>

namespace sweepwidth {

/// Constant-speed latitude circle at polar angle `polar` (pi/2 = equator),
/// with knots on the grid of break budget L.
LoopCurve latitude_circle(std::shared_ptr<const Surface> sphere, int L, double polar, double phase = 0.0);

/// Equator plus a displacement of `amplitude` (ambient units) along the
/// meridian direction, shaped as sin(mode x), projected back to the surface.
/// Keeps the equator's parametrization (not constant speed).
LoopCurve perturbed_equator(std::shared_ptr<const Surface> sphere, int L, double amplitude, int mode = 3);

struct CorpusOptions {
  int count = 500;
  int L = 24;
  int band_limit = 8;
  double min_amplitude = 0.01;
  double max_amplitude = 0.3;
  // Polar offset from the equator, magnitude drawn from this range.
  double min_latitude = 0.03;
  double max_latitude = 0.04;
};

/// Fourier perturbations of latitude circles on a round sphere, each one
/// reparametrized to constant speed. Curve i only depends on (seed, i).
std::vector<LoopCurve> random_curve_corpus(std::shared_ptr<const Surface> sphere, const CorpusOptions& options,
                                           std::uint64_t seed);

}  // namespace sweepwidth
