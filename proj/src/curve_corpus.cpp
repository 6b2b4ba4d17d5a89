#include "sweepwidth/curve_corpus.hpp"

#include "sweepwidth/rng.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace sweepwidth {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

Vec3 on_sphere(double radius, double polar, double azimuth) {
  return radius * Vec3(std::sin(polar) * std::cos(azimuth), std::sin(polar) * std::sin(azimuth), std::cos(polar));
}

}  // namespace

LoopCurve latitude_circle(std::shared_ptr<const Surface> sphere, int L, double polar, double phase) {
  const double r = sphere->sphere_radius();
  const int n = 2 * L * kCellsPerInterval;
  std::vector<Vec3> pts(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) pts[static_cast<std::size_t>(k)] = on_sphere(r, polar, phase + kTwoPi * k / n);
  return LoopCurve::from_grid(std::move(sphere), L, std::move(pts));
}

LoopCurve perturbed_equator(std::shared_ptr<const Surface> sphere, int L, double amplitude, int mode) {
  const double r = sphere->sphere_radius();
  const int n = 2 * L * kCellsPerInterval;
  std::vector<Vec3> pts(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double x = kTwoPi * k / n;
    const Vec3 p = on_sphere(r, std::numbers::pi / 2, x);
    pts[static_cast<std::size_t>(k)] = sphere->project(p + Vec3(0.0, 0.0, amplitude * std::sin(mode * x)));
  }
  return LoopCurve::from_grid(std::move(sphere), L, std::move(pts));
}

std::vector<LoopCurve> random_curve_corpus(std::shared_ptr<const Surface> sphere, const CorpusOptions& options,
                                           std::uint64_t seed) {
  const double r = sphere->sphere_radius();
  const int n = 2 * options.L * kCellsPerInterval;
  const auto modes = static_cast<std::size_t>(options.band_limit);
  std::vector<LoopCurve> out;
  out.reserve(static_cast<std::size_t>(options.count));
  for (int i = 0; i < options.count; ++i) {
    auto eng = stream_engine(seed, static_cast<std::uint64_t>(i));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double lat = options.min_latitude + (options.max_latitude - options.min_latitude) * unit(eng);
    const double polar = std::numbers::pi / 2 + (unit(eng) < 0.5 ? -lat : lat);
    const double phase = kTwoPi * unit(eng);
    const double amplitude = options.min_amplitude + (options.max_amplitude - options.min_amplitude) * unit(eng);
    std::normal_distribution<double> normal;
    std::vector<double> ca(modes), sa(modes), cb(modes), sb(modes);
    for (std::size_t m = 0; m < modes; ++m) {
      ca[m] = normal(eng);
      sa[m] = normal(eng);
      cb[m] = normal(eng);
      sb[m] = normal(eng);
    }
    // Meridian and along-curve displacement profiles, normalized to unit peak.
    std::vector<double> meridian(static_cast<std::size_t>(n)), along(static_cast<std::size_t>(n));
    double peak = 0.0;
    for (int k = 0; k < n; ++k) {
      const double x = kTwoPi * k / n;
      double u = 0.0, v = 0.0;
      for (std::size_t m = 0; m < modes; ++m) {
        const double f = static_cast<double>(m + 1);
        u += ca[m] * std::cos(f * x) + sa[m] * std::sin(f * x);
        v += cb[m] * std::cos(f * x) + sb[m] * std::sin(f * x);
      }
      meridian[static_cast<std::size_t>(k)] = u;
      along[static_cast<std::size_t>(k)] = 0.5 * v;
      peak = std::max({peak, std::abs(u), std::abs(0.5 * v)});
    }
    std::vector<Vec3> pts(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
      const double phi = phase + kTwoPi * k / n;
      const auto uk = static_cast<std::size_t>(k);
      const Vec3 p = on_sphere(r, polar, phi);
      const Vec3 e_polar(std::cos(polar) * std::cos(phi), std::cos(polar) * std::sin(phi), -std::sin(polar));
      const Vec3 e_azimuth(-std::sin(phi), std::cos(phi), 0.0);
      const double scale = amplitude / peak;
      pts[uk] = sphere->project(p + scale * (meridian[uk] * e_polar + along[uk] * e_azimuth));
    }
    out.push_back(reparametrize_constant_speed(LoopCurve::from_grid(sphere, options.L, std::move(pts))));
  }
  return out;
}

}  // namespace sweepwidth
