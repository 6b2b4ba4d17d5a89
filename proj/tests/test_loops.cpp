#include "doctest.h"
#include "support.hpp"

#include "sweepwidth/curve_corpus.hpp"

#include <numbers>

using namespace sweepwidth;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kL = 24;
constexpr int kN = 2 * kL * kCellsPerInterval;

std::shared_ptr<const Surface> unit_sphere() { return std::make_shared<const Surface>(Surface::sphere(1.0)); }

std::shared_ptr<const Surface> scaled_sphere() {
  return std::make_shared<const Surface>(normalize_scaling(Surface::sphere(1.0)).surface);
}

// Equator traced at speed 3/2 on [0, pi) and 1/2 on [pi, 2 pi).
LoopCurve two_speed_equator(std::shared_ptr<const Surface> s) {
  std::vector<Vec3> pts(kN);
  for (int k = 0; k < kN; ++k) {
    const double x = 2.0 * kPi * k / kN;
    const double phi = x < kPi ? 1.5 * x : 1.5 * kPi + 0.5 * (x - kPi);
    pts[static_cast<std::size_t>(k)] = Vec3(std::cos(phi), std::sin(phi), 0.0);
  }
  return LoopCurve::from_grid(s, kL, std::move(pts));
}

}  // namespace

TEST_SUITE("loops") {
  TEST_CASE("w12 of constant curves") {
    const auto s = unit_sphere();
    const Vec3 p(1, 0, 0), q(0, 1, 0);
    const double d = w12_distance(LoopCurve::point_curve(s, kL, p), LoopCurve::point_curve(s, kL, q));
    CHECK(d == doctest::Approx(std::sqrt(2.0 * kPi) * (p - q).norm()).epsilon(1e-13));
  }

  TEST_CASE("w12 of a tilted equator") {
    const double R = 2.5;
    const auto s = std::make_shared<const Surface>(Surface::sphere(R));
    for (double theta : {1e-3, 0.01, 0.1}) {
      std::vector<Vec3> a(kN), b(kN);
      for (int k = 0; k < kN; ++k) {
        const double x = 2.0 * kPi * k / kN;
        a[static_cast<std::size_t>(k)] = R * Vec3(std::cos(x), std::sin(x), 0.0);
        b[static_cast<std::size_t>(k)] = R * Vec3(std::cos(x), std::sin(x) * std::cos(theta), std::sin(x) * std::sin(theta));
      }
      const double got = w12_distance(LoopCurve::from_grid(s, kL, a), LoopCurve::from_grid(s, kL, b));
      // Closed form of the same trapezoid / forward-difference sum.
      const double h = 2.0 * kPi / kN;
      const double factor = 2.0 * std::sin(h / 2.0) / h;
      const double discrete = std::sqrt(2.0 * (1.0 - std::cos(theta)) * R * R * kPi * (1.0 + factor * factor));
      CHECK(got == doctest::Approx(discrete).epsilon(1e-10));
      const double continuous = std::sqrt(4.0 * kPi * R * R * (1.0 - std::cos(theta)));
      CHECK(got == doctest::Approx(continuous).epsilon(1e-5));
    }
  }

  TEST_CASE("Cauchy-Schwarz between length and energy") {
    const auto s = scaled_sphere();
    CorpusOptions o;
    o.count = 40;
    for (const auto& c : random_curve_corpus(s, o, 11)) {
      CHECK(c.length() * c.length() <= 2.0 * kPi * c.energy() * (1.0 + 1e-14));
      CHECK(c.length() * c.length() == doctest::Approx(2.0 * kPi * c.energy()).epsilon(1e-9));
      CHECK(c.constant_speed(1e-6));
    }
    const auto uneven = perturbed_equator(s, kL, 2.0);
    CHECK(uneven.length() * uneven.length() < 2.0 * kPi * uneven.energy() * (1.0 - 1e-6));
    CHECK_FALSE(uneven.constant_speed(1e-6));
  }

  TEST_CASE("Wirtinger on band-limited functions") {
    auto eng = stream_engine(12, 0);
    std::normal_distribution<double> n;
    const int m = 2048;
    const double h = 2.0 * kPi / m;
    for (int trial = 0; trial < 200; ++trial) {
      double b[8];
      for (double& x : b) x = n(eng);
      double f2 = 0.0, g2 = 0.0;
      for (int k = 0; k <= m; ++k) {
        const double x = k * h;
        const double w = (k == 0 || k == m) ? 0.5 * h : h;
        double f = 0.0, g = 0.0;
        for (int j = 0; j < 8; ++j) {
          f += b[j] * std::sin((j + 1) * x / 2.0);
          g += b[j] * (j + 1) / 2.0 * std::cos((j + 1) * x / 2.0);
        }
        f2 += w * f * f;
        g2 += w * g * g;
      }
      CHECK(f2 <= 4.0 * g2 * (1.0 + 1e-12));
    }
  }

  TEST_CASE("constant-speed reparametrization") {
    const auto s = unit_sphere();
    const LoopCurve c = two_speed_equator(s);
    CHECK(c.energy() == doctest::Approx(2.5 * kPi).epsilon(1e-12));
    const LoopCurve r = reparametrize_constant_speed(c);
    CHECK(r.energy() == doctest::Approx(2.0 * kPi).epsilon(1e-10));
    CHECK(r.length() == doctest::Approx(2.0 * kPi).epsilon(1e-12));
    CHECK((r.evaluate(0.0) - c.evaluate(0.0)).norm() < 1e-14);
    CHECK(r.constant_speed(1e-10));
    const LoopCurve again = reparametrize_constant_speed(r);
    CHECK(w12_distance(r, again) < 1e-10);
    const LoopCurve pt = LoopCurve::point_curve(s, kL, Vec3(0, 0, 1));
    CHECK(reparametrize_constant_speed(pt).is_point());
    // Images are kept: every new knot lies on the old polygon's image.
    const LoopCurve moved = reparametrize_constant_speed(c, 1.0, 2.0);
    CHECK((moved.evaluate(2.0) - c.evaluate(1.0)).norm() < 1e-12);
  }

  TEST_CASE("linear replacement") {
    const auto s = scaled_sphere();
    const double R = s->sphere_radius();
    const LoopCurve eq = latitude_circle(s, kL, kPi / 2.0);
    CHECK(w12_distance(linear_replacement(eq, Parity::Even), eq) < 1e-9);

    // Wiggle supported inside the first even interval [x_0, x_2].
    std::vector<Vec3> pts(kN);
    const double end = 2.0 * kPi / kL;
    for (int k = 0; k < kN; ++k) {
      const double x = 2.0 * kPi * k / kN;
      const double bump = x < end ? 0.3 * std::pow(std::sin(kPi * x / end), 2) : 0.0;
      pts[static_cast<std::size_t>(k)] = s->project(Vec3(R * std::cos(x), R * std::sin(x), bump));
    }
    const LoopCurve wiggled = LoopCurve::from_grid(s, kL, pts);
    const LoopCurve fixed = linear_replacement(wiggled, Parity::Even);
    CHECK(fixed.energy() < wiggled.energy());
    CHECK(w12_distance(fixed, eq) < 1e-9);
    CHECK(w12_distance(linear_replacement(fixed, Parity::Even), fixed) < 1e-10);

    const LoopCurve odd = linear_replacement(wiggled, Parity::Odd);
    CHECK(odd.energy() <= wiggled.energy());
    CHECK(w12_distance(linear_replacement(odd, Parity::Odd), odd) < 1e-10);
    CHECK(linear_replacement(LoopCurve::point_curve(s, kL, Vec3(0, 0, R)), Parity::Even).is_point());
  }

  TEST_CASE("arc comparison with the minimizing geodesic") {
    for (const Surface& raw : {Surface::sphere(1.0), Surface::ellipsoid(2, 1, 1)}) {
      const Surface s = normalize_scaling(raw).surface;
      auto eng = stream_engine(13, 0);
      std::uniform_real_distribution<double> u(0.0, 1.0);
      int bad = 0, tested = 0;
      for (int i = 0; i < 200; ++i) {
        const double span = 2.0 * kPi / kL * (0.5 + 0.5 * u(eng));
        const Vec3 p = testing::random_surface_point(s, eng);
        const auto arc = testing::perturbed_arc(s, p, span, kL * (0.3 + 0.5 * u(eng)), 0.2 * u(eng),
                                                1 + static_cast<int>(4 * u(eng)), 64, eng);
        if (testing::max_cell_speed(arc, span) > kL) continue;
        ++tested;
        const auto r = compare_arc_with_geodesic(s, arc, span);
        if (!r.derivative_bound_holds() || !r.distance_bound_holds()) ++bad;
      }
      CHECK(tested > 150);
      CHECK(bad == 0);
    }
  }
}
