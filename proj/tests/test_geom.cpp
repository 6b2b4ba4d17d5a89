#include "doctest.h"
#include "support.hpp"

#include "sweepwidth/geodesic.hpp"

#include <numbers>

using namespace sweepwidth;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_SUITE("geom") {
  TEST_CASE("projection examples") {
    const Surface s = Surface::sphere(2.0);
    CHECK((s.project(Vec3(4, 0, 0)) - Vec3(2, 0, 0)).norm() < 1e-14);
    const Vec3 p = s.radial_project(Vec3(1, 2, 3));
    CHECK((s.project(p) - p).norm() < 1e-14);
    const Surface e = Surface::ellipsoid(2, 1, 1);
    CHECK((e.project(Vec3(3, 0, 0)) - Vec3(2, 0, 0)).norm() < 1e-12);
    auto eng = stream_engine(1, 0);
    for (int i = 0; i < 50; ++i) {
      const Vec3 q = testing::random_surface_point(e, eng);
      CHECK((e.project(q) - q).norm() < 1e-12);
      CHECK(std::abs(e.implicit(q)) < 1e-12);
    }
  }

  TEST_CASE("invalid parameters") {
    CHECK_THROWS_WITH_AS(Surface::sphere(-1.0), "radius must be positive", GeometryError);
    CHECK_THROWS_AS(Surface::ellipsoid(1, 0, 1), GeometryError);
    CHECK_THROWS_AS(Surface::axisymmetric({1.0, -1.0, 1.0, 1.0}), GeometryError);
  }

  TEST_CASE("second fundamental form norm") {
    const double R = 3.0;
    const Surface s = Surface::sphere(R);
    CHECK(second_fundamental_form_norm(s, Vec3(0, 0, R)) == doctest::Approx(std::sqrt(2.0) / R).epsilon(1e-14));
    const Surface edge = Surface::sphere(16.0 * std::sqrt(2.0));
    CHECK(second_fundamental_form_norm(edge, Vec3(16.0 * std::sqrt(2.0), 0, 0)) == doctest::Approx(1.0 / 16.0));
    const double a = 2.0, b = 1.0;
    const Surface e = Surface::ellipsoid(a, b, b);
    CHECK(second_fundamental_form_norm(e, Vec3(a, 0, 0)) == doctest::Approx(std::sqrt(2.0) * a / (b * b)));
  }

  TEST_CASE("normal component") {
    const double R = 2.0;
    const Surface s = Surface::sphere(R);
    const Vec3 p(R, 0, 0);
    CHECK((normal_component(s, p, Vec3(1, 0, 0)) - Vec3(1, 0, 0)).norm() < 1e-15);
    CHECK(normal_component(s, p, Vec3(0, 1, 0)).norm() < 1e-15);
    const Surface e = Surface::ellipsoid(1.5, 1, 0.8);
    auto eng = stream_engine(2, 0);
    for (int i = 0; i < 100; ++i) {
      const Vec3 q = testing::random_surface_point(e, eng);
      const Vec3 v = testing::random_unit(eng) * 3.0;
      const Vec3 vn = normal_component(e, q, v);
      const Vec3 vt = v - vn;
      CHECK(std::abs(v.squaredNorm() - vt.squaredNorm() - vn.squaredNorm()) < 1e-12);
      CHECK(std::abs(vt.dot(e.unit_normal(q))) < 1e-12);
    }
  }

  TEST_CASE("scaling satisfies the curvature bounds") {
    for (const Surface& s : {Surface::sphere(1.0), Surface::ellipsoid(1.2, 1, 1), Surface::ellipsoid(2, 1, 1),
                             Surface::axisymmetric_from_ellipsoid(1.2, 1.0)}) {
      const Normalized n = normalize_scaling(s);
      const auto& b = n.surface.curvature_bounds();
      CHECK(b.max_principal_curvature * std::sqrt(2.0) <= 1.0 / 16.0 + 1e-12);
      CHECK(n.surface.scale() == doctest::Approx(n.scale));
      CHECK(n.surface.convexity_radius() == doctest::Approx(4.0 * kPi));
    }
    const Normalized unit = normalize_scaling(Surface::sphere(1.0));
    CHECK(unit.scale == doctest::Approx(1.05 * 16.0 * std::sqrt(2.0)));
    CHECK(normalize_scaling(Surface::sphere(32.0)).scale == 1.0);
  }

  TEST_CASE("sphere geodesics") {
    const double R = 1.7;
    const Surface s = Surface::sphere(R);
    const auto seg = minimizing_geodesic(s, Vec3(R, 0, 0), Vec3(0, R, 0));
    CHECK(seg.length == doctest::Approx(kPi * R / 2.0).epsilon(1e-13));
    const auto zero = minimizing_geodesic(s, Vec3(R, 0, 0), Vec3(R, 0, 0));
    CHECK(zero.length == 0.0);
    CHECK(zero.samples.size() == 33);
  }

  TEST_CASE("geodesics are normal and respect the convexity radius") {
    const Surface e = Surface::ellipsoid(2, 1, 1);
    auto eng = stream_engine(3, 0);
    for (int i = 0; i < 30; ++i) {
      const Vec3 p = testing::random_surface_point(e, eng);
      const Vec3 q = testing::nearby_point(e, p, 0.5, eng);
      const auto seg = minimizing_geodesic(e, p, q);
      CHECK(tangential_residual(e, seg.samples) < 1e-6);
    }
    CHECK_THROWS_AS(minimizing_geodesic(e, Vec3(2, 0, 0), Vec3(-2, 0, 0)), GeometryError);
  }

  TEST_CASE("geodesic length matches the graph oracle") {
    for (const Surface& s : {Surface::ellipsoid(2, 1, 1), Surface::axisymmetric_from_ellipsoid(1.2, 1.0)}) {
      auto eng = stream_engine(4, 0);
      std::uniform_real_distribution<double> u(0.2, 0.7);
      int bad = 0;
      for (int i = 0; i < 100; ++i) {
        const Vec3 p = testing::random_surface_point(s, eng);
        const Vec3 q = testing::nearby_point(s, p, u(eng), eng);
        const double g = minimizing_geodesic(s, p, q).length;
        const double o = testing::dijkstra_geodesic_length(s, p, q);
        if (std::abs(g - o) > 0.005 * g) ++bad;
      }
      CHECK(bad == 0);
    }
  }

  TEST_CASE("normal part of chords is quadratic") {
    for (const Surface& raw : {Surface::sphere(1.0), Surface::ellipsoid(2, 1, 1)}) {
      const Surface s = normalize_scaling(raw).surface;
      auto eng = stream_engine(5, 0);
      int bad = 0;
      for (int i = 0; i < 2000; ++i) {
        const Vec3 x = testing::random_surface_point(s, eng);
        const Vec3 y = testing::random_surface_point(s, eng);
        if (normal_component(s, y, x - y).norm() > (x - y).squaredNorm()) ++bad;
      }
      CHECK(bad == 0);
    }
  }

  TEST_CASE("intrinsic distance is at most twice the chord for short chords") {
    const Surface s = normalize_scaling(Surface::ellipsoid(2, 1, 1)).surface;
    auto eng = stream_engine(6, 0);
    std::uniform_real_distribution<double> u(0.05, 1.0);
    for (int i = 0; i < 50; ++i) {
      const Vec3 x = testing::random_surface_point(s, eng);
      const Vec3 y = testing::nearby_point(s, x, u(eng), eng);
      if ((x - y).norm() > 1.0) continue;
      CHECK(minimizing_geodesic(s, x, y).length <= 2.0 * (x - y).norm());
    }
  }
}
