#include "doctest.h"
#include "support.hpp"

#include "sweepwidth/curve_corpus.hpp"
#include "sweepwidth/decay.hpp"
#include "sweepwidth/first_variation.hpp"

#include <numbers>
#include <sstream>

using namespace sweepwidth;

namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> sphere_profile(double r, int n = 64) { return std::vector<double>(static_cast<std::size_t>(n), r); }

}  // namespace

TEST_SUITE("mcf") {
  TEST_CASE("sphere flows in closed form") {
    FlowHistory h(Surface::sphere(1.0), FlowLaw::mcf(), 1e-3);
    h.advance_to(0.1);
    CHECK(h.current().surface->sphere_radius() == doctest::Approx(std::sqrt(0.6)).epsilon(1e-14));
    CHECK(h.extinction_time() == doctest::Approx(0.25));
    CHECK_THROWS_AS(h.advance_to(0.3), GeometryError);
    CHECK(sphere_radius_at(1.0, 0.05, FlowLaw::hk(2.0)) == doctest::Approx(std::cbrt(1.0 - 0.6)).epsilon(1e-14));
    CHECK(std::isnan(sphere_radius_at(1.0, 0.1, FlowLaw::hk(2.0))));
    CHECK(sphere_extinction_time(1.0, FlowLaw::hk(2.0)) == doctest::Approx(1.0 / 12.0));
  }

  TEST_CASE("H^k with k = 1 is mean curvature flow") {
    const FlowState s0 = initial_flow_state(Surface::sphere(1.3));
    FlowState a = s0, b = s0;
    for (int i = 0; i < 50; ++i) {
      a = mcf_step(a, 1e-3);
      b = hk_step(b, 1e-3, 1.0);
      CHECK(a.surface->sphere_radius() == b.surface->sphere_radius());
    }
    const FlowState p0 = initial_flow_state(Surface::axisymmetric_from_ellipsoid(1.2, 1.0));
    const double dt = 0.5 * stable_step(p0, FlowLaw::mcf());
    CHECK(mcf_step(p0, dt).profile == hk_step(p0, dt, 1.0).profile);
    CHECK_THROWS_AS(FlowLaw::hk(0.0), GeometryError);
    CHECK_THROWS_AS(FlowLaw::hk(-1.0), GeometryError);
  }

  TEST_CASE("profile scheme reproduces the shrinking sphere") {
    FlowHistory h(Surface::axisymmetric(sphere_profile(1.0)), FlowLaw::mcf(), 1e-3);
    h.advance_to(0.1);
    for (double r : h.current().profile) CHECK(r == doctest::Approx(std::sqrt(0.6)).epsilon(1e-3));
    CHECK(h.extinction_time() == doctest::Approx(0.25).epsilon(0.01));
  }

  TEST_CASE("ellipsoid of revolution stays convex") {
    FlowHistory h(Surface::ellipsoid(1.2, 1, 1), FlowLaw::mcf(), 1e-3);
    h.advance_to(0.15);
    CHECK(h.current().surface->curvature_bounds().min_principal_curvature > 0.0);
    const double ext = h.extinction_time();
    CHECK(ext > 0.25);
    CHECK(ext < 2.0 * kPi / (4.0 * kPi));
    CHECK_THROWS_AS((void)mcf_step(h.current(), 1.0), GeometryError);
  }

  TEST_CASE("first variation of length on the equator") {
    FlowHistory h(Surface::sphere(1.0), FlowLaw::mcf(), 1e-3);
    const LoopCurve eq = latitude_circle(h.state_at(0.0).surface, 24, kPi / 2.0);
    const FirstVariation fv = first_variation_length(h, eq, 0.0);
    CHECK(fv.dV_dt == doctest::Approx(-4.0 * kPi).epsilon(1e-12));
    CHECK(fv.inequality_holds());
    const double dt = 1e-4;
    h.advance_to(dt);
    h.advance_to(2.0 * dt);
    const double l0 = eq.length();
    const double l1 = h.transport_curve(eq, 0.0, dt).length();
    const double l2 = h.transport_curve(eq, 0.0, 2.0 * dt).length();
    CHECK((-3.0 * l0 + 4.0 * l1 - l2) / (2.0 * dt) == doctest::Approx(fv.dV_dt).epsilon(1e-3));
    const LoopCurve lat = latitude_circle(h.state_at(0.0).surface, 24, kPi / 2.0 - 0.3);
    CHECK_THROWS_AS(first_variation_length(lat), GeometryError);
  }

  TEST_CASE("energy decay chain and the power inequality") {
    for (double R : {1.0, 0.7}) {
      const auto s = std::make_shared<const Surface>(Surface::sphere(R));
      const LoopCurve eq = latitude_circle(s, 24, kPi / 2.0);
      const EnergyDecay e = energy_decay_estimate(eq);
      CHECK(e.dE_dt == doctest::Approx(-8.0 * kPi).epsilon(1e-6));
      CHECK(e.chain_holds());
      CHECK(e.floor == doctest::Approx(-4.0 * kPi * kPi));
      const PowerFlowCheck k2 = power_flow_inequality_check(eq, 2.0);
      CHECK(k2.holds());
      CHECK(k2.rhs == doctest::Approx(-std::pow(2.0 * kPi, 3)));
      const PowerFlowCheck k1 = power_flow_inequality_check(eq, 1.0);
      CHECK(k1.lhs == doctest::Approx(kPi * e.dE_dt).epsilon(1e-12));
    }
  }

  TEST_CASE("total curvature") {
    const auto s = std::make_shared<const Surface>(Surface::sphere(1.0));
    for (double polar : {0.3, 1.0, kPi / 2.0}) {
      const LoopCurve c = latitude_circle(s, 24, polar);
      CHECK(total_curvature(c) == doctest::Approx(2.0 * kPi).epsilon(1e-9));
      CHECK(planarity_residual(c) < 1e-12);
    }
    CorpusOptions o;
    o.count = 30;
    const auto scaled = std::make_shared<const Surface>(normalize_scaling(Surface::sphere(1.0)).surface);
    for (const auto& c : random_curve_corpus(scaled, o, 31)) CHECK(total_curvature(c) >= 2.0 * kPi * (1.0 - 1e-12));
    CHECK_THROWS_AS(total_curvature(LoopCurve::point_curve(s, 24, Vec3(0, 0, 1))), GeometryError);
  }

  TEST_CASE("variation gap shrinks with the distance") {
    FlowHistory h(Surface::sphere(1.0), FlowLaw::mcf(), 1e-3);
    const auto s = h.state_at(0.0).surface;
    const LoopCurve eq = latitude_circle(s, 24, kPi / 2.0);
    double prev = std::numeric_limits<double>::infinity();
    for (double d : {0.1, 0.05, 0.025}) {
      const double gap = variation_perturbation_gap(h, eq, latitude_circle(s, 24, kPi / 2.0 - d), 0.0);
      CHECK(gap == doctest::Approx(8.0 * kPi * std::sin(d) * std::sin(d)).epsilon(0.02));
      CHECK(gap < prev);
      prev = gap;
    }
  }

  TEST_CASE("cylinder closed forms") {
    const CylinderSharpness c = cylinder_sharpness(1.3);
    CHECK(c.width0 == doctest::Approx(2.0 * kPi * 1.69));
    CHECK(c.width_slope == doctest::Approx(-4.0 * kPi).epsilon(1e-14));
    CHECK(c.extinction == doctest::Approx(c.extinction_bound).epsilon(1e-14));
  }

  TEST_CASE("sphere decay series") {
    DecayConfig cfg = default_decay_config(FlowLaw::mcf(), {0.0, 0.05, 0.1});
    cfg.width.slices = 12;
    cfg.transport_comparison = true;
    const DecaySeries a = width_decay_experiment(Surface::sphere(1.0), cfg);
    REQUIRE(a.samples.size() == 3);
    for (double q : a.quotients) CHECK(q == doctest::Approx(-8.0 * kPi).epsilon(1e-6));
    CHECK(a.quotients_below(1.0));
    CHECK(a.integrated_bound_holds());
    CHECK(a.rigidity_holds());
    CHECK(a.transport_bounds_hold());
    CHECK(a.extinction_bound_holds());
    CHECK(a.extinction_bound == doctest::Approx(0.5));
    const DecaySeries b = width_decay_experiment(Surface::sphere(1.0), cfg);
    std::ostringstream x, y;
    write_decay_csv(x, a);
    write_decay_csv(y, b);
    CHECK(x.str() == y.str());
    CHECK(x.str().rfind("t,W_original_units,W_scaled,quotient,bound_minus4pi,argmax_t,total_curvature_argmax,"
                        "planarity_residual\n",
                        0) == 0);
  }

  TEST_CASE("decay stops at extinction") {
    DecayConfig cfg = default_decay_config(FlowLaw::mcf(), {0.0, 0.2, 0.3});
    cfg.width.slices = 8;
    const DecaySeries s = width_decay_experiment(Surface::sphere(1.0), cfg);
    CHECK(s.truncated);
    CHECK(s.samples.size() == 2);
    CHECK_THROWS_AS(width_decay_experiment(Surface::sphere(1.0), default_decay_config(FlowLaw::mcf(), {0.1, 0.0})),
                    GeometryError);
  }
}
