// Acceptance suite: one PASS/FAIL line per criterion.

#include "support.hpp"

#include "sweepwidth/birkhoff.hpp"
#include "sweepwidth/curve_corpus.hpp"
#include "sweepwidth/decay.hpp"
#include "sweepwidth/first_variation.hpp"
#include "sweepwidth/psi_suite.hpp"
#include "sweepwidth/sweepout.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>

using namespace sweepwidth;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFourPi = 4.0 * kPi;

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int id, const std::string& name, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  std::printf("criterion %2d %s: %s | %s\n", id, ok ? "PASS" : "FAIL", name.c_str(), detail.c_str());
  std::fflush(stdout);
}

// Runs a criterion body; an exception counts as FAIL with its message.
void criterion(int id, const std::string& name, const std::function<bool(std::ostringstream&)>& body) {
  std::ostringstream detail;
  detail.precision(6);
  const auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail << "exception: " << e.what();
  }
  detail << " [" << seconds_since(t0) << " s]";
  report(id, name, ok, detail.str());
}

std::shared_ptr<const Surface> scaled_sphere() {
  return std::make_shared<const Surface>(normalize_scaling(Surface::sphere(1.0)).surface);
}

}  // namespace

int main() {
  // Criteria 1 and 7 share the default-resolution sphere run.
  TightenResult sphere_run;
  double sphere_seconds = 0.0;
  criterion(1, "round-sphere width", [&](std::ostringstream& d) {
    const auto t0 = std::chrono::steady_clock::now();
    sphere_run = width_run(Surface::sphere(1.0), WidthConfig{});
    sphere_seconds = seconds_since(t0);
    const double W = sphere_run.report.width_original;
    const double rel = std::abs(W - 2.0 * kPi) / (2.0 * kPi);
    d << "W = " << W << ", rel error " << rel << ", L = " << sphere_run.report.L << ", "
      << sphere_run.report.iterations.back().iteration << " iterations, " << sphere_seconds << " s (limit 60)";
    return rel <= 0.01 && sphere_seconds <= 60.0;
  });

  criterion(2, "sphere MCF decay", [&](std::ostringstream& d) {
    const auto t0 = std::chrono::steady_clock::now();
    const DecaySeries s =
        width_decay_experiment(Surface::sphere(1.0), default_decay_config(FlowLaw::mcf(), {0, 0.05, 0.10, 0.15, 0.20}));
    double w_err = 0.0, q_err = 0.0;
    for (const auto& x : s.samples) {
      w_err = std::max(w_err, std::abs(x.width_original - 2.0 * kPi * (1.0 - 4.0 * x.t)) / (2.0 * kPi * (1.0 - 4.0 * x.t)));
    }
    for (double q : s.quotients) q_err = std::max(q_err, std::abs(q + 8.0 * kPi) / (8.0 * kPi));
    const bool below = s.quotients_below(1.0);
    d << s.samples.size() << " times, max W rel error " << w_err << ", max quotient " << s.max_quotient()
      << " (<= -4pi: " << below << "), quotient vs -8pi " << q_err << ", extinction " << s.extinction_time
      << " <= " << s.extinction_bound;
    return s.samples.size() == 5 && w_err <= 0.02 && below && q_err <= 0.03 && s.extinction_bound_holds() &&
           seconds_since(t0) <= 600.0;
  });

  criterion(3, "cylinder sharpness", [&](std::ostringstream& d) {
    double worst = 0.0;
    for (double r0 : {0.5, 1.0, 1.7, 3.0}) {
      const CylinderSharpness c = cylinder_sharpness(r0);
      worst = std::max(worst, std::abs(c.width_slope + kFourPi));
      worst = std::max(worst, std::abs(c.extinction - c.width0 / kFourPi));
      worst = std::max(worst, std::abs(c.extinction - c.extinction_bound));
    }
    d << "max deviation " << worst;
    return worst <= 1e-10;
  });

  criterion(4, "ellipsoid (1.2,1,1) MCF decay", [&](std::ostringstream& d) {
    const auto t0 = std::chrono::steady_clock::now();
    const DecaySeries s = width_decay_experiment(
        Surface::ellipsoid(1.2, 1, 1),
        default_decay_config(FlowLaw::mcf(), {0, 0.02, 0.04, 0.06, 0.08, 0.10, 0.12, 0.14}));
    const double secs = seconds_since(t0);
    d << s.samples.size() << " times, max quotient " << s.max_quotient() << " (limit " << -kFourPi * 0.98
      << "), extinction " << s.extinction_time << " <= " << s.extinction_bound;
    return s.samples.size() >= 8 && s.quotients_below(0.98) && secs <= 1200.0;
  });

  // Criteria 5 and 6 share the seed-1 corpus.
  const auto sphere = scaled_sphere();
  PsiSuiteReport first;
  criterion(5, "psi property suite", [&](std::ostringstream& d) {
    const auto t0 = std::chrono::steady_clock::now();
    first = run_psi_suite(random_curve_corpus(sphere, CorpusOptions{}, 1));
    std::vector<LoopCurve> controls;
    for (int i = 0; i < 8; ++i) controls.push_back(latitude_circle(sphere, 24, kPi / 2.0, 0.7 * i));
    for (const auto& c : sphere_run.sweepout.slices) {
      if (!c.is_point()) controls.push_back(c);
    }
    const PsiSuiteReport ctrl = run_psi_suite(controls);
    const int inc = first.length_increases() + ctrl.length_increases();
    const int viol = first.bound_violations();
    const int mism = first.fixed_point_mismatches() + ctrl.fixed_point_mismatches();
    const double gap = std::max(first.max_four_step_gap(), ctrl.max_four_step_gap());
    d << first.curves.size() << " curves + " << controls.size() << " controls: length increases " << inc
      << ", bound violations " << viol << ", fixed-point/geodesic mismatches " << mism << ", psi vs four-step "
      << gap;
    return first.curves.size() == 500 && inc == 0 && viol == 0 && mism == 0 && gap <= 1e-8 &&
           seconds_since(t0) <= 300.0;
  });

  criterion(6, "property (4) surrogate", [&](std::ostringstream& d) {
    const auto t0 = std::chrono::steady_clock::now();
    const PsiSuiteReport second = run_psi_suite(random_curve_corpus(sphere, CorpusOptions{}, 2));
    const double d1 = first.delta(0.1);
    const double d2 = second.delta(0.1);
    const double spread = std::abs(d2 - d1) / d1;
    d << "delta(seed 1) = " << d1 << " over " << first.delta_support(0.1) << " curves, delta(seed 2) = " << d2
      << " over " << second.delta_support(0.1) << ", relative spread " << spread;
    return d1 > 0.0 && d2 > 0.0 && spread <= 0.2 && seconds_since(t0) <= 300.0;
  });

  criterion(7, "almost-maximal slices near great circles", [&](std::ostringstream& d) {
    const double W = sphere_run.report.width_estimate;
    const double R = sphere_run.sweepout.slices.front().surface().sphere_radius();
    const auto near = almost_maximal_slices(sphere_run.sweepout, sphere_run.report, 0.01 * W);
    double worst = 0.0;
    for (const auto& m : near) worst = std::max(worst, m.dist_to_G);
    d << near.size() << " slices with E > 0.99 W, max dist " << worst << " (limit " << 0.05 * R << " = 0.05 R)";
    return !near.empty() && worst <= 0.05 * R;
  });

  criterion(8, "appendix lemmas", [&](std::ostringstream& d) {
    int pairs = 0, pair_bad = 0, arcs = 0, arc_bad = 0;
    const Surface surfaces[] = {normalize_scaling(Surface::sphere(1.0)).surface,
                                normalize_scaling(Surface::ellipsoid(2, 1, 1)).surface};
    for (int k = 0; k < 2; ++k) {
      const Surface& s = surfaces[k];
      auto eng = stream_engine(81, static_cast<std::uint64_t>(k));
      for (int i = 0; i < 5000; ++i, ++pairs) {
        const Vec3 x = testing::random_surface_point(s, eng);
        const Vec3 y = i % 2 ? testing::random_surface_point(s, eng)
                             : testing::nearby_point(s, x, 10.0 * std::uniform_real_distribution<>(0, 1)(eng), eng);
        if (normal_component(s, y, x - y).norm() > (x - y).squaredNorm()) ++pair_bad;
      }
      const int L = 24;
      std::uniform_real_distribution<double> u(0.0, 1.0);
      for (int made = 0; made < 500;) {
        const double span = 2.0 * kPi / L * (0.5 + 0.5 * u(eng));
        const auto arc = testing::perturbed_arc(s, testing::random_surface_point(s, eng), span, L * (0.3 + 0.5 * u(eng)),
                                                0.2 * u(eng), 1 + static_cast<int>(4 * u(eng)), 64, eng);
        if (testing::max_cell_speed(arc, span) > L) continue;
        ++made;
        ++arcs;
        const auto r = compare_arc_with_geodesic(s, arc, span);
        if (!r.derivative_bound_holds() || !r.distance_bound_holds()) ++arc_bad;
      }
    }
    d << "normal-part lemma: " << pair_bad << " violations in " << pairs << " pairs; arc lemma: " << arc_bad
      << " violations in " << arcs << " arcs";
    return pairs >= 10000 && arcs >= 1000 && pair_bad == 0 && arc_bad == 0;
  });

  criterion(9, "first-variation identities", [&](std::ostringstream& d) {
    FlowHistory h(Surface::sphere(1.0), FlowLaw::mcf(), 1e-3);
    const LoopCurve eq = latitude_circle(h.state_at(0.0).surface, 24, kPi / 2.0);
    const FirstVariation fv = first_variation_length(h, eq, 0.0);
    const double dt = 1e-4;
    h.advance_to(dt);
    h.advance_to(2.0 * dt);
    const double fd = (-3.0 * eq.length() + 4.0 * h.transport_curve(eq, 0.0, dt).length() -
                       h.transport_curve(eq, 0.0, 2.0 * dt).length()) /
                      (2.0 * dt);
    const double fd_rel = std::abs(fd - fv.dV_dt) / std::abs(fv.dV_dt);

    // Chain at every evaluation: shrinking sphere and ellipsoid equators.
    int evaluations = 0, chain_bad = 0;
    FlowHistory hs(Surface::sphere(1.0), FlowLaw::mcf(), 1e-3);
    FlowHistory he(Surface::ellipsoid(1.2, 1, 1), FlowLaw::mcf(), 1e-3);
    for (double t : {0.0, 0.05, 0.10, 0.15, 0.20}) {
      hs.advance_to(t);
      he.advance_to(t);
      const LoopCurve a = latitude_circle(hs.state_at(t).surface, 24, kPi / 2.0);
      const LoopCurve b = initial_sweepout(he.state_at(t).surface, 2, 24).slices[1];
      for (const auto& c : {a, b}) {
        ++evaluations;
        if (!energy_decay_estimate(c).chain_holds() || !first_variation_length(c).inequality_holds()) ++chain_bad;
      }
    }

    // Total curvature: corpus and sweepout slices, planar circles for equality.
    int curves = 0, fenchel_bad = 0;
    for (const auto& c : random_curve_corpus(scaled_sphere(), CorpusOptions{}, 9)) {
      ++curves;
      if (total_curvature(c) < 2.0 * kPi * (1.0 - 1e-12)) ++fenchel_bad;
    }
    for (const auto& c : sphere_run.sweepout.slices) {
      if (c.is_point()) continue;
      ++curves;
      if (total_curvature(c) < 2.0 * kPi * (1.0 - 1e-12)) ++fenchel_bad;
    }
    double circle_dev = 0.0;
    for (double polar : {0.2, 0.7, 1.2, kPi / 2.0}) {
      const LoopCurve c = latitude_circle(scaled_sphere(), 24, polar, 0.3);
      circle_dev = std::max(circle_dev, std::abs(total_curvature(c) - 2.0 * kPi) / (2.0 * kPi));
    }
    d << "dV/dt " << fv.dV_dt << " vs FD " << fd << " (rel " << fd_rel << "); chain failures " << chain_bad << "/"
      << evaluations << "; total curvature < 2pi on " << fenchel_bad << "/" << curves
      << " curves; planar circles deviate " << circle_dev;
    return fd_rel <= 1e-3 && chain_bad == 0 && fenchel_bad == 0 && circle_dev <= 0.005;
  });

  criterion(10, "H^k flow (k = 2)", [&](std::ostringstream& d) {
    const FlowLaw k2 = FlowLaw::hk(2.0);
    FlowHistory h(Surface::sphere(1.0), k2, 1e-3);
    double r_err = 0.0;
    double worst_lhs = -std::numeric_limits<double>::infinity();
    int ok_times = 0;
    const double rhs = -std::pow(2.0 * kPi, 3);
    for (double t : {0.0, 0.01, 0.02, 0.03, 0.04}) {
      h.advance_to(t);
      const auto& s = h.state_at(t).surface;
      r_err = std::max(r_err, std::abs(s->sphere_radius() - std::cbrt(1.0 - 12.0 * t)));
      const PowerFlowCheck p = power_flow_inequality_check(h, latitude_circle(s, 24, kPi / 2.0), t, 2.0);
      worst_lhs = std::max(worst_lhs, p.lhs);
      if (p.lhs <= rhs && p.holds()) ++ok_times;
    }
    // k = 1 against MCF on the analytic sphere path.
    FlowHistory a(Surface::sphere(1.0), FlowLaw::hk(1.0), 1e-3);
    FlowHistory b(Surface::sphere(1.0), FlowLaw::mcf(), 1e-3);
    a.advance_to(0.2);
    b.advance_to(0.2);
    bool identical = a.states().size() == b.states().size();
    for (std::size_t i = 0; identical && i < a.states().size(); ++i) {
      identical = a.states()[i].time == b.states()[i].time &&
                  a.states()[i].surface->sphere_radius() == b.states()[i].surface->sphere_radius();
    }
    d << "max |r - (1-12t)^(1/3)| = " << r_err << ", inequality at " << ok_times << "/5 times (max lhs " << worst_lhs
      << " vs " << rhs << "), k = 1 bit-identical: " << identical;
    return r_err <= 1e-8 && ok_times == 5 && identical;
  });

  criterion(11, "variation gap scaling", [&](std::ostringstream& d) {
    FlowHistory h(Surface::sphere(1.0), FlowLaw::mcf(), 1e-3);
    const auto s = h.state_at(0.0).surface;
    const LoopCurve eq = latitude_circle(s, 24, kPi / 2.0);
    const double ds[] = {0.1, 0.05, 0.025};
    double gaps[3];
    for (int i = 0; i < 3; ++i) gaps[i] = variation_perturbation_gap(h, eq, latitude_circle(s, 24, kPi / 2.0 - ds[i]), 0.0);
    double mx = 0, my = 0;
    for (int i = 0; i < 3; ++i) {
      mx += ds[i] / 3.0;
      my += gaps[i] / 3.0;
    }
    double sxy = 0, sxx = 0, syy = 0;
    for (int i = 0; i < 3; ++i) {
      sxy += (ds[i] - mx) * (gaps[i] - my);
      sxx += (ds[i] - mx) * (ds[i] - mx);
      syy += (gaps[i] - my) * (gaps[i] - my);
    }
    const double r2 = sxy * sxy / (sxx * syy);
    const double loglog = std::log(gaps[0] / gaps[2]) / std::log(ds[0] / ds[2]);
    d << "gaps " << gaps[0] << ", " << gaps[1] << ", " << gaps[2] << "; linear R^2 " << r2 << "; log-log slope "
      << loglog;
    return r2 >= 0.95;
  });

  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
