#include "sweepwidth/sweepout.hpp"

#include "sweepwidth/birkhoff.hpp"
#include "sweepwidth/geodesic.hpp"
#include "sweepwidth/geodesic_orbit.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

namespace sweepwidth {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

LoopCurve replace_on_partition(const LoopCurve& c) {
  if (c.is_point()) return c;
  const int parts = 2 * c.L();
  const int n = c.grid_size();
  std::vector<Vec3> pts(static_cast<std::size_t>(n));
  std::vector<double> breaks;
  breaks.reserve(static_cast<std::size_t>(parts));
  for (int i = 0; i < parts; ++i) {
    const Vec3 a = c.evaluate(c.partition_point(i));
    const Vec3 b = c.evaluate(c.partition_point(i + 1));
    std::vector<Vec3> seg;
    try {
      seg = geodesic_points(c.surface(), a, b, kCellsPerInterval);
    } catch (const GeometryError& e) {
      std::ostringstream msg;
      msg << "no admissible partition at 2L = " << parts << " (interval " << i << ": " << e.what()
          << "); use a larger L";
      throw GeometryError(msg.str());
    }
    for (int k = 0; k < kCellsPerInterval; ++k) {
      pts[static_cast<std::size_t>(i * kCellsPerInterval + k)] = seg[static_cast<std::size_t>(k)];
    }
    breaks.push_back(c.partition_point(i));
  }
  std::vector<double> params(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) params[static_cast<std::size_t>(k)] = kTwoPi * k / n;
  return reparametrize_constant_speed(LoopCurve(c.surface_ptr(), c.L(), std::move(params), std::move(pts), breaks));
}

IterationRecord record(int iteration, const Sweepout& s, const TightenConfig& config,
                       std::vector<NearMaxSlice>* near_out) {
  IterationRecord r;
  r.iteration = iteration;
  const std::size_t arg = s.argmax();
  r.max_energy = s.slices[arg].energy();
  r.argmax_t = s.t_grid[arg];
  const double threshold = (1.0 - config.near_max_fraction) * r.max_energy;
  std::vector<NearMaxSlice> near;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& c = s.slices[i];
    if (c.is_point() || c.energy() < threshold) continue;
    NearMaxSlice m{s.t_grid[i], c.energy(), 0.0};
    if (config.track_distance) m.dist_to_G = distance_to_geodesic_set(c);
    r.max_dist_to_G = std::max(r.max_dist_to_G, m.dist_to_G);
    near.push_back(m);
  }
  r.near_max_count = static_cast<int>(near.size());
  if (near_out) *near_out = std::move(near);
  return r;
}

}  // namespace

double Sweepout::max_energy() const { return slices[argmax()].energy(); }

std::size_t Sweepout::argmax() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < slices.size(); ++i) {
    if (slices[i].energy() > slices[best].energy()) best = i;
  }
  return best;
}

Sweepout initial_sweepout(std::shared_ptr<const Surface> surface, int M_slices, int L) {
  if (M_slices < 2) throw GeometryError("a sweepout needs at least two slice intervals");
  const auto [lo, hi] = surface->sweep_range();
  const int n = 2 * L * kCellsPerInterval;
  Sweepout s;
  for (int i = 0; i <= M_slices; ++i) {
    const double t = -1.0 + 2.0 * i / M_slices;
    s.t_grid.push_back(t);
    if (i == 0 || i == M_slices) {
      s.slices.push_back(LoopCurve::point_curve(surface, L, surface->slice_point(i == 0 ? lo : hi, 0.0)));
      continue;
    }
    const double h = lo + (hi - lo) * (t + 1.0) / 2.0;
    std::vector<Vec3> pts(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) pts[static_cast<std::size_t>(k)] = surface->slice_point(h, kTwoPi * k / n);
    s.slices.push_back(reparametrize_constant_speed(LoopCurve::from_grid(surface, L, std::move(pts))));
  }
  return s;
}

int admissible_break_budget(const Sweepout& s, int L_requested) {
  double longest = 0.0;
  for (const auto& c : s.slices) longest = std::max(longest, c.length());
  // Constant speed Length / 2 pi must not exceed L; this also caps every
  // piece of the 2L-interval partition at Length / 2L <= pi.
  return std::max(L_requested, static_cast<int>(std::ceil(longest / kTwoPi - 1e-12)));
}

Sweepout pl_replace(const Sweepout& s) {
  const int L = admissible_break_budget(s, s.L());
  Sweepout out = s;
  for (auto& c : out.slices) {
    const LoopCurve relabeled = c.L() == L ? c : c.with_L(L);
    c = relabeled.is_point() ? relabeled : replace_on_partition(relabeled);
  }
  return out;
}

std::vector<LoopCurve> psi_all_serial(const std::vector<LoopCurve>& slices) {
  std::vector<LoopCurve> out;
  out.reserve(slices.size());
  for (const auto& c : slices) out.push_back(psi_curve(c));
  return out;
}

std::vector<LoopCurve> psi_all_parallel(const std::vector<LoopCurve>& slices) {
  std::vector<LoopCurve> out = slices;
  std::exception_ptr error;
  const auto count = static_cast<long>(slices.size());
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = psi_curve(slices[static_cast<std::size_t>(i)]);
    } catch (...) {
#pragma omp critical(psi_all_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
  return out;
}

std::vector<double> WidthReport::max_energies() const {
  std::vector<double> e;
  e.reserve(iterations.size());
  for (const auto& r : iterations) e.push_back(r.max_energy);
  return e;
}

TightenResult tighten(const Sweepout& s, const TightenConfig& config) {
  TightenResult result;
  result.sweepout = s;
  Sweepout& cur = result.sweepout;
  WidthReport& rep = result.report;
  rep.L = s.L();
  rep.slices = static_cast<int>(s.size());
  rep.scale = s.slices.front().surface().scale();
  auto keep_snapshot = [&](int it) {
    const auto& want = config.snapshot_iterations;
    if (std::find(want.begin(), want.end(), it) != want.end()) result.snapshots.emplace_back(it, cur);
  };

  rep.iterations.push_back(record(0, cur, config, &rep.near_max));
  keep_snapshot(0);
  int flat = 0;
  for (int it = 1; it <= config.max_iterations; ++it) {
    cur.slices = config.parallel ? psi_all_parallel(cur.slices) : psi_all_serial(cur.slices);
    rep.iterations.push_back(record(it, cur, config, &rep.near_max));
    keep_snapshot(it);
    const double prev = rep.iterations[rep.iterations.size() - 2].max_energy;
    const double now = rep.iterations.back().max_energy;
    const double rel = prev > 0.0 ? (prev - now) / prev : 0.0;
    flat = rel < config.plateau_rel ? flat + 1 : 0;
    if (flat >= config.plateau_window && it >= config.min_iterations) {
      rep.plateau_stop = true;
      break;
    }
  }
  rep.width_estimate = rep.iterations.back().max_energy;
  rep.width_original = rep.width_estimate / (rep.scale * rep.scale);
  std::ostringstream note;
  note << "plateau rule (relative decrease < " << config.plateau_rel << " over " << config.plateau_window
       << " iterations, after at least " << config.min_iterations << ") replaces the 1/j schedule; "
       << (rep.plateau_stop ? "stopped on plateau" : "stopped at iteration cap") << " after "
       << rep.iterations.back().iteration << " iterations";
  rep.schedule_note = note.str();
  return result;
}

std::vector<NearMaxSlice> almost_maximal_slices(const Sweepout& s, const WidthReport& report, double delta) {
  std::vector<NearMaxSlice> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    const auto& c = s.slices[i];
    if (c.is_point() || !(c.energy() > report.width_estimate - delta)) continue;
    out.push_back({s.t_grid[i], c.energy(), distance_to_geodesic_set(c)});
  }
  return out;
}

TightenResult width_run(const Surface& surface, const WidthConfig& config) {
  const Normalized norm = normalize_scaling(surface);
  auto scaled = std::make_shared<const Surface>(norm.surface);
  Sweepout s = initial_sweepout(scaled, config.slices, config.L);
  const int L = admissible_break_budget(s, config.L);
  if (L != config.L) s = initial_sweepout(scaled, config.slices, L);
  TightenResult r = tighten(pl_replace(s), config.tighten);
  r.report.scale = norm.scale;
  r.report.width_original = r.report.width_estimate / (norm.scale * norm.scale);
  return r;
}

WidthReport width(const Surface& surface, const WidthConfig& config) { return width_run(surface, config).report; }

void write_tightening_csv(std::ostream& out, const WidthReport& report) {
  out << std::setprecision(17);
  out << "iteration,max_energy,argmax_t,near_max_count,max_dist_to_G\n";
  for (const auto& r : report.iterations) {
    out << r.iteration << ',' << r.max_energy << ',' << r.argmax_t << ',' << r.near_max_count << ','
        << r.max_dist_to_G << '\n';
  }
}

void write_sweepout_snapshot(std::ostream& out, const Sweepout& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    out << std::setprecision(17) << "t=" << s.t_grid[i] << '\n';
    write_curve_csv(out, s.slices[i]);
  }
}

}  // namespace sweepwidth
