#include "sweepwidth/decay.hpp"

#include "sweepwidth/birkhoff.hpp"
#include "sweepwidth/first_variation.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <exception>
#include <iomanip>
#include <numbers>
#include <ostream>

namespace sweepwidth {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kFourPi = 4.0 * kPi;

DecaySample evaluate_width(const FlowState& state, const DecayConfig& config, TightenResult& run) {
  run = width_run(*state.surface, config.width);
  DecaySample s;
  s.t = state.time;
  s.width_original = run.report.width_original;
  s.width_scaled = run.report.width_estimate;
  s.scale = run.report.scale;
  s.L = run.report.L;
  s.iterations = run.report.iterations.back().iteration;
  const std::size_t arg = run.sweepout.argmax();
  const LoopCurve& top = run.sweepout.slices[arg];
  s.argmax_t = run.sweepout.t_grid[arg];
  s.total_curvature_argmax = total_curvature(top);
  s.planarity_residual = planarity_residual(top);
  if (is_geodesic(top)) {
    const auto check = power_flow_inequality_check(top, config.law.power());
    s.power_lhs = check.lhs;
    s.power_rhs = check.rhs;
  }
  return s;
}

// Max original-units energy of a scaled sweepout pushed from t0 to t1.
double transported_max_energy(const FlowHistory& history, const Sweepout& s, double scale, double t0, double t1) {
  const auto& target = history.state_at(t1).surface;
  double best = 0.0;
  for (const auto& c : s.slices) {
    std::vector<Vec3> pts;
    pts.reserve(c.knot_count());
    for (const auto& p : c.points()) pts.push_back(history.flow_point(p / scale, t0, t1));
    const LoopCurve moved(target, c.L(), c.params(), std::move(pts), c.breaks());
    best = std::max(best, moved.energy());
  }
  return best;
}

}  // namespace

DecayConfig default_decay_config(FlowLaw law, std::vector<double> t_samples) {
  DecayConfig c;
  c.law = law;
  c.t_samples = std::move(t_samples);
  c.width.tighten.min_iterations = 0;
  c.width.tighten.track_distance = false;
  c.width.tighten.parallel = false;
  return c;
}

double DecaySeries::max_quotient() const {
  double best = -std::numeric_limits<double>::infinity();
  for (double q : quotients) best = std::max(best, q);
  return best;
}

bool DecaySeries::quotients_below(double factor) const {
  return std::all_of(quotients.begin(), quotients.end(), [&](double q) { return q <= -kFourPi * factor; });
}

bool DecaySeries::integrated_bound_holds(double rel_tol) const {
  if (samples.empty()) return true;
  const double w0 = samples.front().width_original;
  for (const auto& s : samples) {
    if (s.width_original > w0 - kFourPi * (s.t - samples.front().t) + rel_tol * w0) return false;
  }
  return true;
}

bool DecaySeries::rigidity_holds() const {
  auto rigid = [](const DecaySample& s) {
    return std::abs(s.total_curvature_argmax - 2.0 * kPi) <= 0.01 * 2.0 * kPi && s.planarity_residual <= 0.02;
  };
  for (std::size_t i = 0; i < quotients.size(); ++i) {
    if (std::abs(quotients[i] + kFourPi) > 0.01 * kFourPi) continue;
    if (!rigid(samples[i]) || !rigid(samples[i + 1])) return false;
  }
  return true;
}

bool DecaySeries::transport_bounds_hold(double rel_tol) const {
  for (const auto& s : samples) {
    if (!std::isnan(s.transported_upper) && s.width_original > s.transported_upper * (1.0 + rel_tol)) return false;
  }
  return true;
}

DecaySeries width_decay_experiment(const Surface& surface0, const DecayConfig& config) {
  DecaySeries series;
  series.law = config.law;
  std::vector<double> times = config.t_samples;
  if (times.empty()) throw GeometryError("decay experiment needs sample times");
  if (!std::is_sorted(times.begin(), times.end()) ||
      std::adjacent_find(times.begin(), times.end()) != times.end()) {
    throw GeometryError("sample times must be strictly increasing");
  }

  FlowHistory history(surface0, config.law, config.dt_max);
  std::vector<double> reached;
  for (double t : times) {
    try {
      history.advance_to(t);
      reached.push_back(t);
    } catch (const GeometryError& e) {
      series.truncated = true;
      series.truncation_note = e.what();
      break;
    }
  }

  // Widths at distinct times are independent.
  const auto count = static_cast<long>(reached.size());
  std::vector<DecaySample> samples(reached.size());
  std::vector<TightenResult> runs(reached.size());
  std::exception_ptr error;
#pragma omp parallel for schedule(dynamic)
  for (long i = 0; i < count; ++i) {
    try {
      const auto u = static_cast<std::size_t>(i);
      samples[u] = evaluate_width(history.state_at(reached[u]), config, runs[u]);
    } catch (...) {
#pragma omp critical(decay_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);

  if (config.transport_comparison) {
#pragma omp parallel for schedule(dynamic)
    for (long i = 1; i < count; ++i) {
      const auto u = static_cast<std::size_t>(i);
      samples[u].transported_upper =
          transported_max_energy(history, runs[u - 1].sweepout, samples[u - 1].scale, reached[u - 1], reached[u]);
    }
  }

  series.samples = std::move(samples);
  for (std::size_t i = 0; i + 1 < series.samples.size(); ++i) {
    const auto& a = series.samples[i];
    const auto& b = series.samples[i + 1];
    series.quotients.push_back((b.width_original - a.width_original) / (b.t - a.t));
  }
  series.extinction_time = history.extinction_time();
  if (!series.samples.empty()) {
    const double w0 = series.samples.front().width_original;
    const double k = config.law.power();
    if (config.law.kind == FlowLaw::Kind::MeanCurvature) {
      series.extinction_bound = w0 / kFourPi;
    } else {
      const double v0 = std::sqrt(2.0 * kPi * w0);
      series.extinction_bound = std::pow(v0, k + 1.0) / ((k + 1.0) * std::pow(2.0 * kPi, k + 1.0));
    }
  }
  return series;
}

void write_decay_csv(std::ostream& out, const DecaySeries& series) {
  out << std::setprecision(17);
  out << "t,W_original_units,W_scaled,quotient,bound_minus4pi,argmax_t,total_curvature_argmax,planarity_residual\n";
  for (std::size_t i = 0; i < series.samples.size(); ++i) {
    const auto& s = series.samples[i];
    out << s.t << ',' << s.width_original << ',' << s.width_scaled << ',';
    if (i < series.quotients.size()) {
      out << series.quotients[i] << ',' << series.quotients[i] + kFourPi;
    } else {
      out << ',';
    }
    out << ',' << s.argmax_t << ',' << s.total_curvature_argmax << ',' << s.planarity_residual << '\n';
  }
}

}  // namespace sweepwidth
