#include "sweepwidth/loop_curve.hpp"

#include "sweepwidth/geodesic.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

namespace sweepwidth {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double wrap(double x) {
  double y = std::fmod(x, kTwoPi);
  if (y < 0.0) y += kTwoPi;
  if (y >= kTwoPi) y -= kTwoPi;
  return y;
}

double grid_param(long idx, long n) { return kTwoPi * static_cast<double>(idx) / static_cast<double>(n); }

}  // namespace

LoopCurve::LoopCurve(std::shared_ptr<const Surface> surface, int L, std::vector<double> params,
                     std::vector<Vec3> points, std::vector<double> breaks)
    : surface_(std::move(surface)),
      L_(L),
      params_(std::move(params)),
      points_(std::move(points)),
      breaks_(std::move(breaks)) {
  if (!surface_) throw GeometryError("loop curve needs a surface");
  if (L_ < 1) throw GeometryError("break budget L must be positive");
  if (points_.empty() || points_.size() != params_.size())
    throw GeometryError("loop curve needs matching, non-empty params and points");
  for (std::size_t i = 0; i < params_.size(); ++i) {
    if (!(params_[i] >= 0.0 && params_[i] < kTwoPi)) throw GeometryError("knot parameter outside [0, 2pi)");
    if (i > 0 && !(params_[i] > params_[i - 1])) throw GeometryError("knot parameters must increase");
  }
  const std::size_t n = points_.size();
  cell_lengths_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const double d = n == 1 ? 0.0 : surface_->short_distance(points_[i], points_[j]);
    const double dx = (j == 0 ? params_[0] + kTwoPi : params_[j]) - params_[i];
    cell_lengths_[i] = d;
    length_ += d;
    energy_ += d * d / dx;
  }
}

LoopCurve LoopCurve::from_grid(std::shared_ptr<const Surface> surface, int L, std::vector<Vec3> points) {
  const long n = static_cast<long>(points.size());
  std::vector<double> params(points.size());
  for (long k = 0; k < n; ++k) params[static_cast<std::size_t>(k)] = grid_param(k, n);
  return LoopCurve(std::move(surface), L, std::move(params), std::move(points));
}

LoopCurve LoopCurve::point_curve(std::shared_ptr<const Surface> surface, int L, const Vec3& p) {
  return LoopCurve(std::move(surface), L, {0.0}, {p});
}

double LoopCurve::max_speed() const {
  double best = 0.0;
  const std::size_t n = points_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const double dx = (j == 0 ? params_[0] + kTwoPi : params_[j]) - params_[i];
    best = std::max(best, cell_lengths_[i] / dx);
  }
  return best;
}

bool LoopCurve::constant_speed(double rel_tol) const {
  if (is_point()) return true;
  const double target = length_ / kTwoPi;
  const std::size_t n = points_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const double dx = (j == 0 ? params_[0] + kTwoPi : params_[j]) - params_[i];
    if (std::abs(cell_lengths_[i] / dx - target) > rel_tol * target) return false;
  }
  return true;
}

double LoopCurve::partition_point(int j) const { return wrap(std::numbers::pi * j / L_); }

std::size_t LoopCurve::cell_index(double x) const {
  const auto it = std::upper_bound(params_.begin(), params_.end(), x);
  if (it == params_.begin()) return params_.size() - 1;  // wrapping cell
  return static_cast<std::size_t>(it - params_.begin()) - 1;
}

Vec3 LoopCurve::evaluate(double x) const {
  x = wrap(x);
  const std::size_t n = points_.size();
  if (n == 1) return points_[0];
  const std::size_t i = cell_index(x);
  const std::size_t j = (i + 1) % n;
  double start = params_[i];
  if (x < start) x += kTwoPi;
  const double dx = (j == 0 ? params_[0] + kTwoPi : params_[j]) - start;
  const double f = (x - start) / dx;
  if (f == 0.0) return points_[i];
  return surface_->interpolate(points_[i], points_[j], f);
}

std::vector<Vec3> LoopCurve::sample(int n) const {
  const auto count = static_cast<std::size_t>(n);
  if (points_.size() == count) {
    bool on_grid = true;
    for (std::size_t k = 0; k < count && on_grid; ++k) on_grid = params_[k] == grid_param(static_cast<long>(k), n);
    if (on_grid) return points_;
  }
  std::vector<Vec3> out(count);
  for (std::size_t k = 0; k < count; ++k) out[k] = evaluate(grid_param(static_cast<long>(k), n));
  return out;
}

LoopCurve LoopCurve::with_L(int L) const { return LoopCurve(surface_, L, params_, points_, breaks_); }

double energy(const LoopCurve& c) { return c.energy(); }
double length(const LoopCurve& c) { return c.length(); }

double w12_distance(const std::vector<Vec3>& a, const std::vector<Vec3>& b) {
  if (a.size() != b.size() || a.empty()) throw GeometryError("w12_distance needs equal, non-empty grids");
  const std::size_t n = a.size();
  const double h = kTwoPi / static_cast<double>(n);
  double acc = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t j = (k + 1) % n;
    const Vec3 f = a[k] - b[k];
    const Vec3 df = (a[j] - b[j]) - f;
    acc += h * f.squaredNorm() + df.squaredNorm() / h;
  }
  return std::sqrt(acc);
}

double w12_distance(const LoopCurve& c1, const LoopCurve& c2) {
  const int n = std::max(c1.grid_size(), c2.grid_size());
  return w12_distance(c1.sample(n), c2.sample(n));
}

LoopCurve reparametrize_constant_speed(const LoopCurve& c, double fixed_point_param) {
  return reparametrize_constant_speed(c, fixed_point_param, fixed_point_param);
}

LoopCurve reparametrize_constant_speed(const LoopCurve& c, double fixed_point_param, double target_param) {
  if (c.is_point()) return c;
  const auto& pts = c.points();
  const auto& params = c.params();
  const auto& d = c.cell_lengths();
  const std::size_t n_in = pts.size();
  const double total = c.length();

  std::vector<double> cum(n_in + 1, 0.0);
  for (std::size_t i = 0; i < n_in; ++i) cum[i + 1] = cum[i] + d[i];

  auto arclength_at = [&](double x) {
    x = wrap(x);
    auto it = std::upper_bound(params.begin(), params.end(), x);
    std::size_t i = it == params.begin() ? n_in - 1 : static_cast<std::size_t>(it - params.begin()) - 1;
    double start = params[i];
    if (x < start) x += kTwoPi;
    const std::size_t j = (i + 1) % n_in;
    const double dx = (j == 0 ? params[0] + kTwoPi : params[j]) - start;
    return cum[i] + d[i] * (x - start) / dx;
  };
  auto point_at = [&](double s) {
    s = std::fmod(s, total);
    if (s < 0.0) s += total;
    auto it = std::upper_bound(cum.begin(), cum.begin() + static_cast<long>(n_in), s);
    std::size_t i = static_cast<std::size_t>(it - cum.begin()) - 1;
    while (d[i] == 0.0) i = (i + 1) % n_in;  // zero-length cells carry no arclength
    const double f = std::clamp((s - cum[i]) / d[i], 0.0, 1.0);
    if (f == 0.0) return pts[i];
    return c.surface().interpolate(pts[i], pts[(i + 1) % n_in], f);
  };

  const double anchor_s = arclength_at(fixed_point_param);
  const Vec3 anchor = c.evaluate(fixed_point_param);
  const long n = c.grid_size();
  const double base = wrap(target_param);

  std::vector<std::pair<double, Vec3>> knots;
  knots.reserve(static_cast<std::size_t>(n));
  const bool on_grid = base == 0.0;
  for (long k = 0; k < n; ++k) {
    const double param = on_grid ? grid_param(k, n) : wrap(base + grid_param(k, n));
    const Vec3 p = k == 0 ? anchor : point_at(anchor_s + total * static_cast<double>(k) / static_cast<double>(n));
    knots.emplace_back(param, p);
  }
  std::sort(knots.begin(), knots.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<double> out_params;
  std::vector<Vec3> out_points;
  out_params.reserve(knots.size());
  out_points.reserve(knots.size());
  for (const auto& [x, p] : knots) {
    if (!out_params.empty() && x <= out_params.back()) continue;
    out_params.push_back(x);
    out_points.push_back(p);
  }

  std::vector<double> breaks;
  breaks.reserve(c.breaks().size());
  for (double b : c.breaks()) {
    double rel = std::fmod(arclength_at(b) - anchor_s, total);
    if (rel < 0.0) rel += total;
    breaks.push_back(wrap(base + kTwoPi * rel / total));
  }
  std::sort(breaks.begin(), breaks.end());
  return LoopCurve(c.surface_ptr(), c.L(), std::move(out_params), std::move(out_points), std::move(breaks));
}

LoopCurve linear_replacement(const LoopCurve& c, Parity parity) {
  const int L = c.L();
  const long n = c.grid_size();
  const long cells = 2 * kCellsPerInterval;
  const int offset = parity == Parity::Even ? 0 : 1;
  std::vector<Vec3> out(static_cast<std::size_t>(n));
  std::vector<double> breaks;
  breaks.reserve(static_cast<std::size_t>(L));
  for (int j = 0; j < L; ++j) {
    const int a = offset + 2 * j;
    const Vec3 pa = c.evaluate(c.partition_point(a));
    const Vec3 pb = c.evaluate(c.partition_point(a + 2));
    std::vector<Vec3> seg;
    try {
      seg = geodesic_points(c.surface(), pa, pb, static_cast<int>(cells));
    } catch (const GeometryError& e) {
      std::ostringstream msg;
      msg << "linear replacement on interval [x_" << a << ", x_" << a + 2 << "]: " << e.what();
      throw GeometryError(msg.str());
    }
    for (long i = 0; i < cells; ++i) {
      const long idx = (static_cast<long>(a) * kCellsPerInterval + i) % n;
      out[static_cast<std::size_t>(idx)] = seg[static_cast<std::size_t>(i)];
    }
    breaks.push_back(c.partition_point(a));
  }
  std::sort(breaks.begin(), breaks.end());
  std::vector<double> params(static_cast<std::size_t>(n));
  for (long k = 0; k < n; ++k) params[static_cast<std::size_t>(k)] = grid_param(k, n);
  return LoopCurve(c.surface_ptr(), L, std::move(params), std::move(out), std::move(breaks));
}

bool ArcComparison::derivative_bound_holds(double slack) const {
  return derivative_gap <= 2.0 * (energy_arc - energy_geodesic) + slack * (1.0 + energy_arc);
}

bool ArcComparison::distance_bound_holds(double slack) const {
  const double r = span / std::numbers::pi;
  return dist_sq <= (1.0 + r * r) * 2.0 * (energy_arc - energy_geodesic) + slack * (1.0 + energy_arc);
}

ArcComparison compare_arc_with_geodesic(const Surface& surface, const std::vector<Vec3>& arc, double span) {
  if (arc.size() < 2 || !(span > 0.0)) throw GeometryError("arc needs two samples and a positive span");
  const int cells = static_cast<int>(arc.size()) - 1;
  const auto geo = geodesic_points(surface, arc.front(), arc.back(), cells, 1e-10);
  const double h = span / cells;
  ArcComparison r;
  r.span = span;
  for (int i = 0; i < cells; ++i) {
    const auto a = static_cast<std::size_t>(i);
    const Vec3 d1 = arc[a + 1] - arc[a];
    const Vec3 d2 = geo[a + 1] - geo[a];
    r.energy_arc += d1.squaredNorm() / h;
    r.energy_geodesic += d2.squaredNorm() / h;
    r.derivative_gap += (d1 - d2).squaredNorm() / h;
    // Trapezoid rule for the value term.
    r.dist_sq += 0.5 * h * ((arc[a] - geo[a]).squaredNorm() + (arc[a + 1] - geo[a + 1]).squaredNorm());
  }
  r.dist_sq += r.derivative_gap;
  return r;
}

void write_curve_csv(std::ostream& out, const LoopCurve& c) {
  out << std::setprecision(17);
  out << "L,speed,length,energy\n";
  out << c.L() << ',' << c.length() / kTwoPi << ',' << c.length() << ',' << c.energy() << '\n';
  out << "param,x1,x2,x3\n";
  const auto pts = c.sample();
  const std::size_t n = pts.size();
  for (std::size_t k = 0; k <= n; ++k) {
    const Vec3& p = pts[k % n];
    out << grid_param(static_cast<long>(k), static_cast<long>(n)) << ',' << p.x() << ',' << p.y() << ',' << p.z()
        << '\n';
  }
}

}  // namespace sweepwidth
