#pragma once

#include "sweepwidth/surface.hpp"

#include <iosfwd>
#include <memory>
#include <vector>

namespace sweepwidth {

/// Grid cells per partition interval [x_j, x_{j+1}].
inline constexpr int kCellsPerInterval = 32;

enum class Parity { Even, Odd };

/// Closed curve on a surface, piecewise geodesic between consecutive knots.
///
/// Knots carry increasing parameters in [0, 2 pi); the last cell wraps to
/// the first knot. `L` is the break budget: the partition x_j = j pi / L has
/// 2L intervals and the common sampling grid has 2L * kCellsPerInterval
/// points. Length and energy are exact for the piecewise-geodesic curve with
/// constant speed on each cell:
///   length = sum d_i,   energy = sum d_i^2 / dx_i,
/// so Length^2 <= 2 pi Energy holds exactly with equality iff constant speed.
class LoopCurve {
 public:
  LoopCurve(std::shared_ptr<const Surface> surface, int L, std::vector<double> params, std::vector<Vec3> points,
            std::vector<double> breaks = {});

  /// Knots on the uniform grid 2 pi k / n, n = points.size().
  static LoopCurve from_grid(std::shared_ptr<const Surface> surface, int L, std::vector<Vec3> points);
  static LoopCurve point_curve(std::shared_ptr<const Surface> surface, int L, const Vec3& p);

  const Surface& surface() const { return *surface_; }
  const std::shared_ptr<const Surface>& surface_ptr() const { return surface_; }
  int L() const { return L_; }
  int grid_size() const { return 2 * L_ * kCellsPerInterval; }
  const std::vector<double>& params() const { return params_; }
  const std::vector<Vec3>& points() const { return points_; }
  const std::vector<double>& cell_lengths() const { return cell_lengths_; }
  /// Parameters where the curve may have corners.
  const std::vector<double>& breaks() const { return breaks_; }
  std::size_t knot_count() const { return points_.size(); }

  double length() const { return length_; }
  double energy() const { return energy_; }
  bool is_point() const { return length_ == 0.0; }
  /// Largest cell speed d_i / dx_i (the Lipschitz constant).
  double max_speed() const;
  bool constant_speed(double rel_tol = 1e-8) const;

  /// Partition point x_j = j pi / L.
  double partition_point(int j) const;
  Vec3 evaluate(double x) const;
  /// Positions at 2 pi k / n.
  std::vector<Vec3> sample(int n) const;
  std::vector<Vec3> sample() const { return sample(grid_size()); }

  /// Same curve with a new break budget (knots unchanged).
  LoopCurve with_L(int L) const;

 private:
  std::size_t cell_index(double x) const;

  std::shared_ptr<const Surface> surface_;
  int L_;
  std::vector<double> params_;
  std::vector<Vec3> points_;
  std::vector<double> breaks_;
  std::vector<double> cell_lengths_;
  double length_ = 0.0;
  double energy_ = 0.0;
};

double energy(const LoopCurve& c);
double length(const LoopCurve& c);

/// sqrt( integral |c1 - c2|^2 + |c1' - c2'|^2 ) on the common uniform grid,
/// trapezoid rule with forward-difference derivatives.
double w12_distance(const LoopCurve& c1, const LoopCurve& c2);
/// Same functional for raw samples on a uniform periodic grid over [0, 2 pi).
double w12_distance(const std::vector<Vec3>& a, const std::vector<Vec3>& b);

/// Constant-speed reparametrization fixing the image of `fixed_point_param`.
/// New knots sit on the old curve at equal arclength spacing, so the length
/// never increases. Point curves are returned unchanged.
LoopCurve reparametrize_constant_speed(const LoopCurve& c, double fixed_point_param = 0.0);
/// As above, but the image of `source_param` lands at `target_param`.
LoopCurve reparametrize_constant_speed(const LoopCurve& c, double source_param, double target_param);

/// Replace the curve on every interval [x_a, x_{a+2}] of the given parity by
/// the minimizing geodesic between its endpoint values.
LoopCurve linear_replacement(const LoopCurve& c, Parity parity);

/// An arc sampled uniformly over a parameter interval of length `span`,
/// compared with the minimizing geodesic between its endpoints sampled on
/// the same grid. Energies and distances use forward differences.
struct ArcComparison {
  double span = 0.0;
  double energy_arc = 0.0;
  double energy_geodesic = 0.0;
  double derivative_gap = 0.0;  // integral |(s1 - s2)'|^2
  double dist_sq = 0.0;         // integral |s1 - s2|^2 + derivative_gap

  /// integral |(s1 - s2)'|^2 <= 2 (E(s1) - E(s2)).
  bool derivative_bound_holds(double slack = 1e-12) const;
  /// dist^2 <= (1 + (span / pi)^2) 2 (E(s1) - E(s2)).
  bool distance_bound_holds(double slack = 1e-12) const;
};

ArcComparison compare_arc_with_geodesic(const Surface& surface, const std::vector<Vec3>& arc, double span);

/// Curve dump: a header row (L, speed, length, energy), then param,x1,x2,x3
/// rows on the grid, closing sample included.
void write_curve_csv(std::ostream& out, const LoopCurve& c);

}  // namespace sweepwidth
