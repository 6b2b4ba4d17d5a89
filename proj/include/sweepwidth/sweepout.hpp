#pragma once

#include "sweepwidth/loop_curve.hpp"

#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

namespace sweepwidth {

/// One-parameter family of closed curves over t in [-1, 1], point curves at
/// both ends.
struct Sweepout {
  std::vector<double> t_grid;
  std::vector<LoopCurve> slices;
  std::string homotopy_tag = "degree-one";
  /// Only the interval parameter space is implemented.
  std::string parameter_space = "interval[-1,1]";

  int L() const { return slices.front().L(); }
  std::size_t size() const { return slices.size(); }
  double max_energy() const;
  std::size_t argmax() const;
};

/// Planar cuts perpendicular to the surface's sweep axis at heights uniform
/// in t, each reparametrized to constant speed. `M_slices` intervals give
/// M_slices + 1 slices.
Sweepout initial_sweepout(std::shared_ptr<const Surface> surface, int M_slices, int L);

/// Smallest break budget >= L_requested with Lipschitz bound and piece
/// lengths within the Lambda limits for every slice.
int admissible_break_budget(const Sweepout& s, int L_requested);

/// Replace every slice on each partition interval [y_i, y_{i+1}] by the
/// geodesic with the same endpoints, then reparametrize to constant speed.
/// Raises the break budget to admissible_break_budget(s, s.L()).
Sweepout pl_replace(const Sweepout& s);

/// Psi on every slice; the parallel version splits slices across OpenMP
/// threads, the serial one is the reference.
std::vector<LoopCurve> psi_all_parallel(const std::vector<LoopCurve>& slices);
std::vector<LoopCurve> psi_all_serial(const std::vector<LoopCurve>& slices);

struct TightenConfig {
  int max_iterations = 200;
  /// The plateau rule only engages after this many iterations. Slices next
  /// to a maximal geodesic lose energy slowly, so leaving the near-max band
  /// takes on the order of 100 iterations even when the max is flat.
  int min_iterations = 120;
  int plateau_window = 10;
  double plateau_rel = 1e-6;
  /// Slices with energy >= (1 - near_max_fraction) * max count as near-max.
  double near_max_fraction = 0.01;
  bool track_distance = true;
  bool parallel = true;
  /// Iterations whose sweepout is kept in TightenResult::snapshots.
  std::vector<int> snapshot_iterations;
};

struct NearMaxSlice {
  double t = 0.0;
  double energy = 0.0;
  double dist_to_G = 0.0;
};

struct IterationRecord {
  int iteration = 0;
  double max_energy = 0.0;
  double argmax_t = 0.0;
  int near_max_count = 0;
  double max_dist_to_G = 0.0;
};

struct WidthReport {
  double width_estimate = 0.0;  // scaled units
  double width_original = 0.0;  // width_estimate / scale^2
  double scale = 1.0;
  int L = 0;
  int slices = 0;
  std::vector<IterationRecord> iterations;
  std::vector<NearMaxSlice> near_max;  // final iteration
  bool plateau_stop = false;
  std::string schedule_note;

  std::vector<double> max_energies() const;
};

struct TightenResult {
  Sweepout sweepout;
  WidthReport report;
  std::vector<std::pair<int, Sweepout>> snapshots;
};

TightenResult tighten(const Sweepout& s, const TightenConfig& config = {});

/// Slices with Energy > W - delta (W from the report, scaled units),
/// excluding point curves, with their dist-to-G surrogate.
std::vector<NearMaxSlice> almost_maximal_slices(const Sweepout& s, const WidthReport& report, double delta);

struct WidthConfig {
  int slices = 64;
  int L = 16;
  TightenConfig tighten;
};

/// initial_sweepout -> pl_replace -> tighten on the normalized surface.
TightenResult width_run(const Surface& surface, const WidthConfig& config = {});
WidthReport width(const Surface& surface, const WidthConfig& config = {});

void write_tightening_csv(std::ostream& out, const WidthReport& report);
/// One curve block per slice, each preceded by a "t=<value>" line.
void write_sweepout_snapshot(std::ostream& out, const Sweepout& s);

}  // namespace sweepwidth
