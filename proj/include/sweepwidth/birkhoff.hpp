#pragma once

#include "sweepwidth/loop_curve.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace sweepwidth {

/// One named stage of a Psi evaluation.
struct PsiStage {
  std::string name;
  LoopCurve curve;
};

/// Output of psi / psi_four_step with every intermediate curve.
///
/// Three-step stages: input, gamma_e, gamma_o, output.
/// Four-step stages:  input, gamma_e, tilde_gamma_e, tilde_gamma_o, output.
struct PsiResult {
  std::vector<PsiStage> stages;
  /// w12 distance between consecutive stages.
  std::vector<double> step_distances;
  double energy_drop = 0.0;
  double length_drop = 0.0;

  const LoopCurve& input() const { return stages.front().curve; }
  const LoopCurve& output() const { return stages.back().curve; }
  const LoopCurve& stage(const std::string& name) const;
};

/// Birkhoff map: even replacement, odd replacement, then constant-speed
/// reparametrization fixing the odd curve's value at x_0.
PsiResult psi(const LoopCurve& c);
/// Output curve only; the hot path for tightening.
LoopCurve psi_curve(const LoopCurve& c);

/// Same map via (A1) even replacement, (B1) constant-speed reparametrization
/// of gamma_e, (A2) replacement on the images of the odd intervals, and (B2)
/// a final constant-speed reparametrization anchored at the same point as
/// psi's third step.
PsiResult psi_four_step(const LoopCurve& c);

/// Breakdown of the explicit property-(3) bound.
struct Property3Bound {
  double dist = 0.0;   // measured w12(c, Psi(c))
  double bound = 0.0;  // sum of the terms below
  double even_term = 0.0;
  double odd_term = 0.0;
  double reparam_term = 0.0;
  double lipschitz = 0.0;
  bool holds(double slack = 1e-9) const;
};

/// Measured w12(c, Psi(c)) and the assembled bound
///   dist(c, g_e)   <= sqrt(2 (1 + 4/L^2) (E(c) - E(g_e)))
///   dist(g_e, g_o) <= sqrt(2 (1 + 4/L^2) (E(g_e) - E(g_o)))
///   dist(g_o, Psi) <= sqrt(5 (2 A^2 I + 2 (4 A^4 k^2 I + 8 A^2 L sqrt(pi I))))
/// with I = 2 pi (E(g_o) - E(Psi)) / E(Psi) bounding the integral of
/// (P' - 1)^2, A the Lipschitz constant and k the max principal curvature. Throws when Psi(c) has zero length.
Property3Bound property3_bound(const LoopCurve& c);

/// Circle map P with c_before = c_after o P, sampled on the grid.
struct ReparamMap {
  std::vector<double> params;
  std::vector<double> values;       // P(x), unwrapped: values.front() == P(x_0)
  std::vector<double> derivatives;  // forward differences of P
  double deviation_integral = 0.0;  // integral of (P' - 1)^2

  bool monotone() const;
};

/// Requires c_after to have constant speed and both curves to agree at x_0.
/// Throws when c_after o P does not reproduce c_before within
/// `tolerance * (1 + Length)`.
ReparamMap reparam_map(const LoopCurve& c_before, const LoopCurve& c_after, double tolerance = 1e-6);

/// w12(c, Psi(c)) <= tol (1 + Length(c)).
bool is_geodesic(const LoopCurve& c, double tol = 1e-6);
/// w12(c, Psi(c)) / (1 + Length(c)).
double fixed_point_residual(const LoopCurve& c);
/// Independent of Psi: the larger of the max tangential (geodesic) part of
/// the discrete curvature vector times Length / 2 pi, and the relative
/// spread of cell speeds. Zero on a constant-speed closed geodesic.
double geodesic_residual(const LoopCurve& c);

/// Max w12(Psi(c), Psi(c')) over random band-limited perturbations c' with
/// w12(c, c') <= scale.
double psi_continuity_probe(const LoopCurve& c, double perturbation_scale, int trials, std::uint64_t seed);

enum class HomotopyStage { GammaToEven, EvenToTilde };

/// Frames of the explicit homotopies. GammaToEven joins c(x) to gamma_e(x)
/// along minimizing geodesics; EvenToTilde is
///   G(x, s) = tilde_gamma_e((1 - s) P(x) + s x).
/// Frame 0 and frame s_samples - 1 equal the endpoint curves.
std::vector<LoopCurve> homotopy_frames(const LoopCurve& c, HomotopyStage stage, int s_samples);

/// JSON diagnostic dump of a PsiResult and, optionally, its bound.
std::string psi_diagnostic_json(const PsiResult& r, const Property3Bound* bound = nullptr);

}  // namespace sweepwidth
