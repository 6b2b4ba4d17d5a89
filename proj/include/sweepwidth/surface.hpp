#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace sweepwidth {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SurfaceKind { Sphere, Ellipsoid, Axisymmetric };

std::string to_string(SurfaceKind kind);

struct PrincipalCurvatures {
  double k1 = 0.0;
  double k2 = 0.0;

  double norm() const;      // |A|
  double gauss() const { return k1 * k2; }
  double mean() const { return k1 + k2; }  // scalar H, sphere: 2/R
};

/// Sampled curvature bounds used by the scaling policy.
struct CurvatureBounds {
  double max_second_fundamental_form = 0.0;
  double max_gauss_curvature = 0.0;
  double min_principal_curvature = 0.0;
  double max_principal_curvature = 0.0;
};

/// Strictly convex closed surface in R^3.
///
/// Three realizations share one interface: an analytic round sphere, an
/// axis-aligned ellipsoid, and a surface of revolution about the z axis given
/// as a polar radius rho(theta), theta measured from the +z pole. The profile
/// is stored as a cosine series so that it is smooth through both poles.
///
/// All surfaces are centred at the origin. `scale()` records the uniform
/// factor applied since construction so that widths can be reported back in
/// original units (energy scales with scale^2).
class Surface {
 public:
  static Surface sphere(double radius);
  static Surface ellipsoid(double a, double b, double c);
  /// `polar_radius[j]` is rho at theta_j = (j + 1/2) pi / n.
  static Surface axisymmetric(const std::vector<double>& polar_radius);
  /// Surface of revolution equal to an ellipsoid with two equal semi-axes,
  /// re-oriented so that the distinct axis is z.
  static Surface axisymmetric_from_ellipsoid(double polar, double equatorial, int samples = 64);

  SurfaceKind kind() const;
  double scale() const { return scale_; }
  Surface scaled(double factor) const;

  // Raw parameters in current units.
  double sphere_radius() const;
  Vec3 ellipsoid_axes() const;
  const std::vector<double>& profile_coefficients() const;

  double implicit(const Vec3& x) const;
  Vec3 gradient(const Vec3& x) const;
  Mat3 hessian(const Vec3& x) const;

  /// Nearest-point projection. Throws when x is outside the tubular
  /// neighbourhood where the nearest point is unique.
  Vec3 project(const Vec3& x) const;
  /// Cheap projection along the ray from the centre (star-shaped surfaces).
  Vec3 radial_project(const Vec3& x) const;

  Vec3 unit_normal(const Vec3& p) const;  // outward
  PrincipalCurvatures curvatures(const Vec3& p) const;
  /// Mean curvature vector H_M = -(k1 + k2) n, pointing inward.
  Vec3 mean_curvature_vector(const Vec3& p) const;
  /// Second fundamental form applied to the unit tangent u at p.
  double normal_curvature(const Vec3& p, const Vec3& u) const;

  /// Intrinsic distance between nearby points (exact on the sphere,
  /// chord with normal-curvature correction otherwise).
  double short_distance(const Vec3& p, const Vec3& q) const;
  /// Point at arclength fraction f of the short geodesic from p to q.
  Vec3 interpolate(const Vec3& p, const Vec3& q, double f) const;

  const CurvatureBounds& curvature_bounds() const { return bounds_; }
  /// Radius below which geodesic balls are strictly convex; capped at 4 pi.
  double convexity_radius() const;

  /// Sweep direction for planar-cut sweepouts (longest axis).
  Vec3 sweep_axis() const;
  /// Lowest and highest coordinate of the surface along the sweep axis.
  std::pair<double, double> sweep_range() const;
  /// Point on the planar cut at signed height h along the sweep axis, at
  /// azimuth phi in the cut plane.
  Vec3 slice_point(double height, double phi) const;

  // Axisymmetric profile evaluation; rho and derivatives in theta.
  struct ProfileValue {
    double rho, drho, d2rho;
  };
  ProfileValue profile(double theta) const;

 private:
  struct Sphere {
    double radius;
  };
  struct Ellipsoid {
    Vec3 axes;
  };
  struct Axisymmetric {
    std::vector<double> coeffs;  // rho(theta) = sum c_m cos(m theta)
  };

  explicit Surface(std::variant<Sphere, Ellipsoid, Axisymmetric> shape, double scale = 1.0);

  CurvatureBounds sample_curvature_bounds() const;
  double axisym_theta_at_height(double height) const;

  std::variant<Sphere, Ellipsoid, Axisymmetric> shape_;
  double scale_ = 1.0;
  CurvatureBounds bounds_;
};

/// Result of the (M1)-(M3) normalization.
struct Normalized {
  Surface surface;
  double scale;
};

/// Minimal uniform scale (with a 5% margin) so that sup|A| <= 1/16 and the
/// sectional curvature is <= 1/64; surfaces that already satisfy both are
/// returned unscaled. Rejects surfaces that are not strictly convex.
Normalized normalize_scaling(const Surface& surface);

double second_fundamental_form_norm(const Surface& surface, const Vec3& p);
Vec3 normal_component(const Surface& surface, const Vec3& p, const Vec3& v);

}  // namespace sweepwidth
