#include "sweepwidth/surface.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sweepwidth {

namespace {

constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

double polar_angle(const Vec3& x) { return std::atan2(std::hypot(x.x(), x.y()), x.z()); }

// e_theta and e_phi at a point; on the axis any azimuth works.
void spherical_frame(const Vec3& x, Vec3& e_theta, Vec3& e_phi) {
  const double theta = polar_angle(x);
  const double rxy = std::hypot(x.x(), x.y());
  const double cphi = rxy > 0.0 ? x.x() / rxy : 1.0;
  const double sphi = rxy > 0.0 ? x.y() / rxy : 0.0;
  e_theta = Vec3(std::cos(theta) * cphi, std::cos(theta) * sphi, -std::sin(theta));
  e_phi = Vec3(-sphi, cphi, 0.0);
}

// Basis of the plane orthogonal to a coordinate axis.
void cut_basis(const Vec3& axis, Vec3& e1, Vec3& e2) {
  if (std::abs(axis.z()) > 0.5) {
    e1 = Vec3::UnitX();
    e2 = Vec3::UnitY();
  } else if (std::abs(axis.x()) > 0.5) {
    e1 = Vec3::UnitY();
    e2 = Vec3::UnitZ();
  } else {
    e1 = Vec3::UnitZ();
    e2 = Vec3::UnitX();
  }
}

PrincipalCurvatures implicit_curvatures(const Vec3& grad, const Mat3& hess) {
  const double g = grad.norm();
  const Vec3 n = grad / g;
  const Mat3 proj = Mat3::Identity() - n * n.transpose();
  const Mat3 shape = proj * hess * proj / g;
  Eigen::SelfAdjointEigenSolver<Mat3> eig(shape);
  // Drop the eigenvector closest to the normal.
  int drop = 0;
  double best = -1.0;
  for (int i = 0; i < 3; ++i) {
    const double a = std::abs(eig.eigenvectors().col(i).dot(n));
    if (a > best) {
      best = a;
      drop = i;
    }
  }
  double k[2];
  int j = 0;
  for (int i = 0; i < 3; ++i) {
    if (i != drop) k[j++] = eig.eigenvalues()(i);
  }
  return {std::min(k[0], k[1]), std::max(k[0], k[1])};
}

}  // namespace

std::string to_string(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::Sphere:
      return "sphere";
    case SurfaceKind::Ellipsoid:
      return "ellipsoid";
    case SurfaceKind::Axisymmetric:
      return "axisymmetric";
  }
  return "unknown";
}

double PrincipalCurvatures::norm() const { return std::sqrt(k1 * k1 + k2 * k2); }

Surface::Surface(std::variant<Sphere, Ellipsoid, Axisymmetric> shape, double scale)
    : shape_(std::move(shape)), scale_(scale) {
  bounds_ = sample_curvature_bounds();
}

Surface Surface::sphere(double radius) {
  if (!(radius > 0.0) || !std::isfinite(radius)) throw GeometryError("radius must be positive");
  return Surface(Sphere{radius});
}

Surface Surface::ellipsoid(double a, double b, double c) {
  if (!(a > 0.0 && b > 0.0 && c > 0.0) || !std::isfinite(a + b + c))
    throw GeometryError("ellipsoid semi-axes must be positive");
  return Surface(Ellipsoid{Vec3(a, b, c)});
}

Surface Surface::axisymmetric(const std::vector<double>& polar_radius) {
  const auto n = polar_radius.size();
  if (n < 4) throw GeometryError("axisymmetric profile needs at least 4 samples");
  for (double r : polar_radius) {
    if (!(r > 0.0) || !std::isfinite(r)) throw GeometryError("profile radii must be positive");
  }
  // DCT-II on the staggered grid recovers the cosine coefficients exactly.
  std::vector<double> coeffs(n, 0.0);
  for (std::size_t m = 0; m < n; ++m) {
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double theta = (static_cast<double>(j) + 0.5) * kPi / static_cast<double>(n);
      acc += polar_radius[j] * std::cos(static_cast<double>(m) * theta);
    }
    coeffs[m] = acc * (m == 0 ? 1.0 : 2.0) / static_cast<double>(n);
  }
  // Trailing coefficients below round-off only cost evaluation time.
  const double lead = std::abs(coeffs[0]);
  while (coeffs.size() > 2 && std::abs(coeffs.back()) < 1e-15 * lead) coeffs.pop_back();
  return Surface(Axisymmetric{std::move(coeffs)});
}

Surface Surface::axisymmetric_from_ellipsoid(double polar, double equatorial, int samples) {
  if (!(polar > 0.0 && equatorial > 0.0)) throw GeometryError("ellipsoid semi-axes must be positive");
  std::vector<double> rho(static_cast<std::size_t>(samples));
  for (int j = 0; j < samples; ++j) {
    const double theta = (j + 0.5) * kPi / samples;
    const double s = std::sin(theta) / equatorial;
    const double c = std::cos(theta) / polar;
    rho[static_cast<std::size_t>(j)] = 1.0 / std::sqrt(s * s + c * c);
  }
  return axisymmetric(rho);
}

SurfaceKind Surface::kind() const {
  return std::visit(Overloaded{[](const Sphere&) { return SurfaceKind::Sphere; },
                               [](const Ellipsoid&) { return SurfaceKind::Ellipsoid; },
                               [](const Axisymmetric&) { return SurfaceKind::Axisymmetric; }},
                    shape_);
}

Surface Surface::scaled(double factor) const {
  if (!(factor > 0.0)) throw GeometryError("scale factor must be positive");
  auto shape = std::visit(
      Overloaded{[&](const Sphere& s) -> decltype(shape_) { return Sphere{s.radius * factor}; },
                 [&](const Ellipsoid& e) -> decltype(shape_) { return Ellipsoid{e.axes * factor}; },
                 [&](const Axisymmetric& a) -> decltype(shape_) {
                   Axisymmetric out = a;
                   for (double& c : out.coeffs) c *= factor;
                   return out;
                 }},
      shape_);
  return Surface(std::move(shape), scale_ * factor);
}

double Surface::sphere_radius() const {
  if (const auto* s = std::get_if<Sphere>(&shape_)) return s->radius;
  throw GeometryError("not a sphere");
}

Vec3 Surface::ellipsoid_axes() const {
  if (const auto* e = std::get_if<Ellipsoid>(&shape_)) return e->axes;
  if (const auto* s = std::get_if<Sphere>(&shape_)) return Vec3::Constant(s->radius);
  throw GeometryError("not an ellipsoid");
}

const std::vector<double>& Surface::profile_coefficients() const {
  if (const auto* a = std::get_if<Axisymmetric>(&shape_)) return a->coeffs;
  throw GeometryError("not an axisymmetric surface");
}

Surface::ProfileValue Surface::profile(double theta) const {
  const auto* a = std::get_if<Axisymmetric>(&shape_);
  if (a == nullptr) throw GeometryError("not an axisymmetric surface");
  // cos(m t) and sin(m t) by the Chebyshev recurrence.
  const double c1 = std::cos(theta);
  const double s1 = std::sin(theta);
  double cm_prev = 1.0, cm = c1;
  double sm_prev = 0.0, sm = s1;
  ProfileValue v{a->coeffs[0], 0.0, 0.0};
  for (std::size_t m = 1; m < a->coeffs.size(); ++m) {
    const double cf = a->coeffs[m];
    const double md = static_cast<double>(m);
    v.rho += cf * cm;
    v.drho -= md * cf * sm;
    v.d2rho -= md * md * cf * cm;
    const double cn = 2.0 * c1 * cm - cm_prev;
    const double sn = 2.0 * c1 * sm - sm_prev;
    cm_prev = cm;
    cm = cn;
    sm_prev = sm;
    sm = sn;
  }
  return v;
}

double Surface::implicit(const Vec3& x) const {
  return std::visit(Overloaded{[&](const Sphere& s) { return x.norm() - s.radius; },
                               [&](const Ellipsoid& e) { return x.cwiseQuotient(e.axes).squaredNorm() - 1.0; },
                               [&](const Axisymmetric&) { return x.norm() - profile(polar_angle(x)).rho; }},
                    shape_);
}

Vec3 Surface::gradient(const Vec3& x) const {
  return std::visit(Overloaded{[&](const Sphere&) -> Vec3 { return x.normalized(); },
                               [&](const Ellipsoid& e) -> Vec3 {
                                 return 2.0 * x.cwiseQuotient(e.axes.cwiseProduct(e.axes));
                               },
                               [&](const Axisymmetric&) -> Vec3 {
                                 Vec3 e_theta, e_phi;
                                 spherical_frame(x, e_theta, e_phi);
                                 const double r = x.norm();
                                 return x / r - profile(polar_angle(x)).drho * e_theta / r;
                               }},
                    shape_);
}

Mat3 Surface::hessian(const Vec3& x) const {
  return std::visit(Overloaded{[&](const Sphere&) -> Mat3 {
                                 const double r = x.norm();
                                 const Vec3 u = x / r;
                                 return (Mat3::Identity() - u * u.transpose()) / r;
                               },
                               [&](const Ellipsoid& e) -> Mat3 {
                                 return Vec3(2.0 / (e.axes.array() * e.axes.array())).asDiagonal();
                               },
                               [&](const Axisymmetric&) -> Mat3 {
                                 const double h = 1e-5 * std::max(x.norm(), 1e-8);
                                 Mat3 out;
                                 for (int i = 0; i < 3; ++i) {
                                   Vec3 dx = Vec3::Zero();
                                   dx(i) = h;
                                   out.col(i) = (gradient(x + dx) - gradient(x - dx)) / (2.0 * h);
                                 }
                                 return 0.5 * (out + out.transpose());
                               }},
                    shape_);
}

Vec3 Surface::radial_project(const Vec3& x) const {
  const double r = x.norm();
  if (r == 0.0) throw GeometryError("cannot project the centre onto the surface");
  const Vec3 u = x / r;
  return std::visit(Overloaded{[&](const Sphere& s) -> Vec3 { return s.radius * u; },
                               [&](const Ellipsoid& e) -> Vec3 {
                                 return u / u.cwiseQuotient(e.axes).norm();
                               },
                               [&](const Axisymmetric&) -> Vec3 { return profile(polar_angle(u)).rho * u; }},
                    shape_);
}

Vec3 Surface::project(const Vec3& x) const {
  const double reach = 0.99 / bounds_.max_principal_curvature;
  const Vec3 p = std::visit(
      Overloaded{
          [&](const Sphere& s) -> Vec3 {
            const double r = x.norm();
            if (s.radius - r >= reach) throw GeometryError("point too far from surface for a unique projection");
            return s.radius * x / r;
          },
          [&](const Ellipsoid& e) -> Vec3 {
            // Nearest point is x_i a_i^2 / (a_i^2 + t) for the largest root t of g.
            const Vec3 a2 = e.axes.cwiseProduct(e.axes);
            auto g = [&](double t) {
              double acc = 0.0;
              for (int i = 0; i < 3; ++i) {
                const double q = e.axes(i) * x(i) / (a2(i) + t);
                acc += q * q;
              }
              return acc - 1.0;
            };
            auto dg = [&](double t) {
              double acc = 0.0;
              for (int i = 0; i < 3; ++i) {
                const double d = a2(i) + t;
                acc += -2.0 * a2(i) * x(i) * x(i) / (d * d * d);
              }
              return acc;
            };
            const double amin2 = a2.minCoeff();
            double lo = -amin2 * (1.0 - 1e-12);
            double hi = e.axes.maxCoeff() * x.norm() + 1e-12;
            if (g(lo) <= 0.0) throw GeometryError("point too far from surface for a unique projection");
            double t = x.cwiseQuotient(e.axes).squaredNorm() >= 1.0 ? 0.5 * hi : 0.5 * lo;
            for (int it = 0; it < 200; ++it) {
              const double gv = g(t);
              if (gv > 0.0) lo = t; else hi = t;
              double next = t - gv / dg(t);
              if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
              if (std::abs(next - t) <= 1e-15 * (std::abs(t) + amin2)) {
                t = next;
                break;
              }
              t = next;
            }
            return Vec3(x.array() * a2.array() / (a2.array() + t));
          },
          [&](const Axisymmetric&) -> Vec3 {
            const double rq = std::hypot(x.x(), x.y());
            const double zq = x.z();
            const double cphi = rq > 0.0 ? x.x() / rq : 1.0;
            const double sphi = rq > 0.0 ? x.y() / rq : 0.0;
            double theta = polar_angle(x);
            for (int it = 0; it < 60; ++it) {
              const auto v = profile(theta);
              const double st = std::sin(theta), ct = std::cos(theta);
              const double X = v.rho * st, Z = v.rho * ct;
              const double Xp = v.drho * st + v.rho * ct, Zp = v.drho * ct - v.rho * st;
              const double Xpp = v.d2rho * st + 2.0 * v.drho * ct - v.rho * st;
              const double Zpp = v.d2rho * ct - 2.0 * v.drho * st - v.rho * ct;
              const double g = (X - rq) * Xp + (Z - zq) * Zp;
              const double dg = Xp * Xp + Zp * Zp + (X - rq) * Xpp + (Z - zq) * Zpp;
              if (!(dg > 0.0)) throw GeometryError("point too far from surface for a unique projection");
              const double step = g / dg;
              theta = std::clamp(theta - step, 0.0, kPi);
              if (std::abs(step) < 1e-15) break;
            }
            const auto v = profile(theta);
            const double X = v.rho * std::sin(theta);
            return Vec3(X * cphi, X * sphi, v.rho * std::cos(theta));
          }},
      shape_);
  if (implicit(x) < 0.0 && (x - p).norm() >= reach)
    throw GeometryError("point too far from surface for a unique projection");
  return p;
}

Vec3 Surface::unit_normal(const Vec3& p) const { return gradient(p).normalized(); }

PrincipalCurvatures Surface::curvatures(const Vec3& p) const {
  return std::visit(Overloaded{[&](const Sphere& s) -> PrincipalCurvatures {
                                 return {1.0 / s.radius, 1.0 / s.radius};
                               },
                               [&](const Ellipsoid&) -> PrincipalCurvatures {
                                 return implicit_curvatures(gradient(p), hessian(p));
                               },
                               [&](const Axisymmetric&) -> PrincipalCurvatures {
                                 const double theta = polar_angle(p);
                                 const auto v = profile(theta);
                                 const double w = v.rho * v.rho + v.drho * v.drho;
                                 const double meridian =
                                     (v.rho * v.rho + 2.0 * v.drho * v.drho - v.rho * v.d2rho) / std::pow(w, 1.5);
                                 const double st = std::sin(theta);
                                 double parallel = meridian;
                                 if (st > 1e-6) {
                                   parallel = (v.rho * st - v.drho * std::cos(theta)) / (v.rho * st * std::sqrt(w));
                                 }
                                 return {meridian, parallel};
                               }},
                    shape_);
}

Vec3 Surface::mean_curvature_vector(const Vec3& p) const { return -curvatures(p).mean() * unit_normal(p); }

double Surface::normal_curvature(const Vec3& p, const Vec3& u) const {
  const Vec3 n = unit_normal(p);
  Vec3 t = u - u.dot(n) * n;
  const double tn = t.norm();
  if (tn == 0.0) return 0.0;
  t /= tn;
  return std::visit(Overloaded{[&](const Sphere& s) { return 1.0 / s.radius; },
                               [&](const Ellipsoid&) {
                                 return t.dot(hessian(p) * t) / gradient(p).norm();
                               },
                               [&](const Axisymmetric&) {
                                 const auto k = curvatures(p);
                                 Vec3 e_theta, e_phi;
                                 spherical_frame(p, e_theta, e_phi);
                                 const double along_parallel = t.dot(e_phi);
                                 const double c2 = along_parallel * along_parallel;
                                 return k.k2 * c2 + k.k1 * (1.0 - c2);
                               }},
                    shape_);
}

double Surface::short_distance(const Vec3& p, const Vec3& q) const {
  if (const auto* s = std::get_if<Sphere>(&shape_)) {
    return s->radius * std::atan2(p.cross(q).norm(), p.dot(q));
  }
  const Vec3 d = q - p;
  const double c = d.norm();
  if (c == 0.0) return 0.0;
  const Vec3 u = d / c;
  const double k = 0.5 * (normal_curvature(p, u) + normal_curvature(q, u));
  return c * (1.0 + c * c * k * k / 24.0);
}

Vec3 Surface::interpolate(const Vec3& p, const Vec3& q, double f) const {
  if (f == 0.0) return p;
  if (f == 1.0) return q;
  if (const auto* s = std::get_if<Sphere>(&shape_)) {
    const double angle = std::atan2(p.cross(q).norm(), p.dot(q));
    if (angle < 1e-300) return p;
    const double sa = std::sin(angle);
    const Vec3 v = (std::sin((1.0 - f) * angle) * p + std::sin(f * angle) * q) / sa;
    return s->radius * v.normalized();
  }
  return project((1.0 - f) * p + f * q);
}

CurvatureBounds Surface::sample_curvature_bounds() const {
  CurvatureBounds b;
  b.min_principal_curvature = std::numeric_limits<double>::infinity();
  auto absorb = [&](const PrincipalCurvatures& k) {
    b.max_second_fundamental_form = std::max(b.max_second_fundamental_form, k.norm());
    b.max_gauss_curvature = std::max(b.max_gauss_curvature, k.gauss());
    b.min_principal_curvature = std::min({b.min_principal_curvature, k.k1, k.k2});
    b.max_principal_curvature = std::max({b.max_principal_curvature, k.k1, k.k2});
  };
  std::visit(Overloaded{[&](const Sphere& s) { absorb({1.0 / s.radius, 1.0 / s.radius}); },
                        [&](const Ellipsoid& e) {
                          constexpr int nt = 97, np = 96;
                          for (int i = 0; i < nt; ++i) {
                            const double th = i * kPi / (nt - 1);
                            for (int j = 0; j < np; ++j) {
                              const double ph = j * 2.0 * kPi / np;
                              const Vec3 p(e.axes.x() * std::sin(th) * std::cos(ph),
                                           e.axes.y() * std::sin(th) * std::sin(ph), e.axes.z() * std::cos(th));
                              absorb(curvatures(p));
                            }
                          }
                          for (int i = 0; i < 3; ++i) {
                            Vec3 p = Vec3::Zero();
                            p(i) = e.axes(i);
                            absorb(curvatures(p));
                          }
                        },
                        [&](const Axisymmetric&) {
                          constexpr int nt = 1025;
                          for (int i = 0; i < nt; ++i) {
                            const double th = i * kPi / (nt - 1);
                            const double r = profile(th).rho;
                            absorb(curvatures(Vec3(r * std::sin(th), 0.0, r * std::cos(th))));
                          }
                        }},
             shape_);
  return b;
}

double Surface::convexity_radius() const {
  const double k = bounds_.max_gauss_curvature;
  if (k <= 0.0) return 4.0 * kPi;
  return std::min(4.0 * kPi, kPi / (2.0 * std::sqrt(k)));
}

Vec3 Surface::sweep_axis() const {
  if (const auto* e = std::get_if<Ellipsoid>(&shape_)) {
    Vec3 axis = Vec3::Zero();
    int i = 0;
    // Ties resolve to z so that a degenerate ellipsoid sweeps like a sphere.
    double best = e->axes.z();
    i = 2;
    for (int k = 1; k >= 0; --k) {
      if (e->axes(k) > best * (1.0 + 1e-12)) {
        best = e->axes(k);
        i = k;
      }
    }
    axis(i) = 1.0;
    return axis;
  }
  return Vec3::UnitZ();
}

std::pair<double, double> Surface::sweep_range() const {
  return std::visit(Overloaded{[&](const Sphere& s) { return std::pair{-s.radius, s.radius}; },
                               [&](const Ellipsoid& e) {
                                 const double h = e.axes.dot(sweep_axis());
                                 return std::pair{-h, h};
                               },
                               [&](const Axisymmetric&) {
                                 return std::pair{-profile(kPi).rho, profile(0.0).rho};
                               }},
                    shape_);
}

double Surface::axisym_theta_at_height(double height) const {
  // z(theta) = rho cos(theta) decreases monotonically on a convex profile.
  double lo = 0.0, hi = kPi;
  for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (profile(mid).rho * std::cos(mid) > height) lo = mid; else hi = mid;
  }
  return 0.5 * (lo + hi);
}

Vec3 Surface::slice_point(double height, double phi) const {
  const Vec3 axis = sweep_axis();
  Vec3 e1, e2;
  cut_basis(axis, e1, e2);
  const Vec3 dir = std::cos(phi) * e1 + std::sin(phi) * e2;
  const auto [lo, hi] = sweep_range();
  const double h = std::clamp(height, lo, hi);
  const double radial = std::visit(
      Overloaded{[&](const Sphere& s) { return std::sqrt(std::max(0.0, s.radius * s.radius - h * h)); },
                 [&](const Ellipsoid& e) {
                   const double ha = e.axes.dot(axis);
                   const double q = dir.cwiseQuotient(e.axes).squaredNorm();
                   return std::sqrt(std::max(0.0, 1.0 - (h / ha) * (h / ha)) / q);
                 },
                 [&](const Axisymmetric&) {
                   if (h >= hi || h <= lo) return 0.0;
                   const double th = axisym_theta_at_height(h);
                   return profile(th).rho * std::sin(th);
                 }},
      shape_);
  return h * axis + radial * dir;
}

Normalized normalize_scaling(const Surface& surface) {
  const auto& b = surface.curvature_bounds();
  if (!(b.min_principal_curvature > 0.0)) {
    throw GeometryError("surface is not strictly convex (min principal curvature " +
                        std::to_string(b.min_principal_curvature) + ")");
  }
  // (M1): |A| <= 1/16; (M2): K <= 1/64, which also gives injectivity radius
  // >= pi / sqrt(K) >= 8 pi for closed convex surfaces.
  const double required = std::max(16.0 * b.max_second_fundamental_form, 8.0 * std::sqrt(b.max_gauss_curvature));
  if (required <= 1.0) return {surface, 1.0};
  const double scale = 1.05 * required;
  return {surface.scaled(scale), scale};
}

double second_fundamental_form_norm(const Surface& surface, const Vec3& p) { return surface.curvatures(p).norm(); }

Vec3 normal_component(const Surface& surface, const Vec3& p, const Vec3& v) {
  const Vec3 n = surface.unit_normal(p);
  return v.dot(n) * n;
}

}  // namespace sweepwidth
