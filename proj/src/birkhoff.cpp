#include "sweepwidth/birkhoff.hpp"

#include "sweepwidth/geodesic.hpp"
#include "sweepwidth/rng.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

namespace sweepwidth {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

double wrap(double x) {
  double y = std::fmod(x, kTwoPi);
  if (y < 0.0) y += kTwoPi;
  if (y >= kTwoPi) y -= kTwoPi;
  return y;
}

PsiResult assemble(std::vector<PsiStage> stages) {
  PsiResult r;
  r.stages = std::move(stages);
  for (std::size_t i = 0; i + 1 < r.stages.size(); ++i) {
    r.step_distances.push_back(w12_distance(r.stages[i].curve, r.stages[i + 1].curve));
  }
  r.energy_drop = r.input().energy() - r.output().energy();
  r.length_drop = r.input().length() - r.output().length();
  return r;
}

// Arclength from parameter 0 to x along the knot polygon.
class Arclength {
 public:
  explicit Arclength(const LoopCurve& c) : c_(c), cum_(c.knot_count() + 1, 0.0) {
    const auto& d = c.cell_lengths();
    for (std::size_t i = 0; i < d.size(); ++i) cum_[i + 1] = cum_[i] + d[i];
    const auto& params = c.params();
    // The first knot may sit after 0; shift so that s(0) = 0.
    offset_ = params.front() > 0.0 ? raw(0.0) : 0.0;
  }

  double operator()(double x) const {
    double s = raw(x) - offset_;
    if (s < 0.0) s += c_.length();
    return s;
  }

 private:
  double raw(double x) const {
    const auto& params = c_.params();
    const auto& d = c_.cell_lengths();
    const std::size_t n = params.size();
    x = wrap(x);
    auto it = std::upper_bound(params.begin(), params.end(), x);
    const std::size_t i = it == params.begin() ? n - 1 : static_cast<std::size_t>(it - params.begin()) - 1;
    double start = params[i];
    if (x < start) x += kTwoPi;
    const std::size_t j = (i + 1) % n;
    const double dx = (j == 0 ? params[0] + kTwoPi : params[j]) - start;
    return cum_[i] + d[i] * (x - start) / dx;
  }

  const LoopCurve& c_;
  std::vector<double> cum_;
  double offset_ = 0.0;
};

double grid_param(std::size_t k, std::size_t n) { return kTwoPi * static_cast<double>(k) / static_cast<double>(n); }

// Squared w12 bound for the reparametrization step, from the integral bound
// I on (P' - 1)^2, Lipschitz constant A, curvature bound kappa and L corners.
double reparam_bound_sq(double I, double A, double kappa, int L) {
  if (!(I > 0.0)) return 0.0;
  const double stretch = A * A * I;
  const double smooth = 4.0 * std::pow(A, 4) * kappa * kappa * I;
  const double corners = 8.0 * A * A * L * std::sqrt(kPi * I);
  const double derivative = 2.0 * stretch + 2.0 * (smooth + corners);
  return 5.0 * derivative;
}

}  // namespace

const LoopCurve& PsiResult::stage(const std::string& name) const {
  for (const auto& s : stages) {
    if (s.name == name) return s.curve;
  }
  throw GeometryError("no Psi stage named " + name);
}

LoopCurve psi_curve(const LoopCurve& c) {
  if (c.is_point()) return c;
  const LoopCurve even = linear_replacement(c, Parity::Even);
  const LoopCurve odd = linear_replacement(even, Parity::Odd);
  return reparametrize_constant_speed(odd, 0.0);
}

PsiResult psi(const LoopCurve& c) {
  if (c.is_point()) return assemble({{"input", c}, {"gamma_e", c}, {"gamma_o", c}, {"output", c}});
  LoopCurve even = linear_replacement(c, Parity::Even);
  LoopCurve odd = linear_replacement(even, Parity::Odd);
  LoopCurve out = reparametrize_constant_speed(odd, 0.0);
  return assemble({{"input", c}, {"gamma_e", std::move(even)}, {"gamma_o", std::move(odd)}, {"output", std::move(out)}});
}

PsiResult psi_four_step(const LoopCurve& c) {
  if (c.is_point()) {
    return assemble({{"input", c}, {"gamma_e", c}, {"tilde_gamma_e", c}, {"tilde_gamma_o", c}, {"output", c}});
  }
  const int L = c.L();
  const int parts = 2 * L;
  const int cells = 2 * kCellsPerInterval;

  LoopCurve even = linear_replacement(c, Parity::Even);
  LoopCurve tilde_even = reparametrize_constant_speed(even, 0.0);

  // Images x~_j of the partition points under the constant-speed map.
  const Arclength arclength(even);
  std::vector<double> xt(static_cast<std::size_t>(parts) + 2);
  for (int j = 0; j < parts; ++j) {
    const double s = j == 0 ? 0.0 : arclength(even.partition_point(j));
    xt[static_cast<std::size_t>(j)] = kTwoPi * s / even.length();
  }
  xt[static_cast<std::size_t>(parts)] = kTwoPi;
  xt[static_cast<std::size_t>(parts) + 1] = kTwoPi + xt[1];

  // (A2): geodesics on [x~_a, x~_{a+2}], a odd, with the same endpoints as
  // the odd replacement of gamma_e.
  std::vector<std::pair<double, Vec3>> knots;
  knots.reserve(static_cast<std::size_t>(L * cells));
  std::vector<double> breaks;
  double anchor = 0.0;
  for (int j = 0; j < L; ++j) {
    const int a = 2 * j + 1;
    const Vec3 pa = even.evaluate(even.partition_point(a));
    const Vec3 pb = even.evaluate(even.partition_point(a + 2));
    const auto seg = geodesic_points(c.surface(), pa, pb, cells);
    const double lo = xt[static_cast<std::size_t>(a)];
    const double hi = xt[static_cast<std::size_t>(a) + 2];
    for (int i = 0; i < cells; ++i) {
      const double x = wrap(lo + (hi - lo) * i / cells);
      knots.emplace_back(x, seg[static_cast<std::size_t>(i)]);
      if (a == parts - 1 && i == kCellsPerInterval) anchor = x;
    }
    breaks.push_back(wrap(lo));
  }
  std::stable_sort(knots.begin(), knots.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
  std::vector<double> params;
  std::vector<Vec3> points;
  for (const auto& [x, p] : knots) {
    if (!params.empty() && x <= params.back()) continue;  // collapsed interval
    params.push_back(x);
    points.push_back(p);
  }
  std::sort(breaks.begin(), breaks.end());
  LoopCurve tilde_odd(c.surface_ptr(), L, std::move(params), std::move(points), std::move(breaks));

  // (B2): the anchor is the midpoint of the wrap-around odd piece, which is
  // where psi's odd curve sits at x_0.
  LoopCurve out = reparametrize_constant_speed(tilde_odd, anchor, 0.0);
  return assemble({{"input", c},
                   {"gamma_e", std::move(even)},
                   {"tilde_gamma_e", std::move(tilde_even)},
                   {"tilde_gamma_o", std::move(tilde_odd)},
                   {"output", std::move(out)}});
}

bool Property3Bound::holds(double slack) const { return dist <= bound + slack; }

Property3Bound property3_bound(const LoopCurve& c) {
  const PsiResult r = psi(c);
  const LoopCurve& even = r.stage("gamma_e");
  const LoopCurve& odd = r.stage("gamma_o");
  const LoopCurve& out = r.output();
  if (out.is_point()) {
    if (c.is_point()) return {};
    throw GeometryError("property-(3) bound undefined: Psi(c) has zero length");
  }
  const int L = c.L();
  const double lemma = 2.0 * (1.0 + 4.0 / (static_cast<double>(L) * L));
  Property3Bound b;
  b.dist = w12_distance(c, out);
  b.even_term = std::sqrt(lemma * std::max(0.0, c.energy() - even.energy()));
  b.odd_term = std::sqrt(lemma * std::max(0.0, even.energy() - odd.energy()));
  b.lipschitz = std::max({static_cast<double>(L), out.max_speed()});
  const double I = kTwoPi * std::max(0.0, odd.energy() - out.energy()) / out.energy();
  const double kappa = c.surface().curvature_bounds().max_principal_curvature;
  b.reparam_term = std::sqrt(reparam_bound_sq(I, b.lipschitz, kappa, L));
  b.bound = b.even_term + b.odd_term + b.reparam_term;
  return b;
}

bool ReparamMap::monotone() const {
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    if (values[i + 1] < values[i]) return false;
  }
  return true;
}

ReparamMap reparam_map(const LoopCurve& c_before, const LoopCurve& c_after, double tolerance) {
  const int n = std::max(c_before.grid_size(), c_after.grid_size());
  const auto un = static_cast<std::size_t>(n);
  ReparamMap m;
  m.params.resize(un);
  m.values.resize(un);
  m.derivatives.resize(un);
  const double len = c_after.length();
  const double slack = tolerance * (1.0 + len);
  if (std::abs(c_before.length() - len) > slack) {
    throw GeometryError("reparam_map: curves have different lengths");
  }
  if (c_after.is_point()) {
    for (std::size_t k = 0; k < un; ++k) m.params[k] = m.values[k] = grid_param(k, un);
    std::fill(m.derivatives.begin(), m.derivatives.end(), 1.0);
    return m;
  }
  const Arclength arclength(c_before);
  const auto before = c_before.sample(n);
  for (std::size_t k = 0; k < un; ++k) {
    const double x = grid_param(k, un);
    m.params[k] = x;
    m.values[k] = k == 0 ? 0.0 : kTwoPi * arclength(x) / len;
    if ((c_after.evaluate(m.values[k]) - before[k]).norm() > slack) {
      throw GeometryError("reparam_map: images differ beyond tolerance");
    }
  }
  const double h = kTwoPi / n;
  for (std::size_t k = 0; k < un; ++k) {
    const double next = k + 1 == un ? kTwoPi : m.values[k + 1];
    m.derivatives[k] = (next - m.values[k]) / h;
    m.deviation_integral += h * (m.derivatives[k] - 1.0) * (m.derivatives[k] - 1.0);
  }
  return m;
}

double fixed_point_residual(const LoopCurve& c) {
  if (c.is_point()) return 0.0;
  return w12_distance(c, psi_curve(c)) / (1.0 + c.length());
}

bool is_geodesic(const LoopCurve& c, double tol) { return fixed_point_residual(c) <= tol; }

double geodesic_residual(const LoopCurve& c) {
  if (c.is_point()) return 0.0;
  const auto& p = c.points();
  const auto& x = c.params();
  const std::size_t n = p.size();
  double lo = std::numeric_limits<double>::infinity();
  double hi = 0.0;
  double bend = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const std::size_t prev = (k + n - 1) % n;
    const std::size_t next = (k + 1) % n;
    const double dx = next == 0 ? x[0] + kTwoPi - x[k] : x[next] - x[k];
    const Vec3 e0 = p[k] - p[prev];
    const Vec3 e1 = p[next] - p[k];
    const double speed = c.cell_lengths()[k] / dx;
    lo = std::min(lo, speed);
    hi = std::max(hi, speed);
    if (e0.norm() == 0.0 || e1.norm() == 0.0) continue;
    Vec3 kappa = (e1.normalized() - e0.normalized()) / (0.5 * (e0.norm() + e1.norm()));
    const Vec3 nu = c.surface().unit_normal(p[k]);
    kappa -= kappa.dot(nu) * nu;
    bend = std::max(bend, kappa.norm());
  }
  return std::max(bend * c.length() / kTwoPi, (hi - lo) / hi);
}

double psi_continuity_probe(const LoopCurve& c, double perturbation_scale, int trials, std::uint64_t seed) {
  if (perturbation_scale <= 0.0 || trials <= 0) return 0.0;
  const LoopCurve base = psi_curve(c);
  const int n = c.grid_size();
  const auto un = static_cast<std::size_t>(n);
  const auto samples = c.sample(n);
  double worst = 0.0;
  for (int t = 0; t < trials; ++t) {
    auto eng = stream_engine(seed, static_cast<std::uint64_t>(t));
    std::normal_distribution<double> normal;
    constexpr int kModes = 5;
    std::vector<Vec3> a(kModes), b(kModes);
    for (int m = 0; m < kModes; ++m) {
      a[static_cast<std::size_t>(m)] = Vec3(normal(eng), normal(eng), normal(eng));
      b[static_cast<std::size_t>(m)] = Vec3(normal(eng), normal(eng), normal(eng));
    }
    std::vector<Vec3> field(un);
    for (std::size_t k = 0; k < un; ++k) {
      const double x = grid_param(k, un);
      Vec3 v = Vec3::Zero();
      for (int m = 0; m < kModes; ++m) {
        v += a[static_cast<std::size_t>(m)] * std::cos(m * x) + b[static_cast<std::size_t>(m)] * std::sin(m * x);
      }
      field[k] = v;
    }
    const std::vector<Vec3> zero(un, Vec3::Zero());
    double alpha = perturbation_scale / w12_distance(field, zero);
    LoopCurve moved = c;
    for (int attempt = 0; attempt < 4; ++attempt) {
      std::vector<Vec3> pts(un);
      for (std::size_t k = 0; k < un; ++k) pts[k] = c.surface().project(samples[k] + alpha * field[k]);
      moved = LoopCurve::from_grid(c.surface_ptr(), c.L(), std::move(pts));
      const double d = w12_distance(samples, moved.points());
      if (d <= perturbation_scale) break;
      alpha *= 0.95 * perturbation_scale / d;
    }
    worst = std::max(worst, w12_distance(base, psi_curve(moved)));
  }
  return worst;
}

std::vector<LoopCurve> homotopy_frames(const LoopCurve& c, HomotopyStage stage, int s_samples) {
  if (s_samples < 2) throw GeometryError("homotopy needs at least two frames");
  const LoopCurve even = linear_replacement(c, Parity::Even);
  const int n = c.grid_size();
  const auto un = static_cast<std::size_t>(n);
  const auto frames = static_cast<std::size_t>(s_samples);
  std::vector<std::vector<Vec3>> pts(frames, std::vector<Vec3>(un));

  if (stage == HomotopyStage::GammaToEven) {
    const auto from = c.sample(n);
    const auto to = even.sample(n);
    for (std::size_t k = 0; k < un; ++k) {
      const auto path = geodesic_points(c.surface(), from[k], to[k], s_samples - 1);
      for (std::size_t f = 0; f < frames; ++f) pts[f][k] = path[f];
    }
  } else {
    if (even.is_point()) return std::vector<LoopCurve>(frames, even);
    const LoopCurve tilde = reparametrize_constant_speed(even, 0.0);
    const ReparamMap P = reparam_map(even, tilde);
    for (std::size_t f = 0; f < frames; ++f) {
      const double s = static_cast<double>(f) / static_cast<double>(frames - 1);
      for (std::size_t k = 0; k < un; ++k) {
        pts[f][k] = tilde.evaluate((1.0 - s) * P.values[k] + s * P.params[k]);
      }
    }
  }
  std::vector<LoopCurve> out;
  out.reserve(frames);
  for (auto& p : pts) out.push_back(LoopCurve::from_grid(c.surface_ptr(), c.L(), std::move(p)));
  return out;
}

std::string psi_diagnostic_json(const PsiResult& r, const Property3Bound* bound) {
  nlohmann::json j;
  nlohmann::json stages = nlohmann::json::array();
  for (const auto& s : r.stages) {
    stages.push_back({{"name", s.name}, {"energy", s.curve.energy()}, {"length", s.curve.length()}});
  }
  j["stages"] = stages;
  j["step_distances"] = r.step_distances;
  j["energy_drop"] = r.energy_drop;
  j["length_drop"] = r.length_drop;
  if (bound) {
    j["bound"] = {{"dist", bound->dist},
                  {"bound", bound->bound},
                  {"even_term", bound->even_term},
                  {"odd_term", bound->odd_term},
                  {"reparam_term", bound->reparam_term},
                  {"lipschitz", bound->lipschitz}};
  }
  return j.dump(2);
}

}  // namespace sweepwidth
