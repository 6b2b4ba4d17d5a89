#pragma once

// Generators and brute-force oracles shared by the unit and acceptance tests.

#include "sweepwidth/loop_curve.hpp"
#include "sweepwidth/rng.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <queue>
#include <random>
#include <vector>

namespace sweepwidth::testing {

inline Vec3 random_unit(std::mt19937_64& eng) {
  std::normal_distribution<double> n;
  Vec3 v(n(eng), n(eng), n(eng));
  return v.normalized();
}

inline Vec3 random_surface_point(const Surface& s, std::mt19937_64& eng) {
  return s.radial_project(random_unit(eng));
}

inline Vec3 random_tangent(const Surface& s, const Vec3& p, std::mt19937_64& eng) {
  const Vec3 nu = s.unit_normal(p);
  Vec3 v = random_unit(eng);
  v -= v.dot(nu) * nu;
  return v.normalized();
}

/// Point near p at roughly ambient distance r along a random tangent.
inline Vec3 nearby_point(const Surface& s, const Vec3& p, double r, std::mt19937_64& eng) {
  return s.project(p + r * random_tangent(s, p, eng));
}

inline double polyline_length(const std::vector<Vec3>& pts) {
  double len = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) len += (pts[i] - pts[i - 1]).norm();
  return len;
}

/// Shortest path on a lat-long graph of the surface (16-neighbour stencil),
/// then refined: the path is resampled and relaxed by repeated midpoint
/// projection with fixed ends, doubling the sample count up to 64.
inline double dijkstra_geodesic_length(const Surface& s, const Vec3& p, const Vec3& q, int n_theta = 120,
                                       int n_phi = 240) {
  const double pi = std::numbers::pi;
  auto node_point = [&](int i, int j) {
    const double th = (i + 0.5) * pi / n_theta;
    const double ph = 2.0 * pi * j / n_phi;
    return s.radial_project(Vec3(std::sin(th) * std::cos(ph), std::sin(th) * std::sin(ph), std::cos(th)));
  };
  std::vector<Vec3> nodes(static_cast<std::size_t>(n_theta * n_phi));
  for (int i = 0; i < n_theta; ++i) {
    for (int j = 0; j < n_phi; ++j) nodes[static_cast<std::size_t>(i * n_phi + j)] = node_point(i, j);
  }
  auto nearest = [&](const Vec3& x) {
    std::size_t best = 0;
    for (std::size_t k = 1; k < nodes.size(); ++k) {
      if ((nodes[k] - x).squaredNorm() < (nodes[best] - x).squaredNorm()) best = k;
    }
    return best;
  };
  const std::size_t src = nearest(p);
  const std::size_t dst = nearest(q);
  std::vector<double> dist(nodes.size(), std::numeric_limits<double>::infinity());
  std::vector<std::size_t> prev(nodes.size(), nodes.size());
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> heap;
  dist[src] = 0.0;
  heap.push({0.0, src});
  static const int di[] = {-1, -1, -1, 0, 0, 1, 1, 1, -2, -2, -1, -1, 1, 1, 2, 2};
  static const int dj[] = {-1, 0, 1, -1, 1, -1, 0, 1, -1, 1, -2, 2, -2, 2, -1, 1};
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[u]) continue;
    if (u == dst) break;
    const int i = static_cast<int>(u) / n_phi;
    const int j = static_cast<int>(u) % n_phi;
    for (int e = 0; e < 16; ++e) {
      const int ii = i + di[e];
      if (ii < 0 || ii >= n_theta) continue;
      const int jj = ((j + dj[e]) % n_phi + n_phi) % n_phi;
      const auto v = static_cast<std::size_t>(ii * n_phi + jj);
      const double nd = d + (nodes[v] - nodes[u]).norm();
      if (nd < dist[v]) {
        dist[v] = nd;
        prev[v] = u;
        heap.push({nd, v});
      }
    }
  }
  std::vector<Vec3> path{q};
  for (std::size_t v = prev[dst]; v != nodes.size() && v != src; v = prev[v]) path.push_back(nodes[v]);
  path.push_back(p);
  std::reverse(path.begin(), path.end());

  auto resample = [&](const std::vector<Vec3>& pts, int m) {
    const double total = polyline_length(pts);
    std::vector<Vec3> out{pts.front()};
    double walked = 0.0;
    std::size_t seg = 0;
    for (int k = 1; k < m; ++k) {
      const double target = total * k / m;
      while (seg + 1 < pts.size() && walked + (pts[seg + 1] - pts[seg]).norm() < target) {
        walked += (pts[seg + 1] - pts[seg]).norm();
        ++seg;
      }
      const double len = (pts[seg + 1] - pts[seg]).norm();
      const double f = len > 0.0 ? (target - walked) / len : 0.0;
      out.push_back(s.project(pts[seg] + f * (pts[seg + 1] - pts[seg])));
    }
    out.push_back(pts.back());
    return out;
  };
  std::vector<Vec3> curve = path;
  for (int m = 8; m <= 64; m *= 2) {
    curve = resample(curve, m);
    for (int sweep = 0; sweep < 400; ++sweep) {
      for (std::size_t k = 1; k + 1 < curve.size(); ++k) curve[k] = s.project(0.5 * (curve[k - 1] + curve[k + 1]));
    }
  }
  return polyline_length(curve);
}

/// Arc over a parameter interval of length `span`: a geodesic-like base of
/// speed `speed` from p plus a projected sine bump of ambient size `amplitude`.
inline std::vector<Vec3> perturbed_arc(const Surface& s, const Vec3& p, double span, double speed, double amplitude,
                                       int mode, int cells, std::mt19937_64& eng) {
  const Vec3 t = random_tangent(s, p, eng);
  const Vec3 side = s.unit_normal(p).cross(t).normalized();
  const Vec3 q = s.project(p + speed * span * t);
  std::vector<Vec3> arc(static_cast<std::size_t>(cells + 1));
  for (int i = 0; i <= cells; ++i) {
    const double u = static_cast<double>(i) / cells;
    const Vec3 base = s.interpolate(p, q, u);
    const double bump = amplitude * std::sin(mode * std::numbers::pi * u);
    arc[static_cast<std::size_t>(i)] = i == 0 ? p : i == cells ? q : s.project(base + bump * side);
  }
  return arc;
}

inline double max_cell_speed(const std::vector<Vec3>& arc, double span) {
  const double h = span / static_cast<double>(arc.size() - 1);
  double best = 0.0;
  for (std::size_t i = 1; i < arc.size(); ++i) best = std::max(best, (arc[i] - arc[i - 1]).norm() / h);
  return best;
}

}  // namespace sweepwidth::testing
