#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <ostream>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "football/error.hpp"
#include "football/metric.hpp"
#include "football/quadrature.hpp"
#include "football/soliton.hpp"

namespace football {

inline constexpr double kDefaultQuadratureTolerance = 1e-10;

namespace detail {

inline void require_finite_window(const RotSymMetric& m, double ta, double tb) {
  require(std::isfinite(ta) && std::isfinite(tb), ErrorCode::DivergentIntegral,
          m.name + ": open end at infinite distance");
  require(ta <= tb && ta >= m.lo && tb <= m.hi, ErrorCode::DomainError,
          m.name + ": integration window outside the chart domain");
}

template <class F>
double integrate_metric(const RotSymMetric& m, F&& integrand, double ta, double tb, double tol) {
  if (ta == tb) return 0.0;
  const bool sing_a = m.closed_lo && ta == m.lo;
  const bool sing_b = m.closed_hi && tb == m.hi;
  const double value = quadrature::endpoint_singular(integrand, ta, tb, sing_a, sing_b, tol).value;
  require(std::isfinite(value), ErrorCode::DivergentIntegral, m.name + ": integral does not converge");
  return value;
}

}  // namespace detail

/// Area 2*pi * integral sqrt(g_tt g_thth) dt over [ta, tb].
[[nodiscard]] inline double area(const RotSymMetric& m, double ta, double tb,
                                 double tol = kDefaultQuadratureTolerance) {
  detail::require_finite_window(m, ta, tb);
  auto density = [&m](double t) { return std::sqrt(m.g_tt(t).value * m.g_thth(t).value); };
  return 2.0 * std::numbers::pi * detail::integrate_metric(m, density, ta, tb, tol);
}

/// Total area; unbounded charts (cigar, cylinder) have infinite area and throw DivergentIntegral.
[[nodiscard]] inline double area(const RotSymMetric& m, double tol = kDefaultQuadratureTolerance) {
  require(m.finite_domain(), ErrorCode::DivergentIntegral, m.name + " has infinite area");
  return area(m, m.lo, m.hi, tol);
}

/// Length of the meridian segment t in [ta, tb]: integral sqrt(g_tt) dt.
[[nodiscard]] inline double meridian_distance(const RotSymMetric& m, double ta, double tb,
                                              double tol = kDefaultQuadratureTolerance) {
  detail::require_finite_window(m, ta, tb);
  auto speed = [&m](double t) { return std::sqrt(m.g_tt(t).value); };
  return detail::integrate_metric(m, speed, ta, tb, tol);
}

// ---------------------------------------------------------------------------
// Mesh distances

/**
 * Grid graph over rings t_0 < ... < t_{N_t - 1} and N_theta meridians, with
 * single nodes for closed poles. Rings cluster toward closed poles (cosine
 * spacing) where g_tt blows up; open ends are included as rings.
 * Adjacency is stored in CSR form.
 */
struct SurfaceMesh {
  Chart chart = Chart::tau;
  std::vector<double> rings;
  int n_t = 0;
  int n_theta = 0;
  bool pole_lo = false;
  bool pole_hi = false;
  bool collapsed_fiber = false;
  double t_lo = 0.0;
  double t_hi = 0.0;
  std::vector<std::size_t> offsets;
  std::vector<std::size_t> targets;
  std::vector<double> lengths;

  [[nodiscard]] std::size_t node_count() const noexcept { return offsets.empty() ? 0 : offsets.size() - 1; }
  [[nodiscard]] std::size_t edge_count() const noexcept { return targets.size() / 2; }
  [[nodiscard]] int fiber_size() const noexcept { return collapsed_fiber ? 1 : n_theta; }
  /// Node on ring i, meridian j (taken mod N_theta).
  [[nodiscard]] std::size_t ring_node(int i, int j) const noexcept {
    const int per_ring = fiber_size();
    return (pole_lo ? 1u : 0u) + static_cast<std::size_t>(i) * static_cast<std::size_t>(per_ring) +
           static_cast<std::size_t>(((j % per_ring) + per_ring) % per_ring);
  }
  [[nodiscard]] std::size_t pole_lo_node() const noexcept { return 0; }
  [[nodiscard]] std::size_t pole_hi_node() const noexcept { return node_count() - 1; }
};

/// Optional compact window [lo, hi] in the metric's chart; required for unbounded charts.
struct MeshWindow {
  double lo = 0.0;
  double hi = 0.0;
};

/**
 * Builds the 8-neighbour mesh. Edge length is the metric length of the
 * straight chart segment with coefficients at the segment midpoint; spokes
 * from a pole use the exact meridian integral (g_tt is singular there).
 * A collapsed fiber keeps one node per ring.
 */
[[nodiscard]] inline SurfaceMesh build_mesh(const RotSymMetric& m, int n_t, int n_theta,
                                            std::optional<MeshWindow> window = std::nullopt) {
  require(n_t >= 8 && n_theta >= 8, ErrorCode::ResolutionTooLow, "mesh needs N_t, N_theta >= 8");
  double lo = m.lo;
  double hi = m.hi;
  if (window) {
    lo = window->lo;
    hi = window->hi;
    require(lo < hi && lo >= m.lo && hi <= m.hi, ErrorCode::DomainError, "mesh window outside the chart domain");
  }
  require(std::isfinite(lo) && std::isfinite(hi), ErrorCode::DomainError,
          m.name + ": unbounded chart must be meshed on a compact window");

  SurfaceMesh mesh;
  mesh.chart = m.chart;
  mesh.n_t = n_t;
  mesh.n_theta = n_theta;
  mesh.pole_lo = m.closed_lo && lo == m.lo;
  mesh.pole_hi = m.closed_hi && hi == m.hi;
  mesh.collapsed_fiber = m.collapsed_fiber;
  mesh.t_lo = lo;
  mesh.t_hi = hi;

  const double span = hi - lo;
  mesh.rings.resize(static_cast<std::size_t>(n_t));
  for (int i = 0; i < n_t; ++i) {
    double t;
    if (mesh.pole_lo && mesh.pole_hi) {
      const double xi = static_cast<double>(i + 1) / (n_t + 1);
      t = lo + 0.5 * span * (1.0 - std::cos(std::numbers::pi * xi));
    } else if (mesh.pole_lo) {
      const double xi = static_cast<double>(i + 1) / n_t;
      t = lo + span * (1.0 - std::cos(0.5 * std::numbers::pi * xi));
    } else if (mesh.pole_hi) {
      const double xi = static_cast<double>(n_t - i) / n_t;
      t = hi - span * (1.0 - std::cos(0.5 * std::numbers::pi * xi));
    } else {
      t = lo + span * static_cast<double>(i) / (n_t - 1);
    }
    mesh.rings[static_cast<std::size_t>(i)] = t;
  }
  if (!mesh.pole_lo) mesh.rings.front() = lo;
  if (!mesh.pole_hi) mesh.rings.back() = hi;

  const int per_ring = mesh.fiber_size();
  const std::size_t n_nodes = static_cast<std::size_t>(n_t) * static_cast<std::size_t>(per_ring) +
                              (mesh.pole_lo ? 1 : 0) + (mesh.pole_hi ? 1 : 0);
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n_nodes);
  auto add_edge = [&adj](std::size_t u, std::size_t v, double len) {
    require(std::isfinite(len) && len >= 0.0, ErrorCode::DomainError, "non-finite mesh edge length");
    adj[u].emplace_back(v, len);
    adj[v].emplace_back(u, len);
  };

  const double dtheta = 2.0 * std::numbers::pi / n_theta;
  for (int i = 0; i < n_t; ++i) {
    const double t = mesh.rings[static_cast<std::size_t>(i)];
    if (!mesh.collapsed_fiber) {
      const double circ = std::sqrt(m.g_thth(t).value) * dtheta;
      for (int j = 0; j < n_theta; ++j) add_edge(mesh.ring_node(i, j), mesh.ring_node(i, j + 1), circ);
    }
    if (i + 1 == n_t) break;
    const double t_next = mesh.rings[static_cast<std::size_t>(i + 1)];
    const double dt = t_next - t;
    const double tm = 0.5 * (t + t_next);
    const double a = m.g_tt(tm).value;
    const double g = m.g_thth(tm).value;
    const double radial = std::sqrt(a) * dt;
    const double diagonal = std::sqrt(a * dt * dt + g * dtheta * dtheta);
    for (int j = 0; j < per_ring; ++j) {
      add_edge(mesh.ring_node(i, j), mesh.ring_node(i + 1, j), radial);
      if (!mesh.collapsed_fiber) {
        add_edge(mesh.ring_node(i, j), mesh.ring_node(i + 1, j + 1), diagonal);
        add_edge(mesh.ring_node(i, j), mesh.ring_node(i + 1, j - 1), diagonal);
      }
    }
  }
  if (mesh.pole_lo) {
    const double spoke = meridian_distance(m, lo, mesh.rings.front(), 1e-12);
    for (int j = 0; j < per_ring; ++j) add_edge(mesh.pole_lo_node(), mesh.ring_node(0, j), spoke);
  }
  if (mesh.pole_hi) {
    const std::size_t top = n_nodes - 1;
    const double spoke = meridian_distance(m, mesh.rings.back(), hi, 1e-12);
    for (int j = 0; j < per_ring; ++j) add_edge(top, mesh.ring_node(n_t - 1, j), spoke);
  }

  mesh.offsets.assign(n_nodes + 1, 0);
  for (std::size_t u = 0; u < n_nodes; ++u) mesh.offsets[u + 1] = mesh.offsets[u] + adj[u].size();
  mesh.targets.reserve(mesh.offsets.back());
  mesh.lengths.reserve(mesh.offsets.back());
  for (const auto& row : adj) {
    for (const auto& [v, len] : row) {
      mesh.targets.push_back(v);
      mesh.lengths.push_back(len);
    }
  }
  return mesh;
}

/// Nearest mesh node to a chart point (closed poles snap to their pole node).
[[nodiscard]] inline std::size_t nearest_node(const SurfaceMesh& mesh, const ChartPoint& p) {
  require(p.chart == mesh.chart, ErrorCode::DomainError, "point chart differs from mesh chart");
  require(p.t >= mesh.t_lo && p.t <= mesh.t_hi, ErrorCode::DomainError, "point outside the meshed window");
  const auto& r = mesh.rings;
  const auto it = std::lower_bound(r.begin(), r.end(), p.t);
  std::size_t i;
  if (it == r.begin()) {
    i = 0;
    if (mesh.pole_lo && p.t - mesh.t_lo < r.front() - p.t) return mesh.pole_lo_node();
  } else if (it == r.end()) {
    i = r.size() - 1;
    if (mesh.pole_hi && mesh.t_hi - p.t < p.t - r.back()) return mesh.pole_hi_node();
  } else {
    const auto k = static_cast<std::size_t>(it - r.begin());
    i = (p.t - r[k - 1] <= r[k] - p.t) ? k - 1 : k;
  }
  if (mesh.collapsed_fiber) return mesh.ring_node(static_cast<int>(i), 0);
  const double dtheta = 2.0 * std::numbers::pi / mesh.n_theta;
  const int j = static_cast<int>(std::lround(ChartPoint::make(p.t, p.theta, p.chart).theta / dtheta)) % mesh.n_theta;
  return mesh.ring_node(static_cast<int>(i), j);
}

/// Dijkstra from one node; unreachable nodes stay at +inf.
[[nodiscard]] inline std::vector<double> graph_distances(const SurfaceMesh& mesh, std::size_t source,
                                                         std::optional<std::size_t> stop_at = std::nullopt) {
  std::vector<double> dist(mesh.node_count(), std::numeric_limits<double>::infinity());
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[source] = 0.0;
  queue.emplace(0.0, source);
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[u]) continue;
    if (stop_at && u == *stop_at) break;
    for (std::size_t e = mesh.offsets[u]; e < mesh.offsets[u + 1]; ++e) {
      const std::size_t v = mesh.targets[e];
      const double nd = d + mesh.lengths[e];
      if (nd < dist[v]) {
        dist[v] = nd;
        queue.emplace(nd, v);
      }
    }
  }
  return dist;
}

/// Shortest-path length between the mesh nodes nearest p and q.
[[nodiscard]] inline double approx_distance(const SurfaceMesh& mesh, const ChartPoint& p, const ChartPoint& q) {
  const std::size_t src = nearest_node(mesh, p);
  const std::size_t dst = nearest_node(mesh, q);
  const double d = graph_distances(mesh, src, dst)[dst];
  require(std::isfinite(d), ErrorCode::DisconnectedMesh, "mesh graph is disconnected");
  return d;
}

// ---------------------------------------------------------------------------
// Embedding as a surface of revolution

/**
 * Profile curve (rho(tau), z(tau)) of the football embedded in R^3 as a
 * surface of revolution: rho = sqrt(2 phi) and dz/ds = sqrt(1 - phi'^2) along
 * meridian arc length s, so that rho'(s) = phi'. Requires |phi'| <= 1.
 */
class EmbeddingProfile {
 public:
  EmbeddingProfile(SolitonProfile profile, std::vector<double> tau, std::vector<double> rho, std::vector<double> z)
      : profile_(std::move(profile)), tau_(std::move(tau)), rho_(std::move(rho)), z_(std::move(z)) {}

  [[nodiscard]] const SolitonProfile& profile() const noexcept { return profile_; }
  [[nodiscard]] const std::vector<double>& tau() const noexcept { return tau_; }
  [[nodiscard]] const std::vector<double>& rho() const noexcept { return rho_; }
  [[nodiscard]] const std::vector<double>& z() const noexcept { return z_; }
  /// |phi'| <= 1 on the whole interval; phi' is monotone, so the endpoints decide.
  [[nodiscard]] bool valid() const {
    return std::fabs(phi_prime(0.0, profile_)) <= 1.0 && std::fabs(phi_prime(profile_.length(), profile_)) <= 1.0;
  }
  [[nodiscard]] double height() const noexcept { return z_.back() - z_.front(); }

  [[nodiscard]] double rho_at(double t) const { return std::sqrt(2.0 * phi(t, profile_)); }
  [[nodiscard]] double z_at(double t) const { return height_between(profile_, 0.0, t); }

  static double height_between(const SolitonProfile& p, double ta, double tb) {
    if (ta == tb) return 0.0;
    auto dz = [&p](double t) {
      const double fp = phi_prime(t, p);
      return std::sqrt(std::max(0.0, 1.0 - fp * fp) / (2.0 * phi(t, p)));
    };
    const bool sing_a = ta == 0.0;
    const bool sing_b = tb == p.length();
    return quadrature::endpoint_singular(dz, ta, tb, sing_a, sing_b, 1e-12).value;
  }

 private:
  SolitonProfile profile_;
  std::vector<double> tau_;
  std::vector<double> rho_;
  std::vector<double> z_;
};

[[nodiscard]] inline EmbeddingProfile embedding_profile(const SolitonProfile& p, int n) {
  require(n >= 2, ErrorCode::ResolutionTooLow, "embedding profile needs at least 2 samples");
  // phi' decreases monotonically from beta1 to -beta2, so the endpoints bound |phi'|.
  require(std::fabs(phi_prime(0.0, p)) <= 1.0 && std::fabs(phi_prime(p.length(), p)) <= 1.0,
          ErrorCode::EmbeddingObstruction, "|phi'| > 1: no isometric embedding as a surface of revolution");
  std::vector<double> tau(static_cast<std::size_t>(n));
  std::vector<double> rho(tau.size());
  std::vector<double> z(tau.size());
  const double s = p.length();
  for (int i = 0; i < n; ++i) {
    const double t = (i + 1 == n) ? s : s * i / (n - 1);
    const auto k = static_cast<std::size_t>(i);
    tau[k] = t;
    rho[k] = std::sqrt(std::max(0.0, 2.0 * phi(t, p)));
    z[k] = (i == 0) ? 0.0 : z[k - 1] + EmbeddingProfile::height_between(p, tau[k - 1], t);
  }
  return EmbeddingProfile(p, std::move(tau), std::move(rho), std::move(z));
}

/**
 * Triangle mesh of the revolution surface: `v x y z` and `f i j k` lines,
 * 1-indexed. Interior profile samples become rings; the two poles are
 * single vertices closed by triangle fans.
 */
inline void write_mesh_text(std::ostream& os, const EmbeddingProfile& e, int n_theta) {
  require(n_theta >= 3, ErrorCode::ResolutionTooLow, "need at least 3 meridians");
  const auto& tau = e.tau();
  require(tau.size() >= 3, ErrorCode::ResolutionTooLow, "need at least one interior profile sample");
  const std::size_t rings = tau.size() - 2;
  const auto prev_precision = os.precision(12);
  os << "# football surface of revolution\n";
  os << "v 0 0 " << e.z().front() << '\n';
  for (std::size_t i = 1; i + 1 < tau.size(); ++i) {
    for (int j = 0; j < n_theta; ++j) {
      const double th = 2.0 * std::numbers::pi * j / n_theta;
      os << "v " << e.rho()[i] * std::cos(th) << ' ' << e.rho()[i] * std::sin(th) << ' ' << e.z()[i] << '\n';
    }
  }
  os << "v 0 0 " << e.z().back() << '\n';
  const std::size_t nt = static_cast<std::size_t>(n_theta);
  auto ring_vertex = [nt](std::size_t ring, std::size_t j) { return 2 + ring * nt + (j % nt); };
  const std::size_t top = 2 + rings * nt;
  for (std::size_t j = 0; j < nt; ++j) os << "f 1 " << ring_vertex(0, j + 1) << ' ' << ring_vertex(0, j) << '\n';
  for (std::size_t i = 0; i + 1 < rings; ++i) {
    for (std::size_t j = 0; j < nt; ++j) {
      os << "f " << ring_vertex(i, j) << ' ' << ring_vertex(i, j + 1) << ' ' << ring_vertex(i + 1, j + 1) << '\n';
      os << "f " << ring_vertex(i, j) << ' ' << ring_vertex(i + 1, j + 1) << ' ' << ring_vertex(i + 1, j) << '\n';
    }
  }
  for (std::size_t j = 0; j < nt; ++j) {
    os << "f " << top << ' ' << ring_vertex(rings - 1, j) << ' ' << ring_vertex(rings - 1, j + 1) << '\n';
  }
  os.precision(prev_precision);
}

/// CSV with header `tau,rho,z`.
inline void write_profile_csv(std::ostream& os, const EmbeddingProfile& e) {
  const auto prev_precision = os.precision(17);
  os << "tau,rho,z\n";
  for (std::size_t i = 0; i < e.tau().size(); ++i) os << e.tau()[i] << ',' << e.rho()[i] << ',' << e.z()[i] << '\n';
  os.precision(prev_precision);
}

}  // namespace football
