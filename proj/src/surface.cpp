#include "rpmlab/surface.hpp"

#include <cmath>
#include <deque>
#include <numbers>
#include <stdexcept>

namespace rpmlab {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kSectorTol = 1e-9;
}  // namespace

double EquilateralSurface::cone_angle(int v) const {
  if (t_->is_boundary_vertex(v))
    throw std::invalid_argument("cone_angle: boundary vertex");
  return t_->degree(v) * kPi / 3.0;
}

std::complex<double> EquilateralSurface::chart(int v, double rho, int sector,
                                               double t) const {
  if (t_->is_boundary_vertex(v))
    throw std::invalid_argument("chart: boundary vertex");
  const int n = t_->degree(v);
  if (sector < 1 || sector > n) throw std::domain_error("chart: bad sector");
  if (!(rho >= 0.0) || rho > 1.0 + kSectorTol)
    throw std::domain_error("chart: point outside flower");
  const double lo = kPi * (sector - 1) / 3.0, hi = kPi * sector / 3.0;
  if (t < lo - kSectorTol || t > hi + kSectorTol)
    throw std::domain_error("chart: angle outside sector");
  if (rho == 0.0) return {0.0, 0.0};
  return std::polar(std::pow(rho, 6.0 / n), 6.0 * t / n);
}

Interstice EquilateralSurface::interstice(int f) const {
  if (f < 0 || f >= t_->n_faces()) throw std::out_of_range("interstice: face");
  Interstice is;
  is.face = f;
  const double s3 = std::sqrt(3.0);
  // Unit face (0,0),(1,0),(1/2,s3/2); midpoints in ccw order.
  is.corners = {{{0.5, 0.0}, {0.75, s3 / 4.0}, {0.25, s3 / 4.0}}};
  is.center = {0.5, s3 / 6.0};
  is.side = 0.5;
  return is;
}

Flower EquilateralSurface::flower(int v) const {
  Flower fl;
  fl.vertex = v;
  for (int h : t_->vertex_fan(v)) fl.faces.push_back(RootedTriangulation::face_of(h));
  return fl;
}

HalfFlower EquilateralSurface::half_flower(int v) const {
  HalfFlower hf;
  hf.vertex = v;
  for (int h : t_->vertex_fan(v)) hf.faces.push_back(RootedTriangulation::face_of(h));
  // Interior: midpoints of the deg(v) edges at v close up into a
  // deg(v)-gon.  On the boundary the polygon is cut open and picks up
  // the two half-edge midpoints, but its corner triangles are still
  // one per incident face.
  hf.gon = t_->degree(v);
  hf.area_units = int(hf.faces.size());
  return hf;
}

AreaPartition EquilateralSurface::area_partition() const {
  AreaPartition ap;
  for (int v = 0; v < t_->n_vertices(); ++v)
    ap.half_flower_units += int(t_->vertex_fan(v).size());
  ap.interstice_units = t_->n_faces();
  ap.total_units = ap.half_flower_units + ap.interstice_units;
  return ap;
}

double EquilateralSurface::metric_upper_bound(int u, int v) const {
  if (u < 0 || u >= t_->n_vertices() || v < 0 || v >= t_->n_vertices())
    throw std::out_of_range("metric_upper_bound: vertex");
  if (u == v) return 0.0;
  const Subdivision sub = subdivide_midpoint(*t_);
  const RootedTriangulation& s = sub.tri;
  std::vector<std::vector<int>> adj(s.n_vertices());
  for (int h = 0; h < s.n_halfedges(); ++h) {
    adj[s.origin(h)].push_back(s.target(h));
    // Boundary edges carry a single half-edge; walk them both ways.
    if (s.twin(h) < 0) adj[s.target(h)].push_back(s.origin(h));
  }
  std::vector<int> dist(s.n_vertices(), -1);
  std::deque<int> bfs{u};
  dist[u] = 0;
  while (!bfs.empty()) {
    const int a = bfs.front();
    bfs.pop_front();
    if (a == v) break;
    for (int b : adj[a])
      if (dist[b] < 0) {
        dist[b] = dist[a] + 1;
        bfs.push_back(b);
      }
  }
  return 0.5 * dist[v];
}

}  // namespace rpmlab
