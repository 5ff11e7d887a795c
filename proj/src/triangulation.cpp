#include "rpmlab/triangulation.hpp"

#include <algorithm>
#include <queue>

namespace rpmlab {

namespace {

[[noreturn]] void fail(const std::string& what) {
  throw std::invalid_argument(what);
}

}  // namespace

RootedTriangulation::RootedTriangulation(int n_vertices,
                                         std::vector<std::array<int, 3>> faces,
                                         std::vector<int> twin,
                                         int root_halfedge, SurfaceKind kind)
    : n_vertices_(n_vertices),
      face_(std::move(faces)),
      twin_(std::move(twin)),
      root_(root_halfedge),
      kind_(kind) {
  validate_and_index();
}

void RootedTriangulation::validate_and_index() {
  const int F = int(face_.size());
  const int H = 3 * F;
  if (F < 1) fail("triangulation needs at least one face");
  if (int(twin_.size()) != H) fail("twin array size mismatch");
  if (root_ < 0 || root_ >= H) fail("root half-edge out of range");
  if (n_vertices_ < 3) fail("triangulation needs at least three vertices");

  for (const auto& f : face_) {
    for (int v : f)
      if (v < 0 || v >= n_vertices_) fail("face vertex out of range");
    if (f[0] == f[1] || f[1] == f[2] || f[2] == f[0])
      fail("loop edge: face repeats a vertex");
  }

  int boundary_count = 0;
  for (int h = 0; h < H; ++h) {
    const int t = twin_[h];
    if (t == -1) {
      ++boundary_count;
      continue;
    }
    if (t < 0 || t >= H) fail("twin index out of range");
    if (t == h || twin_[t] != h) fail("twin is not an involution");
    if (origin(t) != target(h) || target(t) != origin(h))
      fail("twin endpoints do not match");
  }
  if (kind_ == SurfaceKind::Sphere && boundary_count != 0)
    fail("sphere has boundary half-edges");
  if (kind_ == SurfaceKind::Disc && boundary_count == 0)
    fail("disc without boundary half-edges");
  n_edges_ = (3 * F + boundary_count) / 2;

  // Faces must be connected through shared edges.
  {
    std::vector<char> seen(F, 0);
    std::queue<int> q;
    q.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!q.empty()) {
      const int f = q.front();
      q.pop();
      for (int i = 0; i < 3; ++i) {
        const int t = twin_[3 * f + i];
        if (t >= 0 && !seen[t / 3]) {
          seen[t / 3] = 1;
          ++reached;
          q.push(t / 3);
        }
      }
    }
    if (reached != F) fail("complex is not connected");
  }

  // Vertex fans.  Rotating counterclockwise around origin(h) is
  // twin(prev(h)); the fan must cover every out-going half-edge, closing
  // into a cycle at an interior vertex and running boundary-to-boundary
  // at a boundary vertex.  Anything else is a pinched (non-disc) link.
  degree_.assign(n_vertices_, 0);
  boundary_vertex_.assign(n_vertices_, 0);
  fan_.assign(n_vertices_, {});
  std::vector<std::vector<int>> out(n_vertices_);
  for (int h = 0; h < H; ++h) out[origin(h)].push_back(h);
  for (int v = 0; v < n_vertices_; ++v) {
    if (out[v].empty()) fail("isolated vertex");
    int start = -1;
    int boundary_out = 0;
    for (int h : out[v])
      if (twin_[h] == -1) {
        ++boundary_out;
        start = h;
      }
    if (boundary_out > 1) fail("vertex link is not a disc");
    if (boundary_out == 0) start = *std::min_element(out[v].begin(), out[v].end());
    std::vector<int>& fan = fan_[v];
    int h = start;
    while (true) {
      fan.push_back(h);
      if (int(fan.size()) > int(out[v].size())) fail("vertex link is not a disc");
      const int r = twin_[prev(h)];
      if (r == -1) {
        boundary_vertex_[v] = 1;
        break;
      }
      if (r == start) break;
      h = r;
    }
    if (fan.size() != out[v].size()) fail("vertex link is not a disc");
    if (boundary_vertex_[v] != (boundary_out == 1 ? 1 : 0))
      fail("vertex link is not a disc");
    // Every edge at v has an out-going half-edge except the boundary edge
    // that enters v, so a boundary vertex has one more edge than out-darts.
    degree_[v] = int(fan.size()) + (boundary_vertex_[v] ? 1 : 0);
  }

  // Boundary half-edges must chain into a single cycle.
  boundary_cycle_.clear();
  if (kind_ == SurfaceKind::Disc) {
    int first = -1;
    for (int h = 0; h < H && first < 0; ++h)
      if (twin_[h] == -1) first = h;
    int h = first;
    do {
      boundary_cycle_.push_back(h);
      int x = next(h);
      while (twin_[x] != -1) x = next(twin_[x]);
      h = x;
    } while (h != first && int(boundary_cycle_.size()) <= boundary_count);
    if (int(boundary_cycle_.size()) != boundary_count)
      fail("boundary is not a single cycle");
  }

  const int chi = n_vertices_ - n_edges_ + F;
  if (kind_ == SurfaceKind::Disc && chi != 1)
    fail("Euler characteristic is not that of a disc");
  if (kind_ == SurfaceKind::Sphere && chi != 2)
    fail("Euler characteristic is not that of a sphere");
}

std::vector<int> RootedTriangulation::boundary_vertices() const {
  std::vector<int> vs;
  vs.reserve(boundary_cycle_.size());
  for (int h : boundary_cycle_) vs.push_back(origin(h));
  return vs;
}

std::optional<std::vector<int>> RootedTriangulation::distances_to_boundary()
    const {
  if (kind_ == SurfaceKind::Sphere) return std::nullopt;
  std::vector<int> dist(n_vertices_, -1);
  std::queue<int> q;
  for (int v = 0; v < n_vertices_; ++v)
    if (boundary_vertex_[v]) {
      dist[v] = 0;
      q.push(v);
    }
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    for (int h : fan_[v]) {
      const int w = target(h);
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
    }
  }
  return dist;
}

RootedTriangulation RootedTriangulation::rerooted(int halfedge) const {
  return RootedTriangulation(n_vertices_, face_, twin_, halfedge, kind_);
}

std::optional<int> boundary_distance(const RootedTriangulation& t,
                                     int vertex) {
  auto d = t.distances_to_boundary();
  if (!d) return std::nullopt;
  return (*d)[vertex];
}

DualGraph dual_graph(const RootedTriangulation& t) {
  DualGraph g;
  g.n = t.n_faces();
  g.nbr.assign(g.n, {});
  for (int h = 0; h < t.n_halfedges(); ++h)
    if (t.twin(h) >= 0) g.nbr[h / 3].push_back(t.twin(h) / 3);
  return g;
}

Subdivision subdivide_midpoint(const RootedTriangulation& t) {
  const int F = t.n_faces();
  const int H = 3 * F;
  const int V = t.n_vertices();

  std::vector<int> eid(H, -1);
  int ne = 0;
  for (int h = 0; h < H; ++h) {
    if (eid[h] >= 0) continue;
    eid[h] = ne;
    if (t.twin(h) >= 0) eid[t.twin(h)] = ne;
    ++ne;
  }
  auto mid = [&](int h) { return V + eid[h]; };

  // Face f splits into corner faces 4f+i (keeping corner i of f) and the
  // middle face 4f+3 on the midpoint triangle, all positively oriented.
  auto corner = [&](int f, int i) { return 4 * f + i; };
  auto first_half = [&](int h) { return 3 * corner(h / 3, h % 3); };
  auto second_half = [&](int h) {
    return 3 * corner(h / 3, (h % 3 + 1) % 3) + 2;
  };

  std::vector<std::array<int, 3>> nf(4 * F);
  std::vector<int> ntw(12 * F, -1);
  auto link = [&](int a, int b) {
    ntw[a] = b;
    ntw[b] = a;
  };
  for (int f = 0; f < F; ++f) {
    const auto& fc = t.face(f);
    const int m0 = mid(3 * f), m1 = mid(3 * f + 1), m2 = mid(3 * f + 2);
    nf[corner(f, 0)] = {fc[0], m0, m2};
    nf[corner(f, 1)] = {fc[1], m1, m0};
    nf[corner(f, 2)] = {fc[2], m2, m1};
    nf[4 * f + 3] = {m0, m1, m2};
    link(3 * corner(f, 0) + 1, 3 * (4 * f + 3) + 2);
    link(3 * corner(f, 1) + 1, 3 * (4 * f + 3) + 0);
    link(3 * corner(f, 2) + 1, 3 * (4 * f + 3) + 1);
  }
  for (int h = 0; h < H; ++h) {
    const int tw = t.twin(h);
    if (tw < 0 || tw < h) continue;
    link(first_half(h), second_half(tw));
    link(second_half(h), first_half(tw));
  }

  Subdivision s{RootedTriangulation(V + ne, std::move(nf), std::move(ntw),
                                    first_half(t.root_halfedge()), t.kind()),
                {},
                {},
                V};
  s.child_faces.resize(F);
  for (int f = 0; f < F; ++f)
    s.child_faces[f] = {corner(f, 0), corner(f, 1), corner(f, 2), 4 * f + 3};
  s.edge_midpoint.resize(H);
  for (int h = 0; h < H; ++h) s.edge_midpoint[h] = mid(h);
  return s;
}

}  // namespace rpmlab
