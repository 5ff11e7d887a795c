#include "rpmlab/diagnostics.hpp"

#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <queue>
#include <sstream>
#include <stdexcept>

namespace rpmlab {

CenterEmbedding center_embedding(const RootedTriangulation& t,
                                 const ConformalLayout& l, int root) {
  if (int(l.center.size()) != t.n_faces())
    throw std::invalid_argument("center_embedding: face count mismatch");
  return center_embedding(l, root);
}

CenterEmbedding center_embedding(const ConformalLayout& l, int root) {
  if (root < 0) root = l.root_face;
  if (root >= int(l.center.size()))
    throw std::invalid_argument("center_embedding: face count mismatch");
  CenterEmbedding e;
  e.root_face = root;
  e.g = l.center;
  const std::complex<double> c0 = e.g[root];
  double m = std::numeric_limits<double>::infinity();
  for (int f = 0; f < int(e.g.size()); ++f) {
    if (f == root) continue;
    m = std::min(m, std::abs(e.g[f] - c0));
  }
  if (std::isinf(m)) m = 1;  // single face, nothing to scale against
  if (m == 0) throw std::invalid_argument("center_embedding: duplicate centers");
  for (auto& z : e.g) z = (z - c0) / m;
  for (int f = 0; f < int(e.g.size()); ++f)
    for (int g2 = f + 1; g2 < int(e.g.size()); ++g2)
      if (e.g[f] == e.g[g2])
        throw std::invalid_argument("center_embedding: duplicate centers");
  return e;
}

double embedding_distance(const RootedTriangulation& a, const CenterEmbedding& ga,
                          const RootedTriangulation& b, const CenterEmbedding& gb) {
  const Rational dc = combinatorial_distance(a, b);
  const double d = dc.value();
  auto psi = [](double x) { return x / (1 + x); };

  // n = 0: the root faces alone.
  double total = d + 0.5 * psi(std::abs(ga.g[ga.root_face] - gb.g[gb.root_face]));

  const int n_max = d == 0 ? 64 : dc.den;  // floor(1/d) when d = 1/k
  for (int n = 1; n <= n_max; ++n) {
    const auto ball_a = ball(a, n);
    const auto ball_b = ball(b, n);
    if (ball_encoding(a, ball_a) != ball_encoding(b, ball_b)) break;
    const auto fa = ball_face_order(a, ball_a);
    const auto fb = ball_face_order(b, ball_b);
    if (fa.size() != fb.size() || fa.empty()) break;
    double s = 0;
    for (size_t i = 0; i < fa.size(); ++i)
      s += psi(std::abs(ga.g[fa[i]] - gb.g[fb[i]]));
    const double term = s / (std::ldexp(1.0, n + 1) * double(fa.size()));
    total += term;
    if (ball_a.covers_parent && ball_b.covers_parent) {
      total += term;  // identical balls from here on: exact geometric tail
      break;
    }
  }
  return total;
}

std::vector<double> isolation_radii(const std::vector<std::complex<double>>& pts) {
  const int n = int(pts.size());
  if (n < 2) throw std::invalid_argument("isolation_radii: need >= 2 points");
  std::vector<double> rho(n, std::numeric_limits<double>::infinity());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const double dij = std::abs(pts[i] - pts[j]);
      if (dij > 0) rho[i] = std::min(rho[i], dij);
    }
  for (double r : rho)
    if (std::isinf(r))
      throw std::invalid_argument("isolation_radii: coincident point set");
  return rho;
}

namespace {

// Exact infimum of the survivor count over all deletion centers p:
// a closed disc of radius r covering a maximal point set can be slid
// until two points lie on its boundary (or one, for singletons), so
// the points themselves plus the intersections of radius-r circles
// around pairs closer than 2r realize the minimum.
int annulus_min_count(const std::vector<std::complex<double>>& pts, int v,
                      double rho_v, double delta) {
  const double outer = rho_v / delta, inner = rho_v * delta;
  std::vector<std::complex<double>> in;
  for (const auto& w : pts)
    if (std::abs(w - pts[v]) <= outer) in.push_back(w);

  std::vector<std::complex<double>> cand = in;
  const double reach2 = 2 * inner * (1 + 1e-12);
  for (size_t a = 0; a < in.size(); ++a)
    for (size_t b = a + 1; b < in.size(); ++b) {
      const auto d = in[b] - in[a];
      const double len = std::abs(d);
      if (len > reach2 || len == 0) continue;
      const auto mid = (in[a] + in[b]) / 2.0;
      const double h2 = inner * inner - len * len / 4;
      const auto off = std::complex<double>(0, 1) * (d / len) *
                       std::sqrt(std::max(h2, 0.0));
      cand.push_back(mid + off);
      cand.push_back(mid - off);
    }

  // Circle-intersection candidates hold their two generators at distance
  // exactly inner, where a strict test flips on one ulp of rounding.  The
  // relative slack keeps such boundary points inside the closed disc; it is
  // far below the spacing of any non-contrived point set.
  const double covered = inner * (1 + 1e-9);
  int best = std::numeric_limits<int>::max();
  for (const auto& p : cand) {
    int count = 0;
    for (const auto& w : in)
      if (std::abs(w - p) > covered) ++count;
    best = std::min(best, count);
  }
  return best;
}

}  // namespace

int min_annulus_count(const std::vector<std::complex<double>>& pts, int v,
                      double delta) {
  if (delta <= 0 || delta >= 1)
    throw std::invalid_argument("min_annulus_count: delta outside (0,1)");
  return annulus_min_count(pts, v, isolation_radii(pts)[v], delta);
}

bool is_supported(const std::vector<std::complex<double>>& pts, int v,
                  double delta, int s) {
  if (s < 2) throw std::invalid_argument("is_supported: s < 2");
  return min_annulus_count(pts, v, delta) >= s;
}

double supported_fraction(const std::vector<std::complex<double>>& pts,
                          double delta, int s) {
  if (pts.size() < 2)
    throw std::invalid_argument("supported_fraction: need >= 2 points");
  if (delta <= 0 || delta >= 1)
    throw std::invalid_argument("supported_fraction: delta outside (0,1)");
  if (s < 2) throw std::invalid_argument("supported_fraction: s < 2");
  const auto rho = isolation_radii(pts);
  int supported = 0;
  for (int v = 0; v < int(pts.size()); ++v)
    if (annulus_min_count(pts, v, rho[v], delta) >= s) ++supported;
  return double(supported) / double(pts.size());
}

double effective_resistance_to(const DualGraph& g, int source,
                               const std::vector<int>& sinks) {
  if (sinks.empty()) throw std::invalid_argument("resistance: empty sink");
  std::vector<char> is_sink(g.n, 0);
  for (int s : sinks) is_sink[s] = 1;
  if (is_sink[source])
    throw std::invalid_argument("resistance: source inside sink");

  // Potentials: source 1, sink 0, interior harmonic.
  std::vector<int> idx(g.n, -1);
  std::vector<int> unknowns;
  for (int v = 0; v < g.n; ++v)
    if (v != source && !is_sink[v]) {
      idx[v] = int(unknowns.size());
      unknowns.push_back(v);
    }
  std::vector<double> phi(g.n, 0.0);
  phi[source] = 1.0;
  if (!unknowns.empty()) {
    const int n = int(unknowns.size());
    std::vector<Eigen::Triplet<double>> trip;
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < n; ++i) {
      const int v = unknowns[i];
      double deg = 0;
      std::map<int, double> row;
      for (int w : g.nbr[v]) {
        deg += 1;
        if (idx[w] >= 0)
          row[idx[w]] -= 1;
        else if (w == source)
          rhs[i] += 1;
      }
      trip.emplace_back(i, i, deg);
      for (auto [j, w] : row) trip.emplace_back(i, j, w);
    }
    Eigen::SparseMatrix<double> L(n, n);
    L.setFromTriplets(trip.begin(), trip.end());
    Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> chol(L);
    Eigen::VectorXd x = chol.solve(rhs);
    if (chol.info() != Eigen::Success)
      throw std::runtime_error("resistance: singular system");
    for (int i = 0; i < n; ++i) phi[unknowns[i]] = x[i];
  }
  double current = 0;
  for (int w : g.nbr[source]) current += 1.0 - phi[w];
  if (current <= 0) throw std::runtime_error("resistance: no current path");
  return 1.0 / current;
}

double effective_resistance(const DualGraph& g, int source, int r) {
  if (r < 1) throw std::invalid_argument("resistance: r < 1");
  std::vector<int> dist(g.n, -1);
  std::queue<int> q;
  dist[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const int v = q.front();
    q.pop();
    if (dist[v] >= r) continue;
    for (int w : g.nbr[v])
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
  }
  std::vector<int> sinks;
  for (int v = 0; v < g.n; ++v)
    if (dist[v] == r) sinks.push_back(v);
  if (sinks.empty())
    throw std::invalid_argument("resistance: no node at distance r");

  // Nodes beyond the shell are irrelevant once the shell is shorted;
  // restrict the graph to distance <= r.
  std::vector<int> remap(g.n, -1);
  DualGraph sub;
  for (int v = 0; v < g.n; ++v)
    if (dist[v] >= 0 && dist[v] <= r) {
      remap[v] = sub.n++;
      sub.nbr.emplace_back();
    }
  for (int v = 0; v < g.n; ++v)
    if (remap[v] >= 0)
      for (int w : g.nbr[v])
        if (remap[w] >= 0 && !(dist[v] == r && dist[w] == r))
          sub.nbr[remap[v]].push_back(remap[w]);
  std::vector<int> sub_sinks;
  for (int s : sinks) sub_sinks.push_back(remap[s]);
  return effective_resistance_to(sub, remap[source], sub_sinks);
}

bool one_ended_check(const RootedTriangulation& t, int r) {
  const auto b = ball(t, r);
  std::vector<char> inside(t.n_faces(), 0);
  for (int f : b.face_ids) inside[f] = 1;
  std::vector<int> comp(t.n_faces(), -1);
  int n_comp = 0;
  bool any_outside = false;
  for (int f = 0; f < t.n_faces(); ++f) {
    if (inside[f] || comp[f] >= 0) continue;
    any_outside = true;
    std::queue<int> q;
    q.push(f);
    comp[f] = n_comp;
    while (!q.empty()) {
      const int g = q.front();
      q.pop();
      for (int i = 0; i < 3; ++i) {
        const int tw = t.twin(3 * g + i);
        if (tw < 0) continue;
        const int h = tw / 3;
        if (!inside[h] && comp[h] < 0) {
          comp[h] = n_comp;
          q.push(h);
        }
      }
    }
    ++n_comp;
  }
  if (!any_outside)
    throw std::invalid_argument("one_ended_check: ball covers the map");

  if (t.kind() == SurfaceKind::Sphere) return n_comp == 1;
  std::vector<char> touches(n_comp, 0);
  for (int f = 0; f < t.n_faces(); ++f) {
    if (comp[f] < 0) continue;
    for (int v : t.face(f))
      if (t.is_boundary_vertex(v)) touches[comp[f]] = 1;
  }
  int touching = 0;
  for (char c : touches) touching += c;
  return touching == 1;
}

RootedTriangulation regular_ball(int d, int k) {
  if (d < 6) throw std::invalid_argument("regular_ball: degree < 6");
  if (k < 1) throw std::invalid_argument("regular_ball: radius < 1");

  std::vector<std::array<int, 3>> faces;
  std::vector<int> deg;  // incident face count per vertex
  auto new_vertex = [&] {
    deg.push_back(0);
    return int(deg.size()) - 1;
  };
  auto add_face = [&](int a, int b, int c) {
    faces.push_back({a, b, c});
    ++deg[a];
    ++deg[b];
    ++deg[c];
  };

  const int hub = new_vertex();
  std::vector<int> ring;
  for (int i = 0; i < d; ++i) ring.push_back(new_vertex());
  for (int i = 0; i < d; ++i) add_face(hub, ring[i], ring[(i + 1) % d]);

  for (int layer = 2; layer <= k; ++layer) {
    const int m = int(ring.size());
    // Outward edges still missing per boundary vertex: a boundary
    // vertex with j incident faces has j + 1 edges.  Snapshot before
    // any face of this layer lands, the edge faces touch neighbors.
    std::vector<int> t(m);
    for (int i = 0; i < m; ++i) t[i] = d - (deg[ring[i]] + 1);
    std::vector<int> next_ring;
    std::vector<int> apex(m);  // apex[i] sits over edge ring[i] -> ring[i+1]
    for (int i = 0; i < m; ++i) apex[i] = new_vertex();
    for (int i = 0; i < m; ++i) {
      const int v = ring[i], w = ring[(i + 1) % m];
      // Fan at v from the previous edge's apex to this edge's apex.
      const int t_v = t[i];
      int prev = apex[(i + m - 1) % m];
      for (int j = 0; j < t_v - 2; ++j) {
        const int fresh = new_vertex();
        add_face(v, prev, fresh);
        next_ring.push_back(prev);
        prev = fresh;
      }
      next_ring.push_back(prev);
      add_face(v, prev, apex[i]);
      add_face(w, v, apex[i]);
    }
    ring = std::move(next_ring);
  }

  // Twin pairing by endpoints; regular balls carry no parallel edges.
  std::map<std::pair<int, int>, int> open;
  std::vector<int> twin(3 * faces.size(), -1);
  for (int h = 0; h < int(twin.size()); ++h) {
    const int a = faces[h / 3][h % 3], b = faces[h / 3][(h % 3 + 1) % 3];
    const auto key = std::minmax(a, b);
    if (auto it = open.find(key); it != open.end()) {
      twin[h] = it->second;
      twin[it->second] = h;
      open.erase(it);
    } else {
      open[key] = h;
    }
  }
  return RootedTriangulation(int(deg.size()), faces, twin, 0, SurfaceKind::Disc);
}

void emit_points(std::ostream& out, const std::vector<std::complex<double>>& pts) {
  out.precision(17);
  for (const auto& p : pts) out << "p " << p.real() << ' ' << p.imag() << '\n';
}

std::vector<std::complex<double>> parse_points(std::istream& in) {
  std::vector<std::complex<double>> pts;
  std::string line, tag;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    if (!(ls >> tag) || tag[0] == '#') continue;
    double x, y;
    if (tag != "p" || !(ls >> x >> y))
      throw std::runtime_error("bad point line: " + line);
    pts.emplace_back(x, y);
  }
  return pts;
}

}  // namespace rpmlab
